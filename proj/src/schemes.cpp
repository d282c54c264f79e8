/*
   Copyright 2026 rs-repair contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "rsrepair/schemes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rsrepair {

namespace {

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<int> all_helpers(int n, const std::vector<int>& failed) {
    std::set<int> fs(failed.begin(), failed.end());
    std::vector<int> h;
    for (int t = 0; t < n; ++t)
        if (!fs.count(t)) h.push_back(t);
    return h;
}

// tr_{E/B}(u y) / y as a polynomial in y: sum_c u^(q^c) y^(q^c - 1).
FPoly trace_quotient_poly(const FieldCtx& F, const SubfieldHandle& E,
                          const FieldElem& u) {
    int a = E.degree();
    uint32_t q = F.q();
    FPoly p;
    p.coef.assign(ipow(q, a - 1), F.zero());
    FieldElem uc = u;
    for (int c = 0; c < a; ++c) {
        size_t pos = ipow(q, c) - 1;
        p.coef[pos] = F.add(p.coef[pos], uc);
        if (c + 1 < a) uc = F.frobenius(uc, 1);
    }
    return p;
}

// Nonzero elements of the span of the first s k-basis elements of E, in
// coefficient-tuple order.
std::vector<FieldElem> w_subspace_star(const FieldCtx& F, const SubfieldHandle& E,
                                       int s) {
    std::vector<FieldElem> star;
    uint64_t count = ipow(F.q(), s);
    for (uint64_t idx = 1; idx < count; ++idx) {
        uint64_t v = idx;
        FieldElem acc = F.zero();
        for (int u = 0; u < s; ++u) {
            uint32_t d = (uint32_t)(v % F.q());
            v /= F.q();
            if (d) acc = F.add(acc, F.mul_scalar(E.k_basis()[u], d));
        }
        star.push_back(acc);
    }
    return star;
}

// Lifts e x a polynomials in z to e x ell polynomials in x, multiplying by
// the basis eta of F over E and substituting z = zsub * x.
std::vector<std::vector<FPoly>> lift_polys(const FieldCtx& F,
                                           const std::vector<FieldElem>& eta,
                                           const std::vector<std::vector<FPoly>>& pz,
                                           const FieldElem& zsub) {
    std::vector<std::vector<FPoly>> out(pz.size());
    for (size_t i = 0; i < pz.size(); ++i) {
        for (const auto& eta_w : eta) {
            for (const auto& p : pz[i]) {
                FPoly px = poly_compose_linear(F, p, zsub, F.zero());
                out[i].push_back(poly_scale(F, eta_w, px));
            }
        }
    }
    // reorder: we generated (w, j) with w outer and j inner, matching
    // index M = w * a + j
    return out;
}

int rank_over_base_rows(const FieldCtx& F, const std::vector<FieldElem>& vals) {
    GfMat rows;
    rows.reserve(vals.size());
    for (const auto& v : vals) rows.push_back(v.c);
    return gfq::rref(F.q(), rows, nullptr);
}

}  // namespace

OneCosetParams make_one_coset_params(const FieldCtxPtr& F, int a, int64_t m,
                                     int n, int k, int s) {
    OneCosetParams p;
    p.F = F;
    p.E = F->subfield(a);
    p.m = m;
    p.k = k;
    p.s = s;
    uint64_t star = ipow(F->q(), a) - 1;
    if ((uint64_t)n > star)
        throw Error(Error::Code::BadParameter, "n must satisfy n < q^a");
    CosetPartition cp(F, p.E);
    if ((uint64_t)m >= cp.count())
        throw Error(Error::Code::BadParameter, "coset index out of range");
    for (int j = 0; j < n; ++j) p.A.push_back(cp.element((uint64_t)m, j));
    return p;
}

// ---------------------------------------------------------------------------
// Constructions I and II (single erasure, one coset)

namespace {

struct OneCosetCommon {
    RSCodePtr code;
    FieldElem bm, bminv, failed_hat;
    std::vector<FieldElem> eta;    // basis of F over E
};

OneCosetCommon one_coset_common(const OneCosetParams& params, int failed_idx) {
    const FieldCtx& F = *params.F;
    OneCosetCommon c;
    c.code = RSCode::make(params.F, params.A, params.k);
    c.bm = F.pow(F.primitive(), (uint64_t)params.m);
    c.bminv = F.inv(c.bm);
    if (failed_idx < 0 || failed_idx >= (int)params.A.size())
        throw Error(Error::Code::BadParameter, "failed index out of range");
    c.failed_hat = F.mul(params.A[failed_idx], c.bminv);
    if (!params.E->contains(c.failed_hat) || F.is_zero(c.failed_hat))
        throw Error(Error::Code::FailedPointNotInCoset,
                    "failed point is not in the chosen coset");
    c.eta = params.E->power_basis();
    return c;
}

}  // namespace

RepairScheme construct_I(const OneCosetParams& params, int failed_idx) {
    const FieldCtx& F = *params.F;
    const SubfieldHandle& E = *params.E;
    int a = E.degree();
    int n = (int)params.A.size();
    int r = n - params.k;
    if ((int64_t)ipow(F.q(), a - 1) > r)
        throw Error(Error::Code::SubspaceTooLarge, "q^(a-1) must be at most n-k");
    OneCosetCommon c = one_coset_common(params, failed_idx);

    std::vector<std::vector<FPoly>> pz(1);
    for (int j = 0; j < a; ++j) {
        FPoly t = trace_quotient_poly(F, E, E.k_basis()[j]);
        pz[0].push_back(poly_compose_linear(F, t, F.one(), F.neg(c.failed_hat)));
    }

    RepairScheme s;
    s.code = c.code;
    s.failed = {failed_idx};
    s.K = F.subfield(1);
    s.polys = lift_polys(F, c.eta, pz, c.bminv);
    s.helpers = all_helpers(n, s.failed);
    s.xi = s.K->power_basis();
    s.construction = "I";
    s.closed_form_gq = (int64_t)(F.ell() / a) * (n - 1);
    s.closed_form_exact = true;
    s.params = {{"a", a}, {"m", params.m}, {"n", n}, {"k", params.k}};
    return s;
}

RepairScheme construct_II(const OneCosetParams& params, int failed_idx) {
    const FieldCtx& F = *params.F;
    const SubfieldHandle& E = *params.E;
    int a = E.degree();
    int n = (int)params.A.size();
    int r = n - params.k;
    int sdim = params.s;
    if (sdim < 0 || sdim >= a)
        throw Error(Error::Code::BadParameter, "require 0 <= s < a");
    if ((int64_t)ipow(F.q(), sdim) > r)
        throw Error(Error::Code::SubspaceTooLarge, "q^s must be at most n-k");
    OneCosetCommon c = one_coset_common(params, failed_idx);
    auto wstar = w_subspace_star(F, E, sdim);

    std::vector<std::vector<FPoly>> pz(1);
    for (int j = 0; j < a; ++j) {
        const FieldElem& xi_j = E.k_basis()[j];
        FPoly p = FPoly::constant(F.one());
        for (const auto& w : wstar) {
            FPoly lin;
            FieldElem root = F.sub(c.failed_hat, F.mul(F.inv(w), xi_j));
            lin.coef = {F.neg(root), F.one()};
            p = poly_mul(F, p, lin);
        }
        pz[0].push_back(poly_scale(F, xi_j, p));
    }

    RepairScheme s;
    s.code = c.code;
    s.failed = {failed_idx};
    s.K = F.subfield(1);
    s.polys = lift_polys(F, c.eta, pz, c.bminv);
    s.helpers = all_helpers(n, s.failed);
    s.xi = s.K->power_basis();
    s.construction = "II";
    s.closed_form_gq = (int64_t)(F.ell() / a) * (n - 1) * (a - sdim);
    s.closed_form_exact = false;
    s.params = {{"a", a}, {"s", sdim}, {"m", params.m}, {"n", n}, {"k", params.k}};
    return s;
}

// ---------------------------------------------------------------------------
// Two cosets

RepairScheme construct_two_coset(const FieldCtxPtr& Fp, int a, int64_t m1,
                                 int64_t m2, int n, int k, int failed_idx) {
    const FieldCtx& F = *Fp;
    auto E = F.subfield(a);
    int L = F.ell() / a;
    int r = n - k;
    if (n % 2 != 0)
        throw Error(Error::Code::UnbalancedSplit, "two-coset split requires even n");
    if (L > r)
        throw Error(Error::Code::DegreeTooHigh, "require ell/a <= n-k");
    if ((uint64_t)(n / 2) > ipow(F.q(), a) - 1)
        throw Error(Error::Code::BadParameter, "coset too small for n/2 points");
    if (m2 <= m1 || m1 < 0)
        throw Error(Error::Code::BadCosetGap, "require 0 <= m1 < m2");
    int64_t gap = m2 - m1;
    bool pow_ok = false;
    for (int sexp = 0; sexp <= L; ++sexp)
        if ((int64_t)ipow(F.q(), sexp) == gap) { pow_ok = true; break; }
    if (!pow_ok)
        throw Error(Error::Code::BadCosetGap, "m2-m1 must be a power q^s, s <= ell/a");
    if (E->contains(F.pow(F.primitive(), (uint64_t)gap)))
        throw Error(Error::Code::BadCosetGap, "m1 and m2 index the same coset");

    CosetPartition cp(Fp, E);
    std::vector<FieldElem> A;
    for (int j = 0; j < n / 2; ++j) A.push_back(cp.element((uint64_t)m1, j));
    for (int j = 0; j < n / 2; ++j) A.push_back(cp.element((uint64_t)m2, j));
    auto code = RSCode::make(Fp, A, k);

    bool failed_in_first = failed_idx < n / 2;
    int64_t m_other = failed_in_first ? m2 : m1;
    FieldElem denom_inv = F.inv(F.pow(F.primitive(), (uint64_t)m_other));

    RepairScheme s;
    s.code = code;
    s.failed = {failed_idx};
    s.K = E;
    s.polys.resize(1);
    FPoly base;
    base.coef = {F.zero(), denom_inv};   // x / beta^m_other
    FPoly cur = FPoly::constant(F.one());
    for (int j = 0; j < L; ++j) {
        s.polys[0].push_back(cur);
        if (j + 1 < L) cur = poly_mul(F, cur, base);
    }
    s.helpers = all_helpers(n, s.failed);
    s.xi = E->power_basis();
    s.construction = "two_coset";
    s.closed_form_gq = ((int64_t)(n - 1) * (F.ell() + a) - (F.ell() - a)) / 2;
    s.closed_form_exact = true;
    s.params = {{"a", a}, {"m1", m1}, {"m2", m2}, {"n", n}, {"k", k}};
    return s;
}

// ---------------------------------------------------------------------------
// Multi-coset extension

OriginalSchemeAdapter ye_barg_adapter(const FieldCtxPtr& Fp,
                                      const SubfieldHandlePtr& Fprime, int r,
                                      int nprime) {
    const FieldCtx& F = *Fp;
    int lprime = Fprime->degree();
    if ((uint64_t)lprime != ipow((uint64_t)r, nprime))
        throw Error(Error::Code::BadParameter, "require [F':GF(q)] = r^n'");
    FieldElem beta = Fprime->gamma();

    OriginalSchemeAdapter ad;
    ad.F = Fp;
    ad.Fprime = Fprime;
    ad.r = r;
    for (int i = 0; i < nprime; ++i)
        ad.Aprime.push_back(F.pow(beta, ipow((uint64_t)r, i)));
    if (rank_over_base_rows(F, ad.Aprime) != nprime)
        throw Error(Error::Code::DependentEvaluationPoints,
                    "evaluation points dependent over GF(q)");

    ad.polys_for = [Fp, beta, r, lprime](int i) {
        const FieldCtx& FF = *Fp;
        std::vector<FPoly> ps;
        uint64_t ri = ipow((uint64_t)r, i);
        for (int c = 0; c < lprime; ++c) {
            if ((uint64_t)c / ri % (uint64_t)r != 0) continue;
            FieldElem bc = FF.pow(beta, (uint64_t)c);
            for (int sdeg = 0; sdeg < r; ++sdeg) {
                FPoly p;
                p.coef.assign(sdeg + 1, FF.zero());
                p.coef[sdeg] = bc;
                ps.push_back(p);
            }
        }
        return ps;
    };

    for (int i = 0; i < nprime; ++i) {
        auto ps = ad.polys_for(i);
        // full rank at the failed original point
        std::vector<FieldElem> at_fail;
        for (const auto& p : ps) at_fail.push_back(poly_eval(F, p, ad.Aprime[i]));
        if (rank_over_base_rows(F, at_fail) != lprime)
            throw Error(Error::Code::DependentEvaluationPoints,
                        "original scheme fails the full rank condition");
        int64_t b = 0;
        for (int t = 0; t < nprime; ++t) {
            if (t == i) continue;
            std::vector<FieldElem> vals;
            for (const auto& p : ps) vals.push_back(poly_eval(F, p, ad.Aprime[t]));
            b += rank_over_base_rows(F, vals);
        }
        ad.b_measured.push_back(b);
    }
    return ad;
}

MultiCosetCode extend_multi_coset(const OriginalSchemeAdapter& original, int a) {
    const FieldCtx& F = *original.F;
    int lprime = original.Fprime->degree();
    if (F.ell() != a * lprime)
        throw Error(Error::Code::BadParameter, "require ell = a * ell'");
    if (rank_over_base_rows(F, original.Aprime) != (int)original.Aprime.size())
        throw Error(Error::Code::DependentOriginalPoints,
                    "original points dependent over GF(q)");

    MultiCosetCode mcc;
    mcc.original = original;
    mcc.a = a;
    mcc.subspace_mode = std::gcd(a, lprime) != 1;
    if (!mcc.subspace_mode) {
        mcc.E = F.subfield(a);
        auto all = mcc.E->enumerate();
        mcc.star.assign(all.begin() + 1, all.end());
    } else {
        // Basis of F over F': powers of the modulus root.
        std::vector<FieldElem> gens;
        FieldElem cur = F.one();
        FieldElem x = F.gen_x();
        for (int w = 0; w < a; ++w) {
            gens.push_back(cur);
            cur = F.mul(cur, x);
        }
        auto rrF = rank_over(CoeffDomain::subfield(*original.Fprime), gens);
        if (rrF.rank != a)
            throw Error(Error::Code::DependentGenerators,
                        "basis of F over F' is degenerate");
        mcc.E_subspace = subspace_span(original.F, F.subfield(1), gens);
        mcc.star = mcc.E_subspace->enumerate_star();
    }

    int nprime = (int)original.Aprime.size();
    std::vector<FieldElem> A;
    for (int i = 0; i < nprime; ++i)
        for (const auto& eps : mcc.star)
            A.push_back(F.mul(original.Aprime[i], eps));
    std::set<uint64_t> seen;
    for (const auto& p : A)
        if (!seen.insert(F.to_index(p)).second)
            throw Error(Error::Code::CosetCollision, "extended cosets intersect");
    int n = (int)A.size();
    int k = n - original.r;
    mcc.code = RSCode::make(original.F, std::move(A), k);
    return mcc;
}

int64_t MultiCosetCode::closed_form_gq(int fail_coset) const {
    const FieldCtx& F = code->ctx();
    int64_t qa = (int64_t)ipow(F.q(), a);
    return (int64_t)a * original.b_measured[fail_coset] * (qa - 1) +
           (qa - 2) * F.ell();
}

RepairScheme MultiCosetCode::scheme_for(int failed_position) const {
    const FieldCtx& F = code->ctx();
    int i = coset_of(failed_position);
    auto base_polys = original.polys_for(i);

    RepairScheme s;
    s.code = code;
    s.failed = {failed_position};
    s.helpers = all_helpers(code->n(), s.failed);
    s.construction = "multi_coset_1";
    s.closed_form_gq = closed_form_gq(i);
    s.closed_form_exact = true;
    s.params = {{"r", original.r},
                {"nprime", (int64_t)original.Aprime.size()},
                {"a", a}};
    if (!subspace_mode) {
        s.K = E;
        s.polys = {std::move(base_polys)};
        s.xi = E->power_basis();
    } else {
        s.K = F.subfield(1);
        s.polys.resize(1);
        for (const auto& g : E_subspace->gens())
            for (const auto& p : base_polys)
                s.polys[0].push_back(poly_scale(F, g, p));
        s.xi = s.K->power_basis();
    }
    return s;
}

bool verify_extension_ranks(const MultiCosetCode& mcc, int failed_position) {
    const FieldCtx& F = mcc.code->ctx();
    int i0 = mcc.coset_of(failed_position);
    auto polys = mcc.original.polys_for(i0);
    CoeffDomain dom = mcc.subspace_mode ? CoeffDomain::subspace(*mcc.E_subspace)
                                        : CoeffDomain::subfield(*mcc.E);
    int star = (int)mcc.star.size();
    for (int eps = 0; eps < (int)mcc.original.Aprime.size(); ++eps) {
        std::vector<FieldElem> orig_vals;
        for (const auto& p : polys)
            orig_vals.push_back(poly_eval(F, p, mcc.original.Aprime[eps]));
        int orig_rank = rank_over_base_rows(F, orig_vals);
        for (int j = 0; j < star; ++j) {
            int pos = eps * star + j;
            if (pos == failed_position) continue;
            std::vector<FieldElem> vals;
            for (const auto& p : polys)
                vals.push_back(poly_eval(F, p, mcc.code->points()[pos]));
            if (rank_over(dom, vals).rank != orig_rank) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Construction III (multi-erasure, s = a-1)

namespace {

struct MultiErasureSetup {
    RSCodePtr code;
    FieldElem bminv;
    std::vector<FieldElem> failed_hat;    // normalized failed points
    std::vector<FieldElem> helper_hat;    // normalized helper points
    std::vector<int> helpers;
};

MultiErasureSetup multi_erasure_setup(const OneCosetParams& params,
                                      const std::vector<int>& failed) {
    const FieldCtx& F = *params.F;
    MultiErasureSetup su;
    su.code = RSCode::make(params.F, params.A, params.k);
    FieldElem bm = F.pow(F.primitive(), (uint64_t)params.m);
    su.bminv = F.inv(bm);
    if (!std::is_sorted(failed.begin(), failed.end()))
        throw Error(Error::Code::BadParameter, "failed indices must be sorted");
    for (int idx : failed) {
        if (idx < 0 || idx >= (int)params.A.size())
            throw Error(Error::Code::BadParameter, "failed index out of range");
        FieldElem hat = F.mul(params.A[idx], su.bminv);
        if (!params.E->contains(hat) || F.is_zero(hat))
            throw Error(Error::Code::ErasuresSpanCosets,
                        "all failed points must lie in the chosen coset");
        su.failed_hat.push_back(hat);
    }
    su.helpers = all_helpers((int)params.A.size(), failed);
    for (int t : su.helpers)
        su.helper_hat.push_back(F.mul(params.A[t], su.bminv));
    return su;
}

// Full-rank condition at the E level: the vectors of values at the failed
// points, flattened over GF(q), must be independent.
bool values_full_rank(const FieldCtx& F,
                      const std::vector<std::vector<FPoly>>& pz,
                      const std::vector<FieldElem>& failed_hat) {
    GfMat rows;
    for (const auto& prow : pz)
        for (const auto& p : prow) {
            GfVec row;
            for (const auto& alpha : failed_hat) {
                FieldElem v = poly_eval(F, p, alpha);
                row.insert(row.end(), v.c.begin(), v.c.end());
            }
            rows.push_back(std::move(row));
        }
    size_t total = rows.size();
    return gfq::rref(F.q(), rows, nullptr) == (int)total;
}

int64_t values_bandwidth(const FieldCtx& F,
                         const std::vector<std::vector<FPoly>>& pz,
                         const std::vector<FieldElem>& helper_hat) {
    int64_t b = 0;
    for (const auto& x : helper_hat) {
        std::vector<FieldElem> vals;
        for (const auto& prow : pz)
            for (const auto& p : prow) vals.push_back(poly_eval(F, p, x));
        b += rank_over_base_rows(F, vals);
    }
    return b;
}

}  // namespace

RepairScheme construct_III(const OneCosetParams& params,
                           const std::vector<int>& failed) {
    const FieldCtx& F = *params.F;
    const SubfieldHandle& E = *params.E;
    int a = E.degree();
    int e = (int)failed.size();
    int n = (int)params.A.size();
    int r = n - params.k;
    uint32_t q = F.q();
    if ((int64_t)ipow(q, a - 1) > r)
        throw Error(Error::Code::SubspaceTooLarge, "q^(a-1) must be at most n-k");
    if (2 * a <= e * (e - 1))
        throw Error(Error::Code::BadParameter, "require a > e(e-1)/2");
    if (e < 1 || e > r)
        throw Error(Error::Code::BadParameter, "require 1 <= e <= n-k");
    MultiErasureSetup su = multi_erasure_setup(params, failed);

    const auto& mu = E.k_basis();
    int64_t target = (int64_t)(n - e) * e - (int64_t)e * (e - 1) * (q - 1) / 2;

    auto build_pz = [&](const std::vector<FieldElem>& delta) {
        std::vector<std::vector<FPoly>> pz(e);
        for (int i = 0; i < e; ++i) {
            FieldElem dinv = F.inv(delta[i]);
            for (int j = 0; j < a; ++j) {
                FPoly t = trace_quotient_poly(F, E, F.mul(mu[j], dinv));
                t = poly_compose_linear(F, t, F.one(), F.neg(su.failed_hat[i]));
                pz[i].push_back(poly_scale(F, delta[i], t));
            }
        }
        return pz;
    };

    // Lexicographic scan over E*^(e-1) with delta_1 = 1. First pass demands
    // the closed-form bandwidth; if unattainable, first full-rank tuple wins.
    uint64_t star = ipow(q, a) - 1;
    std::vector<std::vector<FPoly>> chosen;
    bool exact = false;
    for (int pass = 0; pass < 2 && chosen.empty(); ++pass) {
        std::vector<uint64_t> odo(e - 1, 1);
        bool done = false;
        if (e == 1) {
            std::vector<FieldElem> delta = {F.one()};
            auto pz = build_pz(delta);
            if (values_full_rank(F, pz, su.failed_hat)) {
                chosen = std::move(pz);
                exact = values_bandwidth(F, chosen, su.helper_hat) == target;
            }
            break;
        }
        while (!done) {
            std::vector<FieldElem> delta = {F.one()};
            for (uint64_t idx : odo)
                delta.push_back(E.embed(E.sub()->from_index(idx)));
            auto pz = build_pz(delta);
            if (values_full_rank(F, pz, su.failed_hat)) {
                bool bw_ok = pass == 1 ||
                             values_bandwidth(F, pz, su.helper_hat) == target;
                if (bw_ok) {
                    chosen = std::move(pz);
                    exact = pass == 0;
                    break;
                }
            }
            // lexicographic increment, last slot fastest
            int slot = e - 2;
            while (slot >= 0) {
                if (++odo[slot] <= star) break;
                odo[slot] = 1;
                --slot;
            }
            if (slot < 0) done = true;
        }
    }
    if (chosen.empty())
        throw Error(Error::Code::DeltaSearchExhausted,
                    "no delta tuple satisfies the full rank condition");

    RepairScheme s;
    s.code = su.code;
    s.failed = failed;
    s.K = F.subfield(1);
    s.polys = lift_polys(F, E.power_basis(), chosen, su.bminv);
    s.helpers = su.helpers;
    s.xi = s.K->power_basis();
    s.construction = "III";
    int64_t lift = F.ell() / a;
    s.closed_form_gq = exact ? lift * target : lift * (int64_t)(n - e) * e;
    s.closed_form_exact = exact;
    s.params = {{"a", a}, {"m", params.m}, {"n", n}, {"k", params.k}, {"e", e}};
    return s;
}

// ---------------------------------------------------------------------------
// Construction IV (multi-erasure, s < a)

namespace {

uint32_t scalar_of(const FieldElem& b_elem) { return b_elem.c.empty() ? 0 : b_elem.c[0]; }

}  // namespace

namespace {

// One attempt at the Construction IV coefficient solve for a fixed subspace
// W (given by its nonzero elements). Fills the E-level polynomial rows and
// the mandated dual basis; returns false if some block-elimination system
// has no nonzero solution.
struct IvAttempt {
    std::vector<std::vector<FPoly>> pz;
    std::vector<FieldElem> xiE;
};

bool construct_iv_solve(const FieldCtx& F, const SubfieldHandle& E, int sdim,
                        const MultiErasureSetup& su,
                        const std::vector<FieldElem>& wstar, IvAttempt& out) {
    int a = E.degree();
    int e = (int)su.failed_hat.size();
    uint32_t q = F.q();
    const auto& mu = E.k_basis();
    FieldElem cconst = F.one();
    for (const auto& w : wstar) cconst = F.mul(cconst, F.inv(w));

    // image basis of g(y) = prod_{w in W} (y - w): evaluate on the E basis
    std::vector<FieldElem> gvals;
    for (int u = 0; u < a; ++u) {
        FieldElem y = mu[u];
        FieldElem acc = y;   // w = 0 factor
        for (const auto& w : wstar) acc = F.mul(acc, F.sub(y, w));
        gvals.push_back(acc);
    }
    auto grr = rank_over(CoeffDomain::base(F), gvals);
    std::vector<FieldElem> vbasis;
    for (int p : grr.pivots) vbasis.push_back(gvals[p]);
    if ((int)vbasis.size() != a - sdim) return false;

    // mandated dual basis inside E: dual of {mu_j^(q^s) c}
    auto subB = E.sub()->subfield(1);
    std::vector<FieldElem> target_sub;
    for (int j = 0; j < a; ++j)
        target_sub.push_back(E.project(F.mul(F.frobenius(mu[j], sdim), cconst)));
    auto dual_sub = dual_basis(subB, target_sub);
    std::vector<FieldElem> xiE;
    for (const auto& d : dual_sub) xiE.push_back(E.embed(d));

    auto trEB = [&](const FieldElem& z) -> uint32_t {
        return scalar_of(subB->trace(E.project(z)));
    };

    auto row_polys = [&](int i, const FieldElem& delta) {
        std::vector<FPoly> row;
        FieldElem dpref = F.pow(delta, ipow(q, sdim) - 1);
        FieldElem dinv = F.inv(delta);
        for (int j = 0; j < a; ++j) {
            FPoly p = FPoly::constant(F.one());
            for (const auto& w : wstar) {
                FieldElem root = F.sub(su.failed_hat[i],
                                       F.mul(F.inv(w), F.mul(mu[j], dinv)));
                FPoly lin;
                lin.coef = {F.neg(root), F.one()};
                p = poly_mul(F, p, lin);
            }
            row.push_back(poly_scale(F, F.mul(dpref, mu[j]), p));
        }
        return row;
    };

    // S^E block: a x a over GF(q), entry [j][m] = tr_{E/B}(xiE_m p_tj(alpha_y))
    auto sblock = [&](const std::vector<FPoly>& prow, const FieldElem& at) {
        GfMat blk(a, GfVec(a, 0));
        for (int j = 0; j < a; ++j) {
            FieldElem v = poly_eval(F, prow[j], at);
            for (int m = 0; m < a; ++m) blk[j][m] = trEB(F.mul(xiE[m], v));
        }
        return blk;
    };

    std::vector<FieldElem> delta(e, F.one());
    std::vector<std::vector<FPoly>> pz(e);
    pz[0] = row_polys(0, delta[0]);
    for (int i = 1; i < e; ++i) {
        GfMat rows;
        for (int t = 0; t < i; ++t) {
            FieldElem xprime = F.sub(su.failed_hat[i], su.failed_hat[t]);
            FieldElem lam_pref = F.mul(F.frobenius(xprime, sdim), cconst);
            for (int y = t + 1; y < e; ++y) {
                GfMat sty = sblock(pz[t], su.failed_hat[y]);
                // pivot columns of S_ty: greedy, ascending column index
                GfMat styT(a, GfVec(a, 0));
                for (int rr2 = 0; rr2 < a; ++rr2)
                    for (int cc = 0; cc < a; ++cc) styT[cc][rr2] = sty[rr2][cc];
                std::vector<int> pivot_cols;
                GfMat accum;
                for (int ccol = 0; ccol < a; ++ccol) {
                    GfMat trial = accum;
                    trial.push_back(styT[ccol]);
                    GfMat red = trial;
                    if (gfq::rref(q, red, nullptr) == (int)trial.size()) {
                        accum = trial;
                        pivot_cols.push_back(ccol);
                    }
                }
                for (int p : pivot_cols) {
                    for (int v = 0; v < a - sdim; ++v) {
                        FieldElem lam = F.mul(lam_pref, vbasis[v]);
                        GfVec row(a, 0);
                        for (int u = 0; u < a; ++u) {
                            uint64_t acc = 0;
                            FieldElem gu_lam = F.mul(mu[u], lam);
                            for (int m = 0; m < a; ++m)
                                acc += (uint64_t)sty[m][p] *
                                       trEB(F.mul(xiE[m], gu_lam));
                            row[u] = (uint32_t)(acc % q);
                        }
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
        // nullspace: first basis vector in ascending free-column order
        std::vector<int> pivots;
        GfMat red = rows;
        gfq::rref(q, red, &pivots);
        std::set<int> pivset(pivots.begin(), pivots.end());
        int free_col = -1;
        for (int ccol = 0; ccol < a; ++ccol)
            if (!pivset.count(ccol)) { free_col = ccol; break; }
        if (free_col < 0) return false;
        GfVec sol(a, 0);
        sol[free_col] = 1;
        for (size_t rr2 = 0; rr2 < pivots.size(); ++rr2)
            sol[pivots[rr2]] = (q - red[rr2][free_col] % q) % q;
        FieldElem dprime = F.zero();
        for (int u = 0; u < a; ++u)
            if (sol[u]) dprime = F.add(dprime, F.mul_scalar(mu[u], sol[u]));
        if (F.is_zero(dprime)) return false;
        delta[i] = F.frobenius(dprime, a - sdim);   // delta = delta'^(q^(a-s))
        pz[i] = row_polys(i, delta[i]);
    }
    if (!values_full_rank(F, pz, su.failed_hat)) return false;
    out.pz = std::move(pz);
    out.xiE = std::move(xiE);
    return true;
}

// Deterministic enumeration of the nonzero parts of all s-dimensional
// GF(q)-subspaces of E, the span of the first s basis elements first.
std::vector<std::vector<FieldElem>> candidate_w_subspaces(const FieldCtx& F,
                                                          const SubfieldHandle& E,
                                                          int sdim) {
    std::vector<std::vector<FieldElem>> out;
    out.push_back(w_subspace_star(F, E, sdim));
    uint64_t total = ipow(F.q(), E.degree());
    if (total > 4096) return out;   // search only at desk scale
    auto elems = E.enumerate();
    std::set<std::vector<uint64_t>> seen;
    {
        std::vector<uint64_t> key;
        for (const auto& v : out[0]) key.push_back(F.to_index(v));
        std::sort(key.begin(), key.end());
        seen.insert(key);
    }
    std::vector<int> gens(sdim, 0);
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == sdim) {
            std::vector<FieldElem> basis;
            for (int gidx : gens) basis.push_back(elems[gidx]);
            if (rank_over_base_rows(F, basis) != sdim) return;
            // enumerate the span's nonzero part in coefficient order
            std::vector<FieldElem> star;
            uint64_t cnt = ipow(F.q(), sdim);
            for (uint64_t idx = 1; idx < cnt; ++idx) {
                uint64_t v = idx;
                FieldElem acc = F.zero();
                for (int u = 0; u < sdim; ++u) {
                    uint32_t d = (uint32_t)(v % F.q());
                    v /= F.q();
                    if (d) acc = F.add(acc, F.mul_scalar(basis[u], d));
                }
                star.push_back(acc);
            }
            std::vector<uint64_t> key;
            for (const auto& v : star) key.push_back(F.to_index(v));
            std::sort(key.begin(), key.end());
            if (seen.insert(key).second) out.push_back(std::move(star));
            return;
        }
        for (int gidx = from; gidx < (int)elems.size(); ++gidx) {
            gens[pos] = gidx;
            rec(pos + 1, gidx + 1);
        }
    };
    rec(0, 1);
    return out;
}

}  // namespace

RepairScheme construct_IV(const OneCosetParams& params,
                          const std::vector<int>& failed) {
    const FieldCtx& F = *params.F;
    const SubfieldHandle& E = *params.E;
    int a = E.degree();
    int e = (int)failed.size();
    int n = (int)params.A.size();
    int r = n - params.k;
    int sdim = params.s;
    uint32_t q = F.q();
    if (sdim < 0 || sdim >= a)
        throw Error(Error::Code::BadParameter, "require 0 <= s < a");
    if ((int64_t)ipow(q, sdim) > r)
        throw Error(Error::Code::SubspaceTooLarge, "q^s must be at most n-k");
    if (2LL * a < (int64_t)e * (e - 1) * (a - sdim) * (a - sdim))
        throw Error(Error::Code::BadParameter,
                    "require a >= e(e-1)/2 (a-s)^2");
    MultiErasureSetup su = multi_erasure_setup(params, failed);

    // The W subspace is a free choice of the construction; the default span
    // does not always admit delta coefficients, so scan subspaces in a
    // deterministic order and take the first that solves.
    IvAttempt attempt;
    bool solved = false;
    for (const auto& wstar : candidate_w_subspaces(F, E, sdim)) {
        if (construct_iv_solve(F, E, sdim, su, wstar, attempt)) {
            solved = true;
            break;
        }
    }
    if (!solved)
        throw Error(Error::Code::NoDeltaSolution,
                    "no W subspace admits elimination coefficients");

    // assemble the lifted scheme with the product dual basis
    auto eta = E.power_basis();
    auto etad = dual_basis(params.E, eta);
    RepairScheme s;
    s.code = su.code;
    s.failed = failed;
    s.K = F.subfield(1);
    s.polys = lift_polys(F, eta, attempt.pz, su.bminv);
    s.helpers = su.helpers;
    s.xi.clear();
    for (int w = 0; w < (int)eta.size(); ++w)
        for (int j = 0; j < a; ++j) s.xi.push_back(F.mul(etad[w], attempt.xiE[j]));
    s.construction = "IV";
    s.closed_form_gq =
        (int64_t)e * F.ell() / a * (n - e) * (a - sdim);
    s.closed_form_exact = false;
    s.params = {{"a", a}, {"s", sdim}, {"m", params.m}, {"n", n},
                {"k", params.k}, {"e", e}};
    return s;
}

// ---------------------------------------------------------------------------
// Naive scheme, erasure layout, multi-coset multi-erasure formula

RepairScheme naive_scheme(const RSCodePtr& code, const std::vector<int>& failed) {
    const FieldCtx& F = code->ctx();
    int e = (int)failed.size();
    if (e < 1 || e > code->r())
        throw Error(Error::Code::BadParameter, "require 1 <= e <= n-k");
    auto K = F.subfield(1);
    auto mu = K->power_basis();
    RepairScheme s;
    s.code = code;
    s.failed = failed;
    s.K = K;
    s.polys.resize(e);
    for (int i = 0; i < e; ++i) {
        FPoly prod = FPoly::constant(F.one());
        for (int v = 0; v < e; ++v) {
            if (v == i) continue;
            FPoly lin;
            lin.coef = {F.neg(code->points()[failed[v]]), F.one()};
            prod = poly_mul(F, prod, lin);
        }
        for (const auto& m : mu) s.polys[i].push_back(poly_scale(F, m, prod));
    }
    s.helpers = all_helpers(code->n(), failed);
    s.xi = mu;
    s.construction = "naive";
    s.closed_form_gq = (int64_t)(code->n() - e) * F.ell();
    s.closed_form_exact = true;
    return s;
}

std::vector<int> erasure_layout_from_counts(const std::vector<int>& counts, int e) {
    std::vector<int> h(e, 0);
    for (int i = 1; i <= e; ++i)
        for (int c : counts)
            if (c >= i) ++h[i - 1];
    int total = std::accumulate(h.begin(), h.end(), 0);
    if (total != e)
        throw Error(Error::Code::BadParameter, "layout counts do not sum to e");
    return h;
}

std::vector<int> erasure_layout(const RSCode& code, const SubfieldHandlePtr& E,
                                const std::vector<int>& failed) {
    const FieldCtx& F = code.ctx();
    std::vector<FieldElem> reps;
    std::vector<int> counts;
    for (int idx : failed) {
        const FieldElem& p = code.points()[idx];
        bool found = false;
        for (size_t c = 0; c < reps.size(); ++c) {
            if (E->contains(F.div(p, reps[c]))) {
                ++counts[c];
                found = true;
                break;
            }
        }
        if (!found) {
            reps.push_back(p);
            counts.push_back(1);
        }
    }
    return erasure_layout_from_counts(counts, (int)failed.size());
}

namespace {

RatValue rat_norm(long long num, long long den) {
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    return RatValue{num, den};
}

RatValue rat_add(RatValue a, RatValue b) {
    return rat_norm(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatValue rat_mul(RatValue a, RatValue b) {
    return rat_norm(a.num * b.num, a.den * b.den);
}

}  // namespace

RatValue multi_erasure_multi_coset_bandwidth_per_ell(long long n, long long k,
                                                     long long e, long long d,
                                                     long long a, long long q,
                                                     const std::vector<int>& h) {
    if (e < 1 || e > n - k)
        throw Error(Error::Code::BadParameter, "require 1 <= e <= n-k");
    if (d < k || d > n - e)
        throw Error(Error::Code::BadParameter, "require k <= d <= n-e");
    if ((int)h.size() != e)
        throw Error(Error::Code::BadParameter, "layout must have e entries");
    long long qa = 1;
    for (int i = 0; i < a; ++i) qa *= q;
    long long h1 = h.empty() ? 0 : h[0];
    RatValue sum{0, 1};
    long long cum = 0;
    for (int i = 0; i < e; ++i) {
        if (i > 0 && h[i] > h[i - 1])
            throw Error(Error::Code::BadParameter, "layout must be non-increasing");
        cum += h[i];
        if (h[i] == 0) continue;
        sum = rat_add(sum, rat_norm(h[i], d - k + cum));
    }
    if (cum != e)
        throw Error(Error::Code::BadParameter, "layout must sum to e");
    RatValue inner = rat_add(rat_norm(h1 * (qa - 1) - e, 1),
                             rat_mul(rat_norm(n - h1 * (qa - 1), 1), sum));
    return rat_mul(rat_norm(d, n - e), inner);
}

}  // namespace rsrepair
