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

#include "rsrepair/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rsrepair {

namespace {

int find_position(const std::vector<int>& v, int t) {
    auto it = std::find(v.begin(), v.end(), t);
    return it == v.end() ? -1 : (int)(it - v.begin());
}

}  // namespace

void validate_scheme(const RepairScheme& s) {
    const FieldCtx& F = s.code->ctx();
    int n = s.code->n();
    int e = s.e();
    if (e < 1 || e > s.code->r())
        throw Error(Error::Code::BadParameter, "failed set size must be in [1, n-k]");
    int L = F.ell() / s.K->degree();
    if (s.L() != L)
        throw Error(Error::Code::BadParameter, "xi size must equal [F:K]");
    if ((int)s.polys.size() != e)
        throw Error(Error::Code::BadParameter, "polynomial rows must equal e");
    for (const auto& row : s.polys) {
        if ((int)row.size() != L)
            throw Error(Error::Code::BadParameter, "polynomial row length must equal [F:K]");
        for (const auto& p : row)
            if (p.degree(F) >= s.code->r())
                throw Error(Error::Code::DegreeTooHigh, "repair polynomial degree must be < n-k");
    }
    std::set<int> fs(s.failed.begin(), s.failed.end());
    std::set<int> hs(s.helpers.begin(), s.helpers.end());
    if ((int)fs.size() != e || !std::is_sorted(s.failed.begin(), s.failed.end()))
        throw Error(Error::Code::BadParameter, "failed positions must be sorted and distinct");
    for (int t : s.failed)
        if (t < 0 || t >= n) throw Error(Error::Code::BadParameter, "failed index out of range");
    for (int t : s.helpers) {
        if (t < 0 || t >= n) throw Error(Error::Code::BadParameter, "helper index out of range");
        if (fs.count(t)) throw Error(Error::Code::BadParameter, "helpers must be disjoint from failed");
    }
    // polynomials must vanish at non-participating positions
    for (int t = 0; t < n; ++t) {
        if (fs.count(t) || hs.count(t)) continue;
        for (const auto& v : scheme_poly_values(s, t))
            if (!F.is_zero(v))
                throw Error(Error::Code::BadParameter,
                            "polynomials do not vanish at non-helper position " +
                                std::to_string(t));
    }
}

std::vector<FieldElem> scheme_poly_values(const RepairScheme& s, int t) {
    const FieldCtx& F = s.code->ctx();
    const FieldElem& alpha = s.code->points()[t];
    std::vector<FieldElem> vals;
    vals.reserve((size_t)s.e() * s.L());
    for (const auto& row : s.polys)
        for (const auto& p : row) vals.push_back(poly_eval(F, p, alpha));
    return vals;
}

std::vector<FieldElem> scheme_dual_values(const RepairScheme& s, int t) {
    const FieldCtx& F = s.code->ctx();
    auto vals = scheme_poly_values(s, t);
    const FieldElem& u = s.code->upsilon()[t];
    for (auto& v : vals) v = F.mul(u, v);
    return vals;
}

namespace {

// L x L block for failure row i evaluated at position t.
FMat build_block(const RepairScheme& s, int i, int t, bool include_upsilon) {
    const FieldCtx& F = s.code->ctx();
    int L = s.L();
    const FieldElem& alpha = s.code->points()[t];
    FMat blk(F, L, L);
    for (int j = 0; j < L; ++j) {
        FieldElem v = poly_eval(F, s.polys[i][j], alpha);
        if (include_upsilon) v = F.mul(s.code->upsilon()[t], v);
        for (int m = 0; m < L; ++m)
            blk.at(j, m) = s.K->trace(F.mul(s.xi[m], v));
    }
    return blk;
}

}  // namespace

RepairMatrixS build_repair_matrix(const RepairScheme& s, bool include_upsilon) {
    const FieldCtx& F = s.code->ctx();
    int e = s.e(), L = s.L();
    RepairMatrixS S;
    S.e = e;
    S.L = L;
    S.blocks.assign(e, std::vector<FMat>());
    S.assembled = FMat(F, (size_t)e * L, (size_t)e * L);
    for (int i = 0; i < e; ++i) {
        for (int v = 0; v < e; ++v) {
            FMat blk = build_block(s, i, s.failed[v], include_upsilon);
            for (int j = 0; j < L; ++j)
                for (int m = 0; m < L; ++m)
                    S.assembled.at((size_t)i * L + j, (size_t)v * L + m) = blk.at(j, m);
            S.blocks[i].push_back(std::move(blk));
        }
    }
    return S;
}

bool check_full_rank(const RepairScheme& s) {
    const FieldCtx& F = s.code->ctx();
    if (s.e() == 1) {
        auto vals = scheme_poly_values(s, s.failed[0]);
        auto rr = rank_over(CoeffDomain::subfield(*s.K), vals);
        return rr.rank == s.L();
    }
    RepairMatrixS S = build_repair_matrix(s, /*include_upsilon=*/false);
    return fmat_rank(F, S.assembled) == (int)S.assembled.rows;
}

BandwidthReport measure_bandwidth(const RepairScheme& s) {
    if (!check_full_rank(s))
        throw Error(Error::Code::FullRankViolated, "scheme fails the full rank condition");
    const FieldCtx& F = s.code->ctx();
    BandwidthReport rep;
    rep.helper_ranks.reserve(s.helpers.size());
    for (int t : s.helpers) {
        auto vals = scheme_poly_values(s, t);
        auto rr = rank_over(CoeffDomain::subfield(*s.K), vals);
        rep.helper_ranks.push_back(rr.rank);
        rep.total_K += rr.rank;
    }
    rep.total_gq = rep.total_K * s.K->degree();
    rep.bits = (double)rep.total_gq * std::log2((double)F.q());
    rep.closed_form_gq = s.closed_form_gq;
    rep.closed_form_exact = s.closed_form_exact;
    return rep;
}

HelperTranscript helper_transcript(const RepairScheme& s, const Codeword& cw,
                                   int t) {
    if (find_position(s.helpers, t) < 0)
        throw Error(Error::Code::NotAHelper, "position " + std::to_string(t));
    const FieldCtx& F = s.code->ctx();
    auto dual_vals = scheme_dual_values(s, t);
    auto rr = rank_over(CoeffDomain::subfield(*s.K), dual_vals);

    HelperTranscript tr;
    tr.helper = t;
    int L = s.L();
    for (int p : rr.pivots) tr.pivots.emplace_back(p / L, p % L);
    const FieldElem& sym = cw.symbols[t];
    for (int p : rr.pivots)
        tr.symbols.push_back(s.K->trace(F.mul(dual_vals[p], sym)));
    tr.recon = std::move(rr.combo);
    return tr;
}

std::vector<FieldElem> repair(const RepairScheme& s,
                              const std::vector<HelperTranscript>& transcripts) {
    const FieldCtx& F = s.code->ctx();
    int e = s.e(), L = s.L();

    std::map<int, const HelperTranscript*> by_helper;
    for (const auto& tr : transcripts) by_helper[tr.helper] = &tr;

    // RHS_{ij} = -sum_t tr(upsilon_t p_ij(alpha_t) f(alpha_t)), reconstructed
    // from pivot symbols by K-linearity of the trace.
    FMat rhs(F, (size_t)e * L, 1);
    for (int t : s.helpers) {
        auto it = by_helper.find(t);
        if (it == by_helper.end())
            throw Error(Error::Code::MissingTranscript,
                        "no transcript for helper " + std::to_string(t));
        const HelperTranscript& tr = *it->second;
        for (int row = 0; row < e * L; ++row) {
            FieldElem acc = F.zero();
            for (size_t p = 0; p < tr.symbols.size(); ++p)
                acc = F.add(acc, F.mul(tr.recon[row][p], tr.symbols[p]));
            rhs.at(row, 0) = F.sub(rhs.at(row, 0), acc);
        }
    }

    RepairMatrixS S = build_repair_matrix(s, /*include_upsilon=*/true);
    auto X = fmat_solve(F, S.assembled, rhs);
    if (!X)
        throw Error(Error::Code::SingularSystem,
                    "repair matrix singular despite construction");

    std::vector<FieldElem> out;
    out.reserve(e);
    for (int v = 0; v < e; ++v) {
        FieldElem acc = F.zero();
        for (int m = 0; m < L; ++m)
            acc = F.add(acc, F.mul(X->at((size_t)v * L + m, 0), s.xi[m]));
        out.push_back(acc);
    }
    return out;
}

std::vector<FieldElem> repair_from_codeword(const RepairScheme& s,
                                            const Codeword& cw) {
    std::vector<HelperTranscript> trs;
    trs.reserve(s.helpers.size());
    for (int t : s.helpers) trs.push_back(helper_transcript(s, cw, t));
    return repair(s, trs);
}

QueryScheme to_query_scheme(const RepairScheme& s) {
    const FieldCtx& F = s.code->ctx();
    int n = s.code->n();
    if ((int)s.helpers.size() != n - s.e())
        throw Error(Error::Code::BadParameter,
                    "query conversion assumes all n-e remaining nodes help");
    if (!check_full_rank(s))
        throw Error(Error::Code::FullRankViolated, "scheme fails the full rank condition");
    int e = s.e(), L = s.L();

    RepairMatrixS S = build_repair_matrix(s, /*include_upsilon=*/true);
    auto inv = fmat_inverse(F, S.assembled);
    if (!inv)
        throw Error(Error::Code::SingularSystem, "repair matrix singular");

    QueryScheme qs;
    qs.code = s.code;
    qs.failed = s.failed;
    qs.helpers = s.helpers;
    qs.K = s.K;
    qs.recomb = s.xi;
    qs.beta.assign(e, std::vector<std::vector<std::vector<FieldElem>>>(
                          L, std::vector<std::vector<FieldElem>>(s.helpers.size())));

    for (size_t ht = 0; ht < s.helpers.size(); ++ht) {
        int t = s.helpers[ht];
        auto dual_vals = scheme_dual_values(s, t);
        auto rr = rank_over(CoeffDomain::subfield(*s.K), dual_vals);
        std::vector<FieldElem> q_set;
        for (int p : rr.pivots) q_set.push_back(dual_vals[p]);
        qs.bandwidth_K += (int64_t)q_set.size();
        // beta[(i,m)][t][p] = -sum_{(i',j')} Inv[(i,m)][(i',j')] recon[(i',j')][p]
        for (int i = 0; i < e; ++i)
            for (int m = 0; m < L; ++m) {
                std::vector<FieldElem> coeffs(q_set.size(), F.zero());
                for (int row = 0; row < e * L; ++row) {
                    const FieldElem& w = inv->at((size_t)i * L + m, row);
                    if (F.is_zero(w)) continue;
                    for (size_t p = 0; p < q_set.size(); ++p)
                        coeffs[p] = F.sub(coeffs[p], F.mul(w, rr.combo[row][p]));
                }
                qs.beta[i][m][ht] = std::move(coeffs);
            }
        qs.queries.push_back(std::move(q_set));
    }
    return qs;
}

std::vector<FieldElem> run_query_scheme(const QueryScheme& qs,
                                        const Codeword& cw) {
    const FieldCtx& F = qs.code->ctx();
    int e = (int)qs.failed.size();
    int L = (int)qs.recomb.size();
    // replies: tr_{F/K}(gamma C_t) for each query gamma
    std::vector<std::vector<FieldElem>> replies(qs.helpers.size());
    for (size_t ht = 0; ht < qs.helpers.size(); ++ht) {
        const FieldElem& sym = cw.symbols[qs.helpers[ht]];
        for (const auto& gamma : qs.queries[ht])
            replies[ht].push_back(qs.K->trace(F.mul(gamma, sym)));
    }
    std::vector<FieldElem> out;
    out.reserve(e);
    for (int i = 0; i < e; ++i) {
        FieldElem sym = F.zero();
        for (int m = 0; m < L; ++m) {
            FieldElem lambda = F.zero();
            for (size_t ht = 0; ht < qs.helpers.size(); ++ht)
                for (size_t p = 0; p < replies[ht].size(); ++p)
                    lambda = F.add(lambda, F.mul(qs.beta[i][m][ht][p], replies[ht][p]));
            sym = F.add(sym, F.mul(lambda, qs.recomb[m]));
        }
        out.push_back(sym);
    }
    return out;
}

bool stacked_rank_check(const RepairScheme& s, int t) {
    if (find_position(s.helpers, t) < 0)
        throw Error(Error::Code::NotAHelper, "position " + std::to_string(t));
    const FieldCtx& F = s.code->ctx();
    int e = s.e(), L = s.L();
    FMat stacked(F, (size_t)e * L, L);
    for (int i = 0; i < e; ++i) {
        FMat blk = build_block(s, i, t, /*include_upsilon=*/false);
        for (int j = 0; j < L; ++j)
            for (int m = 0; m < L; ++m)
                stacked.at((size_t)i * L + j, m) = blk.at(j, m);
    }
    int matrix_rank = fmat_rank(F, std::move(stacked));
    auto vals = scheme_poly_values(s, t);
    int vec_rank = rank_over(CoeffDomain::subfield(*s.K), vals).rank;
    return matrix_rank == vec_rank;
}

}  // namespace rsrepair
