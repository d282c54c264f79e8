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

#include "rsrepair/gf.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <sstream>

namespace rsrepair {

Error::Error(Code c, const std::string& msg)
    : std::runtime_error(std::string(name(c)) + ": " + msg), code_(c) {}

const char* Error::name(Code c) {
    switch (c) {
        case Code::NonPrimeBase: return "NonPrimeBase";
        case Code::ReducibleModulus: return "ReducibleModulus";
        case Code::PrimitiveSearchFailed: return "PrimitiveSearchFailed";
        case Code::SubfieldNotInTower: return "SubfieldNotInTower";
        case Code::NotABasis: return "NotABasis";
        case Code::DependentGenerators: return "DependentGenerators";
        case Code::DuplicateEvaluationPoints: return "DuplicateEvaluationPoints";
        case Code::WrongMessageLength: return "WrongMessageLength";
        case Code::DegreeTooHigh: return "DegreeTooHigh";
        case Code::TooManyErasures: return "TooManyErasures";
        case Code::FullRankViolated: return "FullRankViolated";
        case Code::NotAHelper: return "NotAHelper";
        case Code::SingularSystem: return "SingularSystem";
        case Code::MissingTranscript: return "MissingTranscript";
        case Code::SubspaceTooLarge: return "SubspaceTooLarge";
        case Code::FailedPointNotInCoset: return "FailedPointNotInCoset";
        case Code::BadCosetGap: return "BadCosetGap";
        case Code::UnbalancedSplit: return "UnbalancedSplit";
        case Code::DependentOriginalPoints: return "DependentOriginalPoints";
        case Code::CosetCollision: return "CosetCollision";
        case Code::DependentEvaluationPoints: return "DependentEvaluationPoints";
        case Code::DeltaSearchExhausted: return "DeltaSearchExhausted";
        case Code::ErasuresSpanCosets: return "ErasuresSpanCosets";
        case Code::NoDeltaSolution: return "NoDeltaSolution";
        case Code::BadParameter: return "BadParameter";
        case Code::SpecError: return "SpecError";
    }
    return "Error";
}

namespace {

// ---------------------------------------------------------------------------
// integer helpers

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

// Hardcoded prime factor lists of 2^ell - 1 for the shipped field sizes, so
// primitivity checks at these sizes never factor at runtime.
const std::map<int, std::vector<uint64_t>>& two_pow_minus1_factors() {
    static const std::map<int, std::vector<uint64_t>> t = {
        {1, {}},
        {2, {3}},
        {3, {7}},
        {4, {3, 5}},
        {5, {31}},
        {6, {3, 7}},
        {7, {127}},
        {8, {3, 5, 17}},
        {9, {7, 73}},
        {10, {3, 11, 31}},
        {11, {23, 89}},
        {12, {3, 5, 7, 13}},
        {13, {8191}},
        {14, {3, 43, 127}},
        {15, {7, 31, 151}},
        {16, {3, 5, 17, 257}},
        {18, {3, 7, 19, 73}},
        {20, {3, 5, 11, 31, 41}},
        {24, {3, 5, 7, 13, 17, 241}},
        {32, {3, 5, 17, 257, 65537}},
        {36, {3, 5, 7, 13, 19, 37, 73, 109}},
        {40, {3, 5, 11, 17, 31, 41, 61681}},
        {48, {3, 5, 7, 13, 17, 97, 241, 257, 673}},
    };
    return t;
}

// Known primitive polynomials over GF(2), packed little-endian.
const std::map<int, uint64_t>& gf2_primitive_polys() {
    static const std::map<int, uint64_t> t = {
        {1, 0x3},      {2, 0x7},       {3, 0xb},      {4, 0x13},
        {5, 0x25},     {6, 0x43},      {7, 0x83},     {8, 0x11d},
        {9, 0x211},    {10, 0x409},    {11, 0x805},   {12, 0x1053},
        {13, 0x201b},  {14, 0x402b},   {15, 0x8003},  {16, 0x1100b},
        {24, 0x1000087}, {48, 0x1000018000003ull},
    };
    return t;
}

std::optional<std::vector<uint64_t>> factor_group_order(uint32_t q, int ell,
                                                        uint64_t order) {
    if (q == 2) {
        auto& t = two_pow_minus1_factors();
        auto it = t.find(ell);
        if (it != t.end()) return it->second;
    }
    // Generic deterministic fallback: trial division plus a primality test on
    // the remainder. Composite remainders are rejected, not trusted.
    std::vector<uint64_t> fs;
    uint64_t n = order;
    for (uint64_t d = 2; d <= (1u << 20) && d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (!miller_rabin(n)) return std::nullopt;
        fs.push_back(n);
    }
    return fs;
}

// ---------------------------------------------------------------------------
// polynomial arithmetic over GF(q) for modulus handling (GfVec, little-endian)

uint32_t inv_mod_q(uint32_t a, uint32_t q) {
    // q prime
    int64_t t = 0, nt = 1, r = q, nr = a % q;
    while (nr != 0) {
        int64_t qt = r / nr;
        std::swap(t -= qt * nt, nt);
        std::swap(r -= qt * nr, nr);
    }
    return (uint32_t)((t % q + q) % q);
}

void ptrim(GfVec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int pdeg(const GfVec& p) { return (int)p.size() - 1; }

GfVec pmul(uint32_t q, const GfVec& a, const GfVec& b) {
    if (a.empty() || b.empty()) return {};
    GfVec c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (uint32_t)((c[i + j] + (uint64_t)a[i] * b[j]) % q);
    }
    ptrim(c);
    return c;
}

GfVec pmod(uint32_t q, GfVec a, const GfVec& m) {
    ptrim(a);
    int dm = pdeg(m);
    uint32_t lead_inv = inv_mod_q(m.back(), q);
    while (pdeg(a) >= dm) {
        uint32_t f = (uint32_t)((uint64_t)a.back() * lead_inv % q);
        int shift = pdeg(a) - dm;
        for (int i = 0; i <= dm; ++i) {
            uint64_t v = (a[i + shift] + (uint64_t)q * q - (uint64_t)f * m[i]) % q;
            a[i + shift] = (uint32_t)v;
        }
        ptrim(a);
        if (a.empty()) break;
    }
    return a;
}

GfVec pgcd(uint32_t q, GfVec a, GfVec b) {
    ptrim(a); ptrim(b);
    while (!b.empty()) {
        GfVec r = pmod(q, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        uint32_t li = inv_mod_q(a.back(), q);
        for (auto& c : a) c = (uint32_t)((uint64_t)c * li % q);
    }
    return a;
}

// Rabin's test: f (monic, degree n) is irreducible over GF(q) iff
// x^(q^n) = x (mod f) and gcd(x^(q^(n/p)) - x, f) = 1 for all primes p | n.
bool poly_irreducible(uint32_t q, const GfVec& f) {
    int n = pdeg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    auto qpow = [&](int e) {
        // x^(q^e) mod f by repeated q-th powering
        GfVec r = pmod(q, GfVec{0, 1}, f);
        for (int i = 0; i < e; ++i) {
            GfVec s = {1};
            GfVec b = r;
            uint64_t ee = q;
            while (ee) {
                if (ee & 1) s = pmod(q, pmul(q, s, b), f);
                b = pmod(q, pmul(q, b, b), f);
                ee >>= 1;
            }
            r = std::move(s);
        }
        return r;
    };
    GfVec xqn = qpow(n);
    GfVec x = pmod(q, GfVec{0, 1}, f);
    GfVec diff = xqn;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i)
        diff[i] = (uint32_t)((diff[i] + (uint64_t)(q - x[i])) % q);
    ptrim(diff);
    if (!diff.empty()) return false;
    std::vector<int> primes;
    int nn = n;
    for (int p = 2; p * p <= nn; ++p)
        if (nn % p == 0) { primes.push_back(p); while (nn % p == 0) nn /= p; }
    if (nn > 1) primes.push_back(nn);
    for (int p : primes) {
        GfVec xe = qpow(n / p);
        GfVec d = xe;
        d.resize(std::max(d.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i)
            d[i] = (uint32_t)((d[i] + (uint64_t)(q - x[i])) % q);
        ptrim(d);
        GfVec g = pgcd(q, d, f);
        if (pdeg(g) != 0) return false;
    }
    return true;
}

GfVec poly_from_packed(uint64_t v, uint32_t q, int deg) {
    GfVec c(deg + 1, 0);
    for (int i = 0; i <= deg; ++i) { c[i] = (uint32_t)(v % q); v /= q; }
    return c;
}

std::string pack_base_q_hex(uint32_t q, const GfVec& coeffs) {
    std::vector<uint8_t> big = {0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        uint32_t carry = *it;
        for (auto& b : big) {
            uint32_t v = (uint32_t)b * q + carry;
            b = (uint8_t)(v & 0xff);
            carry = v >> 8;
        }
        while (carry) { big.push_back((uint8_t)(carry & 0xff)); carry >>= 8; }
    }
    static const char* hexd = "0123456789abcdef";
    std::string hex;
    for (auto it = big.rbegin(); it != big.rend(); ++it) {
        hex.push_back(hexd[*it >> 4]);
        hex.push_back(hexd[*it & 0xf]);
    }
    size_t nz = hex.find_first_not_of('0');
    return (nz == std::string::npos) ? "0" : hex.substr(nz);
}

GfVec unpack_base_q_hex(uint32_t q, int len, const std::string& hex) {
    std::vector<uint8_t> nibbles;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
        char ch = *it;
        uint8_t v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
        else throw Error(Error::Code::SpecError, "bad hex digit");
        nibbles.push_back(v);
    }
    std::vector<uint32_t> num;  // base-256 little-endian
    for (size_t i = 0; i < nibbles.size(); i += 2) {
        uint32_t byte = nibbles[i] | (i + 1 < nibbles.size() ? (nibbles[i + 1] << 4) : 0);
        num.push_back(byte);
    }
    GfVec out(len, 0);
    for (int i = 0; i < len; ++i) {
        uint32_t rem = 0;
        for (int j = (int)num.size() - 1; j >= 0; --j) {
            uint32_t v = (rem << 8) | num[j];
            num[j] = v / q;
            rem = v % q;
        }
        out[i] = rem;
    }
    for (auto v : num)
        if (v) throw Error(Error::Code::SpecError, "hex value out of range for field");
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtxPtr FieldCtx::build(uint32_t q, int ell, std::optional<GfVec> modulus) {
    if (!is_prime_u32(q))
        throw Error(Error::Code::NonPrimeBase, "q = " + std::to_string(q));
    if (ell < 1) throw Error(Error::Code::BadParameter, "ell must be positive");
    long double bits = ell * std::log2((long double)q);
    if (bits > 63)
        throw Error(Error::Code::BadParameter, "field too large: q^ell exceeds 2^63");

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->q_ = q;
    ctx->ell_ = ell;
    uint64_t order = 1;
    for (int i = 0; i < ell; ++i) order *= q;
    ctx->order_ = order - 1;

    bool table_primitive = false;
    if (modulus) {
        GfVec m = *modulus;
        ptrim(m);
        if (pdeg(m) != ell || m.back() != 1)
            throw Error(Error::Code::BadParameter, "modulus must be monic of degree ell");
        for (auto c : m)
            if (c >= q) throw Error(Error::Code::BadParameter, "modulus coefficient out of range");
        if (!poly_irreducible(q, m))
            throw Error(Error::Code::ReducibleModulus, "given modulus is reducible");
        ctx->modulus_ = std::move(m);
    } else if (q == 2 && gf2_primitive_polys().count(ell)) {
        ctx->modulus_ = poly_from_packed(gf2_primitive_polys().at(ell), 2, ell);
        if (!poly_irreducible(q, ctx->modulus_))
            throw Error(Error::Code::ReducibleModulus, "table modulus failed verification");
        table_primitive = true;
    } else {
        // Deterministic search: smallest lower-coefficient encoding first.
        bool found = false;
        uint64_t limit = 1;
        for (int i = 0; i < ell && limit <= (1ull << 40); ++i) limit *= q;
        for (uint64_t v = 0; v < limit; ++v) {
            GfVec cand = poly_from_packed(v, q, ell - 1);
            cand.resize(ell + 1, 0);
            cand[ell] = 1;
            if (poly_irreducible(q, cand)) {
                ctx->modulus_ = std::move(cand);
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(Error::Code::ReducibleModulus, "no irreducible modulus found");
    }

    ctx->init_tables();

    auto factors = factor_group_order(q, ell, ctx->order_);
    if (!factors)
        throw Error(Error::Code::PrimitiveSearchFailed,
                    "factorization of q^ell-1 unavailable for this size");
    auto has_full_order = [&](const FieldElem& g) {
        if (ctx->is_zero(g)) return false;
        for (uint64_t p : *factors)
            if (ctx->pow(g, ctx->order_ / p) == ctx->one()) return false;
        return true;
    };

    if (table_primitive) {
        ctx->primitive_ = ctx->gen_x();
        if (!has_full_order(ctx->primitive_))
            throw Error(Error::Code::PrimitiveSearchFailed, "table root not primitive");
    } else {
        bool found = false;
        for (uint64_t v = 1; v <= ctx->order_; ++v) {
            FieldElem g = ctx->from_index(v);
            if (has_full_order(g)) { ctx->primitive_ = g; found = true; break; }
        }
        if (!found)
            throw Error(Error::Code::PrimitiveSearchFailed, "no primitive element found");
    }
    return ctx;
}

void FieldCtx::init_tables() {
    // x^(ell+i) mod modulus for i in [0, ell-1)
    red_.assign(ell_ > 1 ? ell_ - 1 : 0, GfVec(ell_, 0));
    if (ell_ > 1) {
        GfVec cur(ell_, 0);  // x^ell mod f = -lower(f)
        for (int i = 0; i < ell_; ++i) cur[i] = (q_ - modulus_[i] % q_) % q_;
        red_[0] = cur;
        for (int i = 1; i < ell_ - 1; ++i) {
            GfVec nxt(ell_, 0);
            // multiply cur by x
            uint32_t top = cur[ell_ - 1];
            for (int j = ell_ - 1; j > 0; --j) nxt[j] = cur[j - 1];
            nxt[0] = 0;
            if (top) {
                for (int j = 0; j < ell_; ++j)
                    nxt[j] = (uint32_t)((nxt[j] + (uint64_t)top * red_[0][j]) % q_);
            }
            red_[i] = nxt;
            cur = std::move(nxt);
        }
    }
    // Frobenius matrix: column j is (x^j)^q
    frob_.assign(ell_, GfVec(ell_, 0));
    FieldElem xq = pow(gen_x(), q_);
    FieldElem cur = one();
    for (int j = 0; j < ell_; ++j) {
        for (int i = 0; i < ell_; ++i) frob_[i][j] = cur.c[i];
        cur = mul(cur, xq);
    }
}

FieldElem FieldCtx::zero() const { return FieldElem{GfVec(ell_, 0)}; }

FieldElem FieldCtx::one() const {
    FieldElem e{GfVec(ell_, 0)};
    e.c[0] = 1;
    return e;
}

FieldElem FieldCtx::gen_x() const {
    if (ell_ == 1) {
        FieldElem e{GfVec{((q_ - modulus_[0] % q_) % q_)}};
        return e;
    }
    FieldElem e{GfVec(ell_, 0)};
    e.c[1] = 1;
    return e;
}

FieldElem FieldCtx::from_coeffs(GfVec coeffs) const {
    if ((int)coeffs.size() != ell_)
        throw Error(Error::Code::BadParameter, "coefficient vector length mismatch");
    for (auto& c : coeffs) c %= q_;
    return FieldElem{std::move(coeffs)};
}

FieldElem FieldCtx::from_index(uint64_t idx) const {
    GfVec c(ell_, 0);
    for (int i = 0; i < ell_; ++i) { c[i] = (uint32_t)(idx % q_); idx /= q_; }
    return FieldElem{std::move(c)};
}

uint64_t FieldCtx::to_index(const FieldElem& a) const {
    uint64_t v = 0;
    for (int i = ell_ - 1; i >= 0; --i) v = v * q_ + a.c[i];
    return v;
}

bool FieldCtx::is_zero(const FieldElem& a) const {
    for (auto c : a.c)
        if (c) return false;
    return true;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (int i = 0; i < ell_; ++i) r.c[i] = (r.c[i] + b.c[i]) % q_;
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (int i = 0; i < ell_; ++i) r.c[i] = (r.c[i] + q_ - b.c[i]) % q_;
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
    FieldElem r = a;
    for (int i = 0; i < ell_; ++i) r.c[i] = (q_ - r.c[i]) % q_;
    return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<uint64_t> conv(2 * ell_ - 1, 0);
    for (int i = 0; i < ell_; ++i) {
        if (!a.c[i]) continue;
        uint64_t ai = a.c[i];
        for (int j = 0; j < ell_; ++j) conv[i + j] += ai * b.c[j];
    }
    for (auto& v : conv) v %= q_;
    for (int i = 2 * ell_ - 2; i >= ell_; --i) {
        uint64_t v = conv[i] % q_;
        if (!v) continue;
        const GfVec& row = red_[i - ell_];
        for (int j = 0; j < ell_; ++j) conv[j] = (conv[j] + v * row[j]) % q_;
        conv[i] = 0;
    }
    FieldElem r{GfVec(ell_, 0)};
    for (int i = 0; i < ell_; ++i) r.c[i] = (uint32_t)(conv[i] % q_);
    return r;
}

FieldElem FieldCtx::mul_scalar(const FieldElem& a, uint32_t s) const {
    FieldElem r = a;
    s %= q_;
    for (int i = 0; i < ell_; ++i) r.c[i] = (uint32_t)((uint64_t)r.c[i] * s % q_);
    return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
    if (is_zero(a)) throw Error(Error::Code::BadParameter, "inverse of zero");
    // extended Euclid over GF(q)[x] against the modulus
    GfVec r0 = modulus_, r1(a.c);
    ptrim(r1);
    GfVec s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        GfVec quo;
        GfVec rem = r0;
        ptrim(rem);
        int d1 = pdeg(r1);
        uint32_t li = inv_mod_q(r1.back(), q_);
        if (pdeg(rem) >= d1) quo.assign(pdeg(rem) - d1 + 1, 0);
        while (pdeg(rem) >= d1 && !rem.empty()) {
            int sh = pdeg(rem) - d1;
            uint32_t f = (uint32_t)((uint64_t)rem.back() * li % q_);
            quo[sh] = f;
            for (int i = 0; i <= d1; ++i)
                rem[i + sh] = (uint32_t)((rem[i + sh] + (uint64_t)q_ * q_ -
                                          (uint64_t)f * r1[i]) % q_);
            ptrim(rem);
        }
        // s' = s0 - quo*s1
        GfVec qs = pmul(q_, quo, s1);
        GfVec s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i)
            s2[i] = (uint32_t)((s2[i] + (uint64_t)(q_ - qs[i])) % q_);
        ptrim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (degree 0 since modulus irreducible), s0 * a = r0 (mod modulus)
    uint32_t gi = inv_mod_q(r0[0], q_);
    s0.resize(ell_, 0);
    FieldElem r{GfVec(ell_, 0)};
    for (int i = 0; i < ell_; ++i) r.c[i] = (uint32_t)((uint64_t)s0[i] * gi % q_);
    return r;
}

FieldElem FieldCtx::div(const FieldElem& a, const FieldElem& b) const {
    return mul(a, inv(b));
}

FieldElem FieldCtx::pow(const FieldElem& a, uint64_t e) const {
    FieldElem r = one();
    FieldElem b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FieldElem FieldCtx::frobenius(const FieldElem& a, int s) const {
    if (s < 0 || s > ell_)
        throw Error(Error::Code::BadParameter, "frobenius power out of range");
    FieldElem r = a;
    for (int k = 0; k < s; ++k) {
        GfVec out(ell_, 0);
        for (int j = 0; j < ell_; ++j) {
            if (!r.c[j]) continue;
            uint64_t v = r.c[j];
            for (int i = 0; i < ell_; ++i)
                out[i] = (uint32_t)((out[i] + v * frob_[i][j]) % q_);
        }
        r.c = std::move(out);
    }
    return r;
}

uint64_t FieldCtx::mult_order(const FieldElem& a) const {
    if (is_zero(a)) throw Error(Error::Code::BadParameter, "order of zero");
    auto factors = factor_group_order(q_, ell_, order_);
    if (!factors)
        throw Error(Error::Code::PrimitiveSearchFailed, "order factorization unavailable");
    uint64_t ord = order_;
    for (uint64_t p : *factors) {
        while (ord % p == 0 && pow(a, ord / p) == one()) ord /= p;
    }
    return ord;
}

std::string FieldCtx::spec_string() const {
    std::ostringstream os;
    os << "gf(" << q_ << "," << ell_ << ",poly=" << pack_base_q_hex(q_, modulus_) << ")";
    return os.str();
}

std::string FieldCtx::elem_to_hex(const FieldElem& a) const {
    return pack_base_q_hex(q_, a.c);
}

FieldElem FieldCtx::elem_from_hex(const std::string& hex) const {
    return FieldElem{unpack_base_q_hex(q_, ell_, hex)};
}

FieldCtxPtr field_from_spec(const std::string& spec) {
    // gf(q,ell[,poly=HEX])
    auto fail = [&] { throw Error(Error::Code::SpecError, "bad field spec: " + spec); };
    std::string s = spec;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.substr(0, 3) != "gf(" || s.back() != ')') fail();
    s = s.substr(3, s.size() - 4);
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 3) fail();
    uint32_t q = (uint32_t)std::stoul(parts[0]);
    int ell = std::stoi(parts[1]);
    std::optional<GfVec> mod;
    if (parts.size() == 3) {
        if (parts[2].substr(0, 5) != "poly=") fail();
        mod = unpack_base_q_hex(q, ell + 1, parts[2].substr(5));
    }
    return FieldCtx::build(q, ell, mod);
}

// ---------------------------------------------------------------------------
// GF(q) row reduction

namespace gfq {

int rref(uint32_t q, GfMat& m, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        uint32_t piv_inv = inv_mod_q(m[r][c], q);
        for (size_t j = 0; j < cols; ++j)
            m[r][j] = (uint32_t)((uint64_t)m[r][j] * piv_inv % q);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            uint32_t f = m[i][c];
            for (size_t j = 0; j < cols; ++j)
                m[i][j] = (uint32_t)((m[i][j] + (uint64_t)(q - f) * m[r][j]) % q);
        }
        if (pivot_cols) pivot_cols->push_back((int)c);
        ++r;
    }
    return (int)r;
}

}  // namespace gfq

// ---------------------------------------------------------------------------
// SubfieldHandle

SubfieldHandlePtr FieldCtx::subfield(int a) const {
    if (a < 1 || ell_ % a != 0)
        throw Error(Error::Code::SubfieldNotInTower,
                    "degree " + std::to_string(a) + " does not divide " + std::to_string(ell_));
    {
        std::lock_guard<std::mutex> lk(sub_mu_);
        auto it = subs_.find(a);
        if (it != subs_.end()) return it->second;
    }

    auto h = std::shared_ptr<SubfieldHandle>(new SubfieldHandle());
    h->field_ = shared_from_this();
    h->a_ = a;
    h->L_ = ell_ / a;
    uint64_t suborder = 1;
    for (int i = 0; i < a; ++i) suborder *= q_;
    uint64_t t = order_ / (suborder - 1);
    h->gamma_ = pow(primitive_, t);

    // minimal polynomial of gamma over GF(q): gamma^a + sum c_u gamma^u = 0
    GfMat sys(ell_, GfVec(a + 1, 0));
    FieldElem cur = one();
    for (int u = 0; u <= a; ++u) {
        for (int i = 0; i < ell_; ++i) sys[i][u] = cur.c[i];
        if (u < a) cur = mul(cur, h->gamma_);
    }
    // solve sys[:, 0..a-1] * c = -sys[:, a]
    GfMat aug(ell_, GfVec(a + 1, 0));
    for (int i = 0; i < ell_; ++i) {
        for (int u = 0; u < a; ++u) aug[i][u] = sys[i][u];
        aug[i][a] = (q_ - sys[i][a]) % q_;
    }
    std::vector<int> pc;
    gfq::rref(q_, aug, &pc);
    GfVec minp(a + 1, 0);
    minp[a] = 1;
    for (size_t r = 0; r < pc.size(); ++r) {
        if (pc[r] >= a)
            throw Error(Error::Code::SubfieldNotInTower, "minimal polynomial solve failed");
        minp[pc[r]] = aug[r][a];
    }
    h->sub_ = FieldCtx::build(q_, a, minp);

    // embedding matrix: columns gamma^u
    h->embed_.assign(ell_, GfVec(a, 0));
    cur = one();
    h->kbasis_.clear();
    for (int u = 0; u < a; ++u) {
        h->kbasis_.push_back(cur);
        for (int i = 0; i < ell_; ++i) h->embed_[i][u] = cur.c[i];
        cur = mul(cur, h->gamma_);
    }
    // projection: invert an a x a row-subset of the embedding
    {
        GfMat work = h->embed_;
        // find a independent rows
        GfMat probe;
        std::vector<int> rows_used;
        GfMat acc;
        for (int i = 0; i < ell_ && (int)rows_used.size() < a; ++i) {
            GfMat trial = acc;
            trial.push_back(work[i]);
            GfMat red = trial;
            if (gfq::rref(q_, red, nullptr) == (int)trial.size()) {
                acc = trial;
                rows_used.push_back(i);
            }
        }
        if ((int)rows_used.size() != a)
            throw Error(Error::Code::SubfieldNotInTower, "embedding is degenerate");
        // invert acc (a x a) over GF(q)
        GfMat inv_aug(a, GfVec(2 * a, 0));
        for (int i = 0; i < a; ++i) {
            for (int j = 0; j < a; ++j) inv_aug[i][j] = acc[i][j];
            inv_aug[i][a + i] = 1;
        }
        gfq::rref(q_, inv_aug, nullptr);
        GfMat rinv(a, GfVec(a, 0));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) rinv[i][j] = inv_aug[i][a + j];
        h->proj_.assign(a, GfVec(ell_, 0));
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j)
                h->proj_[i][rows_used[j]] = rinv[i][j];
    }
    // trace matrix: sum over i < L of Frobenius^(a*i)
    {
        // column-wise: trace(x^j)
        h->trace_mat_.assign(ell_, GfVec(ell_, 0));
        for (int j = 0; j < ell_; ++j) {
            FieldElem xj{GfVec(ell_, 0)};
            if (ell_ == 1) xj = pow(gen_x(), j);
            else xj.c[j] = 1;
            FieldElem acc = zero();
            FieldElem curp = xj;
            for (int i = 0; i < h->L_; ++i) {
                acc = add(acc, curp);
                if (i + 1 < h->L_) curp = frobenius(curp, a);
            }
            for (int i = 0; i < ell_; ++i) h->trace_mat_[i][j] = acc.c[i];
        }
    }

    auto res = SubfieldHandlePtr(h);
    std::lock_guard<std::mutex> lk(sub_mu_);
    auto [it, inserted] = subs_.emplace(a, res);
    return it->second;
}

FieldElem SubfieldHandle::embed(const FieldElem& sub_elem) const {
    const auto& F = *field_;
    GfVec out(F.ell(), 0);
    for (int u = 0; u < a_; ++u) {
        uint64_t v = sub_elem.c[u];
        if (!v) continue;
        for (int i = 0; i < F.ell(); ++i)
            out[i] = (uint32_t)((out[i] + v * embed_[i][u]) % F.q());
    }
    return FieldElem{std::move(out)};
}

FieldElem SubfieldHandle::project(const FieldElem& f_elem) const {
    const auto& F = *field_;
    GfVec out(a_, 0);
    for (int i = 0; i < a_; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < F.ell(); ++j) acc += (uint64_t)proj_[i][j] * f_elem.c[j];
        out[i] = (uint32_t)(acc % F.q());
    }
    FieldElem s{std::move(out)};
    if (!(embed(s) == f_elem))
        throw Error(Error::Code::SubfieldNotInTower, "element not in subfield");
    return s;
}

bool SubfieldHandle::contains(const FieldElem& f_elem) const {
    const auto& F = *field_;
    GfVec out(a_, 0);
    for (int i = 0; i < a_; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < F.ell(); ++j) acc += (uint64_t)proj_[i][j] * f_elem.c[j];
        out[i] = (uint32_t)(acc % F.q());
    }
    return embed(FieldElem{std::move(out)}) == f_elem;
}

FieldElem SubfieldHandle::trace(const FieldElem& x) const {
    const auto& F = *field_;
    GfVec out(F.ell(), 0);
    for (int j = 0; j < F.ell(); ++j) {
        uint64_t v = x.c[j];
        if (!v) continue;
        for (int i = 0; i < F.ell(); ++i)
            out[i] = (uint32_t)((out[i] + v * trace_mat_[i][j]) % F.q());
    }
    return FieldElem{std::move(out)};
}

std::vector<FieldElem> SubfieldHandle::power_basis() const {
    const auto& F = *field_;
    std::vector<FieldElem> b;
    FieldElem cur = F.one();
    FieldElem x = F.gen_x();
    for (int m = 0; m < L_; ++m) {
        b.push_back(cur);
        if (m + 1 < L_) cur = F.mul(cur, x);
    }
    return b;
}

std::vector<FieldElem> SubfieldHandle::enumerate() const {
    const auto& F = *field_;
    std::vector<FieldElem> out;
    uint64_t n = 1;
    for (int i = 0; i < a_; ++i) n *= F.q();
    out.reserve(n);
    out.push_back(F.zero());
    FieldElem cur = F.one();
    for (uint64_t j = 0; j + 1 < n; ++j) {
        out.push_back(cur);
        cur = F.mul(cur, gamma_);
    }
    return out;
}

// ---------------------------------------------------------------------------
// SubspaceHandle

SubspaceHandle subspace_span(const FieldCtxPtr& ctx, const SubfieldHandlePtr& over,
                             std::vector<FieldElem> gens) {
    // independence of gens over `over`
    CoeffDomain dom = over ? CoeffDomain::subfield(*over) : CoeffDomain::base(*ctx);
    auto rr = rank_over(dom, gens);
    if (rr.rank != (int)gens.size())
        throw Error(Error::Code::DependentGenerators,
                    "generators dependent over the designated subfield");
    SubspaceHandle h;
    h.field_ = ctx;
    h.gens_ = gens;
    for (const auto& g : gens)
        for (const auto& m : dom.multipliers) h.mult_.push_back(ctx->mul(m, g));
    // reduce multipliers to confirm dimension and build membership rows
    GfMat rows;
    for (const auto& m : h.mult_) rows.push_back(m.c);
    GfMat red = rows;
    int dim = gfq::rref(ctx->q(), red, nullptr);
    if (dim != (int)h.mult_.size())
        throw Error(Error::Code::DependentGenerators, "span dimension collapsed");
    red.resize(dim);
    h.basis_rows_ = std::move(red);
    return h;
}

uint64_t SubspaceHandle::size() const {
    uint64_t n = 1;
    for (size_t i = 0; i < mult_.size(); ++i) n *= field_->q();
    return n;
}

bool SubspaceHandle::contains(const FieldElem& x) const {
    // reduce x against basis rows
    GfVec v = x.c;
    uint32_t q = field_->q();
    for (const auto& row : basis_rows_) {
        int lead = -1;
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j]) { lead = (int)j; break; }
        if (lead < 0) continue;
        if (v[lead]) {
            uint32_t f = (uint32_t)((uint64_t)v[lead] * inv_mod_q(row[lead], q) % q);
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = (uint32_t)((v[j] + (uint64_t)(q - f) * row[j]) % q);
        }
    }
    for (auto c : v)
        if (c) return false;
    return true;
}

std::vector<FieldElem> SubspaceHandle::enumerate() const {
    const auto& F = *field_;
    std::vector<FieldElem> out;
    size_t dims = mult_.size();
    uint64_t n = size();
    out.reserve(n);
    for (uint64_t idx = 0; idx < n; ++idx) {
        uint64_t v = idx;
        FieldElem acc = F.zero();
        for (size_t u = 0; u < dims; ++u) {
            uint32_t d = (uint32_t)(v % F.q());
            v /= F.q();
            if (d) acc = F.add(acc, F.mul_scalar(mult_[u], d));
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<FieldElem> SubspaceHandle::enumerate_star() const {
    auto all = enumerate();
    return {all.begin() + 1, all.end()};
}

std::vector<FieldElem> SubspaceHandle::coset_star(const FieldElem& shift) const {
    auto star = enumerate_star();
    for (auto& e : star) e = field_->mul(shift, e);
    return star;
}

// ---------------------------------------------------------------------------
// rank machinery

CoeffDomain CoeffDomain::base(const FieldCtx& ctx) {
    return CoeffDomain{&ctx, {ctx.one()}, true};
}

CoeffDomain CoeffDomain::subfield(const SubfieldHandle& K) {
    return CoeffDomain{&K.field(), K.k_basis(), true};
}

CoeffDomain CoeffDomain::subspace(const SubspaceHandle& E) {
    return CoeffDomain{&E.field(), E.multipliers(), false};
}

namespace {

// Incrementally tracks the GF(q)-span of generator vectors, remembering how
// each reduced row combines the originals so membership certificates come out.
class SpanTracker {
public:
    SpanTracker(uint32_t q, size_t dim) : q_(q), dim_(dim) {}

    // Is v in the span? On success fills combo over the added generators.
    bool contains(const GfVec& v, GfVec* combo_out) const {
        GfVec cur = v;
        GfVec combo(n_gens_, 0);
        for (size_t r = 0; r < rows_.size(); ++r) {
            int lead = leads_[r];
            if (cur[lead] == 0) continue;
            uint32_t f = cur[lead];  // rows normalized to lead 1
            for (size_t j = 0; j < dim_; ++j)
                cur[j] = (uint32_t)((cur[j] + (uint64_t)(q_ - f) * rows_[r][j]) % q_);
            for (size_t g = 0; g < n_gens_; ++g)
                combo[g] = (uint32_t)((combo[g] + (uint64_t)f * row_combos_[r][g]) % q_);
        }
        for (auto c : cur)
            if (c) return false;
        if (combo_out) *combo_out = std::move(combo);
        return true;
    }

    // Adds a generator; returns false if it was already in the span. Rows are
    // kept fully inter-reduced so membership needs a single pass.
    bool add_generator(const GfVec& v) {
        GfVec cur = v;
        GfVec combo(n_gens_ + 1, 0);
        combo[n_gens_] = 1;
        for (size_t r = 0; r < rows_.size(); ++r) {
            int lead = leads_[r];
            if (cur[lead] == 0) continue;
            uint32_t f = cur[lead];
            for (size_t j = 0; j < dim_; ++j)
                cur[j] = (uint32_t)((cur[j] + (uint64_t)(q_ - f) * rows_[r][j]) % q_);
            for (size_t g = 0; g < n_gens_; ++g)
                combo[g] = (uint32_t)((combo[g] + (uint64_t)(q_ - 1) * f % q_ * row_combos_[r][g]) % q_);
        }
        ++n_gens_;
        for (auto& rc : row_combos_) rc.resize(n_gens_, 0);
        int lead = -1;
        for (size_t j = 0; j < dim_; ++j)
            if (cur[j]) { lead = (int)j; break; }
        if (lead < 0) return false;
        uint32_t li = inv_mod_q(cur[lead], q_);
        for (size_t j = 0; j < dim_; ++j)
            cur[j] = (uint32_t)((uint64_t)cur[j] * li % q_);
        for (auto& c : combo) c = (uint32_t)((uint64_t)c * li % q_);
        // eliminate the new lead from existing rows
        for (size_t r = 0; r < rows_.size(); ++r) {
            uint32_t f = rows_[r][lead];
            if (!f) continue;
            for (size_t j = 0; j < dim_; ++j)
                rows_[r][j] = (uint32_t)((rows_[r][j] + (uint64_t)(q_ - f) * cur[j]) % q_);
            for (size_t g = 0; g < n_gens_; ++g)
                row_combos_[r][g] =
                    (uint32_t)((row_combos_[r][g] + (uint64_t)(q_ - f) * combo[g]) % q_);
        }
        rows_.push_back(std::move(cur));
        row_combos_.push_back(std::move(combo));
        leads_.push_back(lead);
        return true;
    }

    size_t gens() const { return n_gens_; }

private:
    uint32_t q_;
    size_t dim_;
    size_t n_gens_ = 0;
    GfMat rows_;             // normalized reduced rows
    GfMat row_combos_;       // row as combination of generators
    std::vector<int> leads_;
};

}  // namespace

RankResult rank_over(const CoeffDomain& dom, std::span<const FieldElem> elems) {
    const FieldCtx& F = *dom.F;
    size_t nm = dom.multipliers.size();
    SpanTracker tracker(F.q(), F.ell());
    RankResult res;
    res.combo.resize(elems.size());
    // generator index g = pivot_pos * nm + u
    for (size_t idx = 0; idx < elems.size(); ++idx) {
        GfVec combo;
        if (F.is_zero(elems[idx])) {
            res.combo[idx].assign(res.pivots.size(), F.zero());
            continue;
        }
        if (tracker.contains(elems[idx].c, &combo)) {
            std::vector<FieldElem> row(res.pivots.size(), F.zero());
            for (size_t p = 0; p < res.pivots.size(); ++p) {
                FieldElem coeff = F.zero();
                for (size_t u = 0; u < nm; ++u) {
                    uint32_t b = combo[p * nm + u];
                    if (b) coeff = F.add(coeff, F.mul_scalar(dom.multipliers[u], b));
                }
                row[p] = coeff;
            }
            res.combo[idx] = std::move(row);
        } else {
            res.pivots.push_back((int)idx);
            for (size_t u = 0; u < nm; ++u)
                tracker.add_generator(F.mul(dom.multipliers[u], elems[idx]).c);
        }
    }
    res.rank = (int)res.pivots.size();
    // pad combo rows to final pivot count; give pivots unit rows
    for (size_t idx = 0; idx < elems.size(); ++idx)
        res.combo[idx].resize(res.pivots.size(), F.zero());
    for (size_t p = 0; p < res.pivots.size(); ++p)
        res.combo[res.pivots[p]][p] = F.one();
    return res;
}

// ---------------------------------------------------------------------------
// dual basis

std::vector<FieldElem> dual_basis(const SubfieldHandlePtr& K,
                                  std::span<const FieldElem> basis) {
    const FieldCtx& F = K->field();
    int L = K->codegree();
    if ((int)basis.size() != L)
        throw Error(Error::Code::NotABasis, "basis size must equal [F:K]");
    FMat T(F, L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            T.at(i, j) = K->trace(F.mul(basis[i], basis[j]));
    auto inv = fmat_inverse(F, T);
    if (!inv)
        throw Error(Error::Code::NotABasis, "trace matrix singular: not a basis over K");
    std::vector<FieldElem> dual(L, F.zero());
    for (int j = 0; j < L; ++j) {
        FieldElem acc = F.zero();
        for (int i = 0; i < L; ++i)
            acc = F.add(acc, F.mul(inv->at(i, j), basis[i]));
        dual[j] = acc;
    }
    return dual;
}

// ---------------------------------------------------------------------------
// coset partition

CosetPartition::CosetPartition(FieldCtxPtr ctx, SubfieldHandlePtr K)
    : ctx_(std::move(ctx)), K_(std::move(K)) {
    uint64_t sub = 1;
    for (int i = 0; i < K_->degree(); ++i) sub *= ctx_->q();
    size_ = sub - 1;
    t_ = ctx_->group_order() / size_;
}

FieldElem CosetPartition::representative(uint64_t i) const {
    return ctx_->pow(ctx_->primitive(), i);
}

FieldElem CosetPartition::element(uint64_t i, uint64_t j) const {
    return ctx_->mul(representative(i), ctx_->pow(K_->gamma(), j));
}

std::vector<FieldElem> CosetPartition::coset(uint64_t i) const {
    std::vector<FieldElem> out;
    out.reserve(size_);
    FieldElem rep = representative(i);
    FieldElem cur = rep;
    for (uint64_t j = 0; j < size_; ++j) {
        out.push_back(cur);
        cur = ctx_->mul(cur, K_->gamma());
    }
    return out;
}

bool CosetPartition::same_coset(const FieldElem& x, const FieldElem& y) const {
    if (ctx_->is_zero(x) || ctx_->is_zero(y))
        throw Error(Error::Code::BadParameter, "cosets partition the nonzero elements");
    return K_->contains(ctx_->div(x, y));
}

// ---------------------------------------------------------------------------
// FMat

FMat::FMat(const FieldCtx& ctx, size_t r, size_t c) : rows(r), cols(c) {
    a.assign(r * c, ctx.zero());
}

FMat fmat_mul(const FieldCtx& ctx, const FMat& x, const FMat& y) {
    FMat out(ctx, x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            const FieldElem& v = x.at(i, k);
            if (ctx.is_zero(v)) continue;
            for (size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = ctx.add(out.at(i, j), ctx.mul(v, y.at(k, j)));
        }
    return out;
}

int fmat_rank(const FieldCtx& ctx, FMat m) {
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && ctx.is_zero(m.at(sel, c))) ++sel;
        if (sel == m.rows) continue;
        for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        FieldElem pi = ctx.inv(m.at(r, c));
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = ctx.mul(m.at(r, j), pi);
        for (size_t i = r + 1; i < m.rows; ++i) {
            if (ctx.is_zero(m.at(i, c))) continue;
            FieldElem f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j)
                m.at(i, j) = ctx.sub(m.at(i, j), ctx.mul(f, m.at(r, j)));
        }
        ++r;
    }
    return (int)r;
}

std::optional<FMat> fmat_inverse(const FieldCtx& ctx, FMat m) {
    if (m.rows != m.cols) return std::nullopt;
    size_t n = m.rows;
    FMat inv(ctx, n, n);
    for (size_t i = 0; i < n; ++i) inv.at(i, i) = ctx.one();
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && ctx.is_zero(m.at(sel, c))) ++sel;
        if (sel == n) return std::nullopt;
        for (size_t j = 0; j < n; ++j) {
            std::swap(m.at(sel, j), m.at(c, j));
            std::swap(inv.at(sel, j), inv.at(c, j));
        }
        FieldElem pi = ctx.inv(m.at(c, c));
        for (size_t j = 0; j < n; ++j) {
            m.at(c, j) = ctx.mul(m.at(c, j), pi);
            inv.at(c, j) = ctx.mul(inv.at(c, j), pi);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || ctx.is_zero(m.at(i, c))) continue;
            FieldElem f = m.at(i, c);
            for (size_t j = 0; j < n; ++j) {
                m.at(i, j) = ctx.sub(m.at(i, j), ctx.mul(f, m.at(c, j)));
                inv.at(i, j) = ctx.sub(inv.at(i, j), ctx.mul(f, inv.at(c, j)));
            }
        }
    }
    return inv;
}

bool fmat_is_identity(const FieldCtx& ctx, const FMat& m) {
    if (m.rows != m.cols) return false;
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) {
            if (i == j && !(m.at(i, j) == ctx.one())) return false;
            if (i != j && !ctx.is_zero(m.at(i, j))) return false;
        }
    return true;
}

bool fmat_is_zero(const FieldCtx& ctx, const FMat& m) {
    for (const auto& e : m.a)
        if (!ctx.is_zero(e)) return false;
    return true;
}

std::optional<FMat> fmat_solve(const FieldCtx& ctx, FMat m, FMat rhs) {
    if (m.rows != m.cols || rhs.rows != m.rows) return std::nullopt;
    auto inv = fmat_inverse(ctx, std::move(m));
    if (!inv) return std::nullopt;
    return fmat_mul(ctx, *inv, rhs);
}

// ---------------------------------------------------------------------------
// FPoly

FPoly FPoly::zero() { return FPoly{}; }

FPoly FPoly::constant(FieldElem c) { return FPoly{{std::move(c)}}; }

int FPoly::degree(const FieldCtx& ctx) const {
    for (int i = (int)coef.size() - 1; i >= 0; --i)
        if (!ctx.is_zero(coef[i])) return i;
    return -1;
}

FieldElem poly_eval(const FieldCtx& ctx, const FPoly& p, const FieldElem& x) {
    FieldElem acc = ctx.zero();
    for (int i = (int)p.coef.size() - 1; i >= 0; --i)
        acc = ctx.add(ctx.mul(acc, x), p.coef[i]);
    return acc;
}

FPoly poly_add(const FieldCtx& ctx, const FPoly& a, const FPoly& b) {
    FPoly r;
    r.coef.resize(std::max(a.coef.size(), b.coef.size()), ctx.zero());
    for (size_t i = 0; i < a.coef.size(); ++i) r.coef[i] = a.coef[i];
    for (size_t i = 0; i < b.coef.size(); ++i) r.coef[i] = ctx.add(r.coef[i], b.coef[i]);
    return r;
}

FPoly poly_mul(const FieldCtx& ctx, const FPoly& a, const FPoly& b) {
    if (a.coef.empty() || b.coef.empty()) return FPoly{};
    FPoly r;
    r.coef.assign(a.coef.size() + b.coef.size() - 1, ctx.zero());
    for (size_t i = 0; i < a.coef.size(); ++i) {
        if (ctx.is_zero(a.coef[i])) continue;
        for (size_t j = 0; j < b.coef.size(); ++j)
            r.coef[i + j] = ctx.add(r.coef[i + j], ctx.mul(a.coef[i], b.coef[j]));
    }
    return r;
}

FPoly poly_scale(const FieldCtx& ctx, const FieldElem& s, const FPoly& a) {
    FPoly r = a;
    for (auto& c : r.coef) c = ctx.mul(s, c);
    return r;
}

FPoly poly_compose_linear(const FieldCtx& ctx, const FPoly& p,
                          const FieldElem& s, const FieldElem& t) {
    // Horner: result = (...((p_d) * (s x + t) + p_{d-1}) ...)
    FPoly lin;
    lin.coef = {t, s};
    FPoly acc;
    for (int i = (int)p.coef.size() - 1; i >= 0; --i) {
        acc = poly_mul(ctx, acc, lin);
        acc = poly_add(ctx, acc, FPoly::constant(p.coef[i]));
    }
    return acc;
}

bool poly_equal(const FieldCtx& ctx, const FPoly& a, const FPoly& b) {
    size_t n = std::max(a.coef.size(), b.coef.size());
    for (size_t i = 0; i < n; ++i) {
        FieldElem av = i < a.coef.size() ? a.coef[i] : ctx.zero();
        FieldElem bv = i < b.coef.size() ? b.coef[i] : ctx.zero();
        if (!(av == bv)) return false;
    }
    return true;
}

}  // namespace rsrepair
