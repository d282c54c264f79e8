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

#ifndef RSREPAIR_GF_HPP
#define RSREPAIR_GF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsrepair {

/**
 * Exact arithmetic for prime fields GF(q), extensions GF(q^ell), subfield
 * towers, traces, dual bases, rank computations over subfields/subspaces,
 * and coset partitions of the multiplicative group.
 *
 * Elements are dense coefficient vectors over GF(q) in the power basis of
 * the modulus root, so large extension degrees (ell = 48) work without
 * exponential tables. All contexts and handles are immutable after
 * construction and safe to share across threads; operations are pure.
 */

class Error : public std::runtime_error {
public:
    enum class Code {
        NonPrimeBase,
        ReducibleModulus,
        PrimitiveSearchFailed,
        SubfieldNotInTower,
        NotABasis,
        DependentGenerators,
        DuplicateEvaluationPoints,
        WrongMessageLength,
        DegreeTooHigh,
        TooManyErasures,
        FullRankViolated,
        NotAHelper,
        SingularSystem,
        MissingTranscript,
        SubspaceTooLarge,
        FailedPointNotInCoset,
        BadCosetGap,
        UnbalancedSplit,
        DependentOriginalPoints,
        CosetCollision,
        DependentEvaluationPoints,
        DeltaSearchExhausted,
        ErasuresSpanCosets,
        NoDeltaSolution,
        BadParameter,
        SpecError,
    };

    Error(Code c, const std::string& msg);
    Code code() const { return code_; }
    static const char* name(Code c);

private:
    Code code_;
};

/// One element of GF(q^ell): ell residues mod q, little-endian in the power
/// basis of the modulus. Length/ranges are owned by the FieldCtx invariants.
struct FieldElem {
    std::vector<uint32_t> c;
    bool operator==(const FieldElem&) const = default;
};

using GfVec = std::vector<uint32_t>;   // dense vector over GF(q)
using GfMat = std::vector<GfVec>;      // row-major matrix over GF(q)

class FieldCtx;
class SubfieldHandle;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;
using SubfieldHandlePtr = std::shared_ptr<const SubfieldHandle>;

/// GF(q^ell) with a verified-irreducible modulus and a verified primitive
/// element. Base q must be prime (prime powers are out of scope).
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    /// Builds a field context. If no modulus is given, a table of known
    /// primitive polynomials is consulted first and otherwise the
    /// lexicographically smallest irreducible (by coefficient encoding) is
    /// used. Primitivity is verified against the prime factorization of
    /// q^ell - 1.
    static FieldCtxPtr build(uint32_t q, int ell,
                             std::optional<GfVec> modulus = std::nullopt);

    uint32_t q() const { return q_; }
    int ell() const { return ell_; }
    const GfVec& modulus() const { return modulus_; }
    const FieldElem& primitive() const { return primitive_; }
    /// q^ell - 1 (fits in 64 bits by construction).
    uint64_t group_order() const { return order_; }

    FieldElem zero() const;
    FieldElem one() const;
    /// The modulus root x as an element (reduces mod the modulus for ell=1).
    FieldElem gen_x() const;
    FieldElem from_coeffs(GfVec coeffs) const;
    /// Element whose coefficient vector is the base-q expansion of idx.
    FieldElem from_index(uint64_t idx) const;
    uint64_t to_index(const FieldElem& a) const;

    bool is_zero(const FieldElem& a) const;
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul_scalar(const FieldElem& a, uint32_t s) const;
    FieldElem inv(const FieldElem& a) const;
    FieldElem div(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(const FieldElem& a, uint64_t e) const;
    /// x -> x^(q^s), 0 <= s <= ell. Additive and multiplicative homomorphism.
    FieldElem frobenius(const FieldElem& a, int s) const;
    uint64_t mult_order(const FieldElem& a) const;

    /// Registered subfield GF(q^a) <= F; cached per degree. Degree 1 is the
    /// base field GF(q), degree ell the field itself.
    SubfieldHandlePtr subfield(int a) const;

    /// `gf(q,ell[,poly=HEX])` with HEX the base-q packed modulus coefficients.
    std::string spec_string() const;
    std::string elem_to_hex(const FieldElem& a) const;
    FieldElem elem_from_hex(const std::string& hex) const;

private:
    FieldCtx() = default;
    void init_tables();

    uint32_t q_ = 0;
    int ell_ = 0;
    GfVec modulus_;              // ell+1 coefficients, monic
    FieldElem primitive_;
    uint64_t order_ = 0;         // q^ell - 1
    GfMat red_;                  // x^(ell+i) mod modulus, i in [0, ell-1)
    GfMat frob_;                 // ell x ell matrix of x -> x^q
    mutable std::mutex sub_mu_;
    mutable std::map<int, SubfieldHandlePtr> subs_;
};

/// A subfield GF(q^a) <= GF(q^ell) with an explicit embedding of a compact
/// GF(q^a) representation (the minimal polynomial of gamma = beta^t,
/// t = (q^ell-1)/(q^a-1)), membership test, and the trace map from F.
class SubfieldHandle {
public:
    const FieldCtx& field() const { return *field_; }
    FieldCtxPtr field_ptr() const { return field_; }
    /// Compact arithmetic context for GF(q^a) itself.
    FieldCtxPtr sub() const { return sub_; }
    int degree() const { return a_; }
    /// [F:K] = ell/a.
    int codegree() const { return L_; }
    /// Multiplicative generator of the embedded subfield, beta^t.
    const FieldElem& gamma() const { return gamma_; }

    /// Field homomorphism GF(q^a) -> F.
    FieldElem embed(const FieldElem& sub_elem) const;
    /// Inverse of embed on members; throws SubfieldNotInTower otherwise.
    FieldElem project(const FieldElem& f_elem) const;
    bool contains(const FieldElem& f_elem) const;

    /// tr_{F/K}(x) = sum of x^(q^(a i)); result lies in the embedded subfield.
    FieldElem trace(const FieldElem& x) const;

    /// Power basis {1, x, ..., x^(L-1)} of F over K.
    std::vector<FieldElem> power_basis() const;
    /// The a embedded elements {1, gamma, ..., gamma^(a-1)}: a GF(q)-basis of K.
    const std::vector<FieldElem>& k_basis() const { return kbasis_; }

    /// Deterministic enumeration of the embedded subfield: 0, then gamma^j.
    std::vector<FieldElem> enumerate() const;

private:
    friend class FieldCtx;
    FieldCtxPtr field_;
    FieldCtxPtr sub_;
    int a_ = 0, L_ = 0;
    FieldElem gamma_;
    GfMat embed_;                // ell x a
    GfMat proj_;                 // a x ell, proj * embed = I
    GfMat trace_mat_;            // ell x ell over GF(q)
    std::vector<FieldElem> kbasis_;
};

/// A GF(q)-subspace (or subfield-coefficient span) of F used where the
/// coefficient domain is not a field. Supports membership, enumeration of
/// the span and its nonzero part, and multiplicative coset shifts.
class SubspaceHandle {
public:
    const FieldCtx& field() const { return *field_; }
    /// Generators as given; independent over the designated subfield.
    const std::vector<FieldElem>& gens() const { return gens_; }
    /// GF(q)-basis of the span (coefficient subfield basis times gens).
    const std::vector<FieldElem>& multipliers() const { return mult_; }
    int dim_over_base() const { return static_cast<int>(mult_.size()); }
    uint64_t size() const;

    bool contains(const FieldElem& x) const;
    std::vector<FieldElem> enumerate() const;
    /// Nonzero part of the span ("E*") in deterministic coefficient order.
    std::vector<FieldElem> enumerate_star() const;
    /// gamma * E* (a coset shift of the punctured span).
    std::vector<FieldElem> coset_star(const FieldElem& shift) const;

private:
    friend SubspaceHandle subspace_span(const FieldCtxPtr&, const SubfieldHandlePtr&,
                                        std::vector<FieldElem>);
    FieldCtxPtr field_;
    std::vector<FieldElem> gens_;
    std::vector<FieldElem> mult_;
    GfMat basis_rows_;           // reduced rows spanning the subspace
};

/// Span of `gens` with coefficients in the subfield `over` (degree 1 = GF(q)).
/// Throws DependentGenerators if the generators are dependent over `over`.
SubspaceHandle subspace_span(const FieldCtxPtr& ctx, const SubfieldHandlePtr& over,
                             std::vector<FieldElem> gens);

/// Coefficient domain for rank computations: the GF(q)-span of `multipliers`
/// (a subfield K's GF(q)-basis, a subspace basis, or {1} for GF(q) itself).
struct CoeffDomain {
    const FieldCtx* F = nullptr;
    std::vector<FieldElem> multipliers;
    bool is_field = false;

    static CoeffDomain base(const FieldCtx& ctx);
    static CoeffDomain subfield(const SubfieldHandle& K);
    static CoeffDomain subspace(const SubspaceHandle& E);
};

/// Result of rank_over: greedy ascending-index pivots (the first maximal
/// independent subset) plus, for every input element, its K-coefficient
/// expansion over the pivots (pivots expand to unit rows).
struct RankResult {
    int rank = 0;
    std::vector<int> pivots;
    std::vector<std::vector<FieldElem>> combo;   // n_elems x n_pivots, entries in K
};

RankResult rank_over(const CoeffDomain& dom, std::span<const FieldElem> elems);

/// A basis of F over a subfield K, with an optional trace-biorthogonal dual.
struct Basis {
    std::vector<FieldElem> elems;
    SubfieldHandlePtr over;
    std::optional<std::vector<FieldElem>> dual;
};

/// Dual basis {mu_j} with tr_{F/K}(b_i mu_j) = [i == j]. The input must have
/// full rank [F:K] over K; throws NotABasis otherwise.
std::vector<FieldElem> dual_basis(const SubfieldHandlePtr& K,
                                  std::span<const FieldElem> basis);

/// Partition of F* into t = (q^ell-1)/(q^a-1) multiplicative cosets
/// beta^i K*, i = 0..t-1, following the enumeration K* = {beta^(t j)}.
/// Cosets are materialized lazily; t can be astronomically large.
class CosetPartition {
public:
    CosetPartition(FieldCtxPtr ctx, SubfieldHandlePtr K);
    uint64_t count() const { return t_; }
    uint64_t coset_size() const { return size_; }
    FieldElem representative(uint64_t i) const;   // beta^i
    FieldElem element(uint64_t i, uint64_t j) const;  // beta^i gamma^j
    std::vector<FieldElem> coset(uint64_t i) const;
    /// Whether two nonzero elements lie in the same coset (x/y in K*).
    bool same_coset(const FieldElem& x, const FieldElem& y) const;

private:
    FieldCtxPtr ctx_;
    SubfieldHandlePtr K_;
    uint64_t t_ = 0, size_ = 0;
};

/// Dense matrix over F with Gaussian-elimination helpers. Entries whose
/// values lie in a subfield stay in that subfield under elimination.
struct FMat {
    size_t rows = 0, cols = 0;
    std::vector<FieldElem> a;

    FMat() = default;
    FMat(const FieldCtx& ctx, size_t r, size_t c);
    FieldElem& at(size_t r, size_t c) { return a[r * cols + c]; }
    const FieldElem& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

FMat fmat_mul(const FieldCtx& ctx, const FMat& x, const FMat& y);
int fmat_rank(const FieldCtx& ctx, FMat m);
std::optional<FMat> fmat_inverse(const FieldCtx& ctx, FMat m);
bool fmat_is_identity(const FieldCtx& ctx, const FMat& m);
bool fmat_is_zero(const FieldCtx& ctx, const FMat& m);
/// Solves m * x = rhs (rhs may have several columns); nullopt if singular.
std::optional<FMat> fmat_solve(const FieldCtx& ctx, FMat m, FMat rhs);

/// Dense polynomial over F, little-endian coefficients.
struct FPoly {
    std::vector<FieldElem> coef;

    static FPoly zero();
    static FPoly constant(FieldElem c);
    int degree(const FieldCtx& ctx) const;   // -1 for the zero polynomial
};

FieldElem poly_eval(const FieldCtx& ctx, const FPoly& p, const FieldElem& x);
FPoly poly_add(const FieldCtx& ctx, const FPoly& a, const FPoly& b);
FPoly poly_mul(const FieldCtx& ctx, const FPoly& a, const FPoly& b);
FPoly poly_scale(const FieldCtx& ctx, const FieldElem& s, const FPoly& a);
/// P(s x + t).
FPoly poly_compose_linear(const FieldCtx& ctx, const FPoly& p,
                          const FieldElem& s, const FieldElem& t);
bool poly_equal(const FieldCtx& ctx, const FPoly& a, const FPoly& b);

/// Parses `gf(q,ell[,poly=HEX])`.
FieldCtxPtr field_from_spec(const std::string& spec);

namespace gfq {
/// Row-reduce over GF(q); returns rank. Rows are modified in place.
int rref(uint32_t q, GfMat& m, std::vector<int>* pivot_cols = nullptr);
}  // namespace gfq

}  // namespace rsrepair

#endif  // RSREPAIR_GF_HPP
