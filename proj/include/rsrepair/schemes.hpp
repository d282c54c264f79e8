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

#ifndef RSREPAIR_SCHEMES_HPP
#define RSREPAIR_SCHEMES_HPP

#include <functional>
#include <optional>
#include <vector>

#include "rsrepair/engine.hpp"

namespace rsrepair {

/**
 * Constructors for the repair schemes over cosets of the multiplicative
 * group: single-erasure schemes in one and two cosets, the multi-coset
 * extension of an existing scheme, and the multi-erasure one-coset schemes
 * with their coefficient solvers.
 */

/// Parameters shared by the one-coset constructions: subfield E = GF(q^a),
/// coset shift beta^m, n evaluation points inside that coset, dimension k,
/// and the W-subspace dimension s (taken as a-1 where a construction fixes it).
struct OneCosetParams {
    FieldCtxPtr F;
    SubfieldHandlePtr E;
    int64_t m = 0;
    std::vector<FieldElem> A;
    int k = 0;
    int s = 0;
};

/// Default point selection: the first n elements of the coset beta^m E* in
/// the enumeration beta^m gamma^j. Throws FailedPointNotInCoset if a caller
/// supplied point falls outside the coset (points are checked on use).
OneCosetParams make_one_coset_params(const FieldCtxPtr& F, int a, int64_t m,
                                     int n, int k, int s);

/// s = a-1 scheme: trace quotient polynomials lifted by a basis of F over E.
/// Helpers all have rank exactly 1 before lifting; bandwidth equals
/// (ell/a)(n-1) base-field symbols.
RepairScheme construct_I(const OneCosetParams& params, int failed_idx);

/// General s < a scheme with an s-dimensional subspace W in E; bandwidth at
/// most (ell/a)(n-1)(a-s) base-field symbols.
RepairScheme construct_II(const OneCosetParams& params, int failed_idx);

/// Evaluation points split evenly over beta^m1 E* and beta^m2 E* with
/// m2 - m1 = q^s; repair over E. Same-coset helpers have rank ell/a, the
/// others rank 1; bandwidth is exactly (n-1)(ell+a)/2 - (ell-a)/2.
RepairScheme construct_two_coset(const FieldCtxPtr& F, int a, int64_t m1,
                                 int64_t m2, int n, int k, int failed_idx);

/// An existing single-erasure scheme on an RS(n', k') code over a subfield
/// F' <= F, exposed as polynomial factories plus measured per-failure
/// bandwidth (in GF(q) symbols). The original code need not be constructible
/// as an actual code; only the polynomial properties are used.
struct OriginalSchemeAdapter {
    FieldCtxPtr F;                      // field the elements live in
    SubfieldHandlePtr Fprime;           // F' as a subfield of F
    std::vector<FieldElem> Aprime;      // n' points, independent over GF(q)
    int r = 0;                          // n' - k'
    std::function<std::vector<FPoly>(int)> polys_for;   // ell' polynomials
    std::vector<int64_t> b_measured;    // per failure index, GF(q) symbols
};

/// Repair polynomials beta^c x^s with the failure's r-ary digit of c zero.
/// beta is the generator of F' (primitive when F' is the whole field).
OriginalSchemeAdapter ye_barg_adapter(const FieldCtxPtr& F,
                                      const SubfieldHandlePtr& Fprime, int r,
                                      int nprime);

/// The extension of an original scheme to evaluation points spread over the
/// cosets alpha_i E*. Uses the subfield E = GF(q^a) when gcd(a, ell') = 1 and
/// the spanned subspace of a basis of F over F' otherwise.
struct MultiCosetCode {
    RSCodePtr code;
    OriginalSchemeAdapter original;
    SubfieldHandlePtr E;                      // subfield mode
    std::optional<SubspaceHandle> E_subspace; // subspace mode
    int a = 0;
    bool subspace_mode = false;
    std::vector<FieldElem> star;              // E* in enumeration order

    int coset_of(int position) const { return position / (int)star.size(); }
    /// a b'_i (q^a - 1) + (q^a - 2) ell, with the adapter's measured b'_i.
    int64_t closed_form_gq(int fail_coset) const;
    RepairScheme scheme_for(int failed_position) const;
};

MultiCosetCode extend_multi_coset(const OriginalSchemeAdapter& original, int a);

/// Checks the rank-preservation condition of the extension for one failure:
/// for every original point and every member of its coset, the rank of the
/// new polynomial values over E equals the original rank over GF(q).
bool verify_extension_ranks(const MultiCosetCode& mcc, int failed_position);

/// Multi-erasure one-coset scheme for s = a-1, with the delta coefficients
/// found by lexicographic search (delta_1 = 1). The search accepts the first
/// tuple that makes S invertible and meets the closed-form bandwidth
/// (n-e)e - e(e-1)(q-1)/2 per ell/a; if no tuple meets the bandwidth, the
/// first full-rank tuple is used and the closed form downgraded to a bound.
RepairScheme construct_III(const OneCosetParams& params,
                           const std::vector<int>& failed);

/// Multi-erasure one-coset scheme for s < a. delta_i are solved sequentially
/// from the block-elimination linear system so that the repair matrix has
/// identity diagonal blocks under the mandated dual basis; falls back to an
/// exhaustive scan if the system is degenerate.
RepairScheme construct_IV(const OneCosetParams& params,
                          const std::vector<int>& failed);

/// Baseline scheme whose helpers transmit everything: p_ij(x) =
/// mu_j prod_{v != i} (x - alpha_v) over the failed set.
RepairScheme naive_scheme(const RSCodePtr& code, const std::vector<int>& failed);

/// Erasure layout h_1 >= h_2 >= ... >= h_e from per-coset erasure counts:
/// h_i is the number of cosets still occupied after removing i-1 rounds.
std::vector<int> erasure_layout_from_counts(const std::vector<int>& counts, int e);

/// Groups failed positions of a code by coset of E* and derives the layout.
std::vector<int> erasure_layout(const RSCode& code, const SubfieldHandlePtr& E,
                                const std::vector<int>& failed);

/// Average repair bandwidth of the multi-erasure multi-coset scheme, in
/// GF(q) symbols per unit of ell (exact rational as numerator/denominator).
struct RatValue {
    long long num = 0;
    long long den = 1;
    double value() const { return (double)num / (double)den; }
};
RatValue multi_erasure_multi_coset_bandwidth_per_ell(long long n, long long k,
                                                     long long e, long long d,
                                                     long long a, long long q,
                                                     const std::vector<int>& h);

}  // namespace rsrepair

#endif  // RSREPAIR_SCHEMES_HPP
