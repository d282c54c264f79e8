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

#ifndef RSREPAIR_ENGINE_HPP
#define RSREPAIR_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsrepair/gf.hpp"
#include "rsrepair/rs.hpp"

namespace rsrepair {

/**
 * Generic execution of trace-based repair schemes over a base subfield K:
 * full-rank verification, compressed helper transcripts, bandwidth
 * measurement, exact repair by solving the block trace system, and
 * conversion to the query-based formulation.
 */

/// A repair scheme: e failed positions, base subfield K <= F, and an
/// e x L array of polynomials of degree < n-k, L = [F:K]. `xi` is the basis
/// of F over K used to assemble the repair matrix and to recombine failed
/// symbols (the power basis unless a construction mandates otherwise).
struct RepairScheme {
    RSCodePtr code;
    std::vector<int> failed;                  // ascending positions, size e
    SubfieldHandlePtr K;
    std::vector<std::vector<FPoly>> polys;    // e x L
    std::vector<int> helpers;                 // ascending, disjoint from failed
    std::vector<FieldElem> xi;                // L basis elements of F over K

    std::string construction;                 // "I", "II", "two_coset", ...
    std::optional<int64_t> closed_form_gq;    // predicted GF(q)-symbol total
    bool closed_form_exact = false;           // equality vs upper bound
    std::map<std::string, int64_t> params;    // replayable build parameters

    int e() const { return (int)failed.size(); }
    int L() const { return (int)xi.size(); }
};

/// Block matrix S with S_it[j][m] = tr_{F/K}(xi_m p_ij(alpha_t)); the
/// assembled eL x eL matrix stacks the blocks over the failed positions.
struct RepairMatrixS {
    int e = 0, L = 0;
    std::vector<std::vector<FMat>> blocks;    // e x e blocks of L x L
    FMat assembled;                           // eL x eL over K
};

struct HelperTranscript {
    int helper = -1;                               // position in the code
    std::vector<std::pair<int, int>> pivots;       // (i, j) into e x L
    std::vector<FieldElem> symbols;                // K-symbols, one per pivot
    std::vector<std::vector<FieldElem>> recon;     // eL x |pivots| over K
};

struct BandwidthReport {
    std::vector<int> helper_ranks;            // rank over K, aligned to helpers
    int64_t total_K = 0;                      // sum of helper ranks
    int64_t total_gq = 0;                     // total_K * [K:GF(q)]
    double bits = 0.0;                        // total_gq * log2(q)
    std::optional<int64_t> closed_form_gq;
    bool closed_form_exact = false;
};

/// Query-based representation: per-helper query sets plus the recombination
/// basis and coefficients extracted from the inverted repair matrix. Executes
/// independently of the dual-code path.
struct QueryScheme {
    RSCodePtr code;
    std::vector<int> failed;
    std::vector<int> helpers;
    SubfieldHandlePtr K;
    std::vector<std::vector<FieldElem>> queries;   // per helper, a K-span basis
    std::vector<FieldElem> recomb;                 // L recombination elements
    // beta[i][m][t][p]: coefficient of reply p from helper t in lambda_{im}
    std::vector<std::vector<std::vector<std::vector<FieldElem>>>> beta;
    int64_t bandwidth_K = 0;
};

/// Structural checks: degrees, index ranges, xi size, and that polynomials
/// vanish at positions that are neither helpers nor failed.
void validate_scheme(const RepairScheme& s);

/// Values upsilon_t p_ij(alpha_t) flattened in (i, j) order.
std::vector<FieldElem> scheme_dual_values(const RepairScheme& s, int t);
/// Values p_ij(alpha_t) flattened in (i, j) order (no upsilon factor).
std::vector<FieldElem> scheme_poly_values(const RepairScheme& s, int t);

/// Builds S from the scheme. With `include_upsilon` the dual-codeword
/// constants are folded in (the form the repair solve uses); without, the
/// matrix matches the definitional form used for rank arguments. The two
/// agree on invertibility.
RepairMatrixS build_repair_matrix(const RepairScheme& s, bool include_upsilon);

/// e = 1: rank_K of the polynomial values at the failed point equals L.
/// e > 1: S invertible over K. The criteria agree for e = 1.
bool check_full_rank(const RepairScheme& s);

/// Per-helper ranks over K plus totals; throws FullRankViolated if the
/// scheme cannot repair.
BandwidthReport measure_bandwidth(const RepairScheme& s);

HelperTranscript helper_transcript(const RepairScheme& s, const Codeword& cw,
                                   int t);

/// Reconstructs all eL traces per helper, solves S X = RHS over K, and
/// recombines the failed symbols exactly.
std::vector<FieldElem> repair(const RepairScheme& s,
                              const std::vector<HelperTranscript>& transcripts);

/// Convenience: transcripts for every helper, then repair.
std::vector<FieldElem> repair_from_codeword(const RepairScheme& s,
                                            const Codeword& cw);

QueryScheme to_query_scheme(const RepairScheme& s);

std::vector<FieldElem> run_query_scheme(const QueryScheme& qs,
                                        const Codeword& cw);

/// rank([S_1t; ...; S_et]) == rank_K({p_ij(alpha_t)}); a property hook that
/// is always true, with both sides computed independently.
bool stacked_rank_check(const RepairScheme& s, int t);

}  // namespace rsrepair

#endif  // RSREPAIR_ENGINE_HPP
