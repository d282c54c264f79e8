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

#ifndef RSREPAIR_MODELS_HPP
#define RSREPAIR_MODELS_HPP

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

namespace rsrepair::models {

/**
 * Closed-form bandwidth evaluators for the scheme comparison tables and
 * tradeoff sweeps. All stored values are exact rationals; floating point
 * appears only when rendering CSV/JSON.
 */

using Rat = boost::rational<long long>;

/// One scheme at one parameter tuple. `ell_approx` rows describe schemes
/// whose sub-packetization is an asymptotic product; they carry log10(ell)
/// and an exact normalized bandwidth, but no absolute symbol count.
struct SchemePoint {
    std::string scheme;
    long long n = 0, k = 0, e = 1, d = 0, q = 2;
    long long ell = -1;                    // -1 when approximate
    double log10_ell = 0.0;
    bool ell_approx = false;
    long long a = -1, s = -1;
    std::optional<Rat> gq_symbols;         // bandwidth in GF(q) symbols
    std::optional<Rat> normalized;         // b / (d * ell)
    bool feasible = false;
    bool upper_bound = false;
    std::string notes;
};

/// e*ell*d/(d-k+e) in GF(q) symbols.
Rat msr_bound(long long n, long long k, long long e, long long d, long long ell);

/// Downloading any k full symbols: k*ell GF(q) symbols.
long long naive_repair_gq(long long k, long long ell);

/// Evaluates one comparison-table row. Scheme names:
///   e = 1: full_length, ye_barg_orig, tamo_orig, one_coset, two_cosets,
///          multi_coset_1, multi_coset_2, msr
///   e >= 2: mardia1, mardia2, ye_multi, one_coset_multi, multi_coset_multi,
///           msr
/// Infeasible tuples come back flagged with a note, never as a bare number.
SchemePoint table_row(const std::string& scheme, long long n, long long k,
                      long long e, long long d, long long q, long long ell,
                      long long a, long long s);

/// All scheme points for ell in [ell_lo, ell_hi] (plus approximate-ell rows
/// of the product constructions, which choose their own ell). When a scheme
/// family has no feasible tuple at some ell, one flagged row explains why.
std::vector<SchemePoint> sweep(long long n, long long k, long long e,
                               long long q, long long ell_lo, long long ell_hi,
                               long long d = -1);

std::string sweep_to_csv(const std::vector<SchemePoint>& points);
std::string sweep_to_json(const std::vector<SchemePoint>& points);

}  // namespace rsrepair::models

#endif  // RSREPAIR_MODELS_HPP
