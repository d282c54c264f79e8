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

#ifndef RSREPAIR_RS_HPP
#define RSREPAIR_RS_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rsrepair/gf.hpp"

namespace rsrepair {

struct Codeword {
    std::vector<FieldElem> symbols;
};

/// Generalized Reed-Solomon code: evaluation points A, dimension k, and the
/// dual-code column multipliers upsilon_i = prod_{j != i} (a_i - a_j)^(-1).
/// The multipliers are verified at construction: (upsilon_i a_i^s)_i must be
/// orthogonal to every generator row for s = 0..n-k-1.
class RSCode {
public:
    static std::shared_ptr<const RSCode> make(FieldCtxPtr F,
                                              std::vector<FieldElem> A, int k);

    const FieldCtx& ctx() const { return *F_; }
    FieldCtxPtr ctx_ptr() const { return F_; }
    int n() const { return (int)A_.size(); }
    int k() const { return k_; }
    int r() const { return (int)A_.size() - k_; }
    const std::vector<FieldElem>& points() const { return A_; }
    const std::vector<FieldElem>& upsilon() const { return upsilon_; }

    Codeword encode(std::span<const FieldElem> message) const;
    /// (upsilon_i p(a_i))_i for deg p < n-k; orthogonal to every codeword.
    std::vector<FieldElem> dual_codeword(const FPoly& p) const;
    /// Unique completion of a partial codeword with at most n-k erasures.
    Codeword erasure_decode(const std::vector<std::optional<FieldElem>>& partial) const;

private:
    RSCode() = default;
    FieldCtxPtr F_;
    std::vector<FieldElem> A_;
    int k_ = 0;
    std::vector<FieldElem> upsilon_;
};

using RSCodePtr = std::shared_ptr<const RSCode>;

/// upsilon_i = prod_{j != i} (a_i - a_j)^(-1); throws on duplicate points.
std::vector<FieldElem> dual_coeffs(const FieldCtx& ctx,
                                   std::span<const FieldElem> A);

}  // namespace rsrepair

#endif  // RSREPAIR_RS_HPP
