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

#include "rsrepair/rs.hpp"

#include <algorithm>

namespace rsrepair {

std::vector<FieldElem> dual_coeffs(const FieldCtx& ctx,
                                   std::span<const FieldElem> A) {
    size_t n = A.size();
    std::vector<FieldElem> ups(n, ctx.one());
    for (size_t i = 0; i < n; ++i) {
        FieldElem prod = ctx.one();
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            FieldElem d = ctx.sub(A[i], A[j]);
            if (ctx.is_zero(d))
                throw Error(Error::Code::DuplicateEvaluationPoints,
                            "evaluation points must be distinct");
            prod = ctx.mul(prod, d);
        }
        ups[i] = ctx.inv(prod);
    }
    return ups;
}

std::shared_ptr<const RSCode> RSCode::make(FieldCtxPtr F,
                                           std::vector<FieldElem> A, int k) {
    auto code = std::shared_ptr<RSCode>(new RSCode());
    int n = (int)A.size();
    if (k <= 0 || k >= n)
        throw Error(Error::Code::BadParameter, "require 0 < k < n");
    code->F_ = std::move(F);
    code->A_ = std::move(A);
    code->k_ = k;
    code->upsilon_ = dual_coeffs(*code->F_, code->A_);

    // verify: sum_i upsilon_i a_i^s a_i^j = 0 for s < n-k, j < k
    // equivalently all power sums sum_i upsilon_i a_i^m vanish for m < n-1
    const FieldCtx& ctx = *code->F_;
    std::vector<FieldElem> pw(n, ctx.one());
    for (int m = 0; m < n - 1; ++m) {
        FieldElem acc = ctx.zero();
        for (int i = 0; i < n; ++i)
            acc = ctx.add(acc, ctx.mul(code->upsilon_[i], pw[i]));
        if (!ctx.is_zero(acc))
            throw Error(Error::Code::BadParameter,
                        "dual coefficient verification failed");
        if (m + 1 < n - 1)
            for (int i = 0; i < n; ++i) pw[i] = ctx.mul(pw[i], code->A_[i]);
    }
    return code;
}

Codeword RSCode::encode(std::span<const FieldElem> message) const {
    if ((int)message.size() != k_)
        throw Error(Error::Code::WrongMessageLength,
                    "message length must equal k");
    Codeword cw;
    cw.symbols.reserve(A_.size());
    for (const auto& alpha : A_) {
        FieldElem acc = F_->zero();
        for (int i = k_ - 1; i >= 0; --i)
            acc = F_->add(F_->mul(acc, alpha), message[i]);
        cw.symbols.push_back(acc);
    }
    return cw;
}

std::vector<FieldElem> RSCode::dual_codeword(const FPoly& p) const {
    if (p.degree(*F_) >= r())
        throw Error(Error::Code::DegreeTooHigh,
                    "dual polynomial degree must be < n-k");
    std::vector<FieldElem> out;
    out.reserve(A_.size());
    for (size_t i = 0; i < A_.size(); ++i)
        out.push_back(F_->mul(upsilon_[i], poly_eval(*F_, p, A_[i])));
    return out;
}

Codeword RSCode::erasure_decode(
    const std::vector<std::optional<FieldElem>>& partial) const {
    int n = (int)A_.size();
    if ((int)partial.size() != n)
        throw Error(Error::Code::BadParameter, "partial length must equal n");
    std::vector<int> known;
    for (int i = 0; i < n; ++i)
        if (partial[i]) known.push_back(i);
    if ((int)known.size() < k_)
        throw Error(Error::Code::TooManyErasures,
                    "more than n-k erasures");

    // Lagrange interpolation through the first k known coordinates.
    const FieldCtx& ctx = *F_;
    FPoly f = FPoly::zero();
    for (int a = 0; a < k_; ++a) {
        int i = known[a];
        FPoly basis = FPoly::constant(ctx.one());
        FieldElem denom = ctx.one();
        for (int b = 0; b < k_; ++b) {
            if (b == a) continue;
            int j = known[b];
            FPoly lin;
            lin.coef = {ctx.neg(A_[j]), ctx.one()};
            basis = poly_mul(ctx, basis, lin);
            denom = ctx.mul(denom, ctx.sub(A_[i], A_[j]));
        }
        basis = poly_scale(ctx, ctx.mul(*partial[i], ctx.inv(denom)), basis);
        f = poly_add(ctx, f, basis);
    }
    Codeword cw;
    cw.symbols.reserve(n);
    for (int i = 0; i < n; ++i) cw.symbols.push_back(poly_eval(ctx, f, A_[i]));
    for (int i : known)
        if (!(cw.symbols[i] == *partial[i]))
            throw Error(Error::Code::BadParameter,
                        "partial word is not consistent with any codeword");
    return cw;
}

}  // namespace rsrepair
