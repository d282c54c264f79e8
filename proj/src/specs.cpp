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

#include "rsrepair/specs.hpp"

namespace rsrepair {

namespace {

int64_t get_int(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw Error(Error::Code::SpecError, "missing integer field: " + key);
    return j[key].get<int64_t>();
}

int64_t get_int_or(const nlohmann::json& j, const std::string& key, int64_t dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer())
        throw Error(Error::Code::SpecError, "field must be an integer: " + key);
    return j[key].get<int64_t>();
}

std::string get_str(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_string())
        throw Error(Error::Code::SpecError, "missing string field: " + key);
    return j[key].get<std::string>();
}

}  // namespace

nlohmann::json code_to_json(const RSCode& code) {
    nlohmann::json j;
    j["field"] = code.ctx().spec_string();
    j["k"] = code.k();
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : code.points()) pts.push_back(code.ctx().elem_to_hex(p));
    j["A"] = pts;
    return j;
}

RSCodePtr code_from_json(const nlohmann::json& j) {
    auto F = field_from_spec(get_str(j, "field"));
    if (!j.contains("A") || !j["A"].is_array())
        throw Error(Error::Code::SpecError, "missing point array A");
    std::vector<FieldElem> A;
    for (const auto& h : j["A"]) A.push_back(F->elem_from_hex(h.get<std::string>()));
    return RSCode::make(F, std::move(A), (int)get_int(j, "k"));
}

nlohmann::json codeword_to_json(const RSCode& code, const Codeword& cw) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : cw.symbols) arr.push_back(code.ctx().elem_to_hex(s));
    return arr;
}

Codeword codeword_from_json(const RSCode& code, const nlohmann::json& j) {
    Codeword cw;
    for (const auto& h : j) cw.symbols.push_back(code.ctx().elem_from_hex(h.get<std::string>()));
    if ((int)cw.symbols.size() != code.n())
        throw Error(Error::Code::SpecError, "codeword length mismatch");
    return cw;
}

nlohmann::json transcript_to_json(const RepairScheme& s, const HelperTranscript& tr) {
    nlohmann::json j;
    j["helper"] = tr.helper;
    nlohmann::json piv = nlohmann::json::array();
    for (auto [i, jj] : tr.pivots) piv.push_back(nlohmann::json::array({i, jj}));
    j["pivots"] = piv;
    nlohmann::json syms = nlohmann::json::array();
    for (const auto& sym : tr.symbols) {
        FieldElem compact = s.K->project(sym);
        syms.push_back(s.K->sub()->elem_to_hex(compact));
    }
    j["symbols"] = syms;
    return j;
}

nlohmann::json scheme_spec_json(const RepairScheme& s) {
    nlohmann::json j;
    j["construction"] = s.construction;
    j["field"] = s.code->ctx().spec_string();
    for (const auto& [key, val] : s.params) j[key] = val;
    j["failed"] = s.failed;
    return j;
}

SchemeFactory scheme_factory_from_json(const nlohmann::json& spec) {
    if (!spec.is_object())
        throw Error(Error::Code::SpecError, "scheme spec must be a JSON object");
    SchemeFactory f;
    f.construction = get_str(spec, "construction");
    f.F = field_from_spec(get_str(spec, "field"));
    f.spec = spec;
    if (spec.contains("failed")) {
        if (!spec["failed"].is_array())
            throw Error(Error::Code::SpecError, "failed must be an array");
        std::vector<int> fl;
        for (const auto& v : spec["failed"]) fl.push_back(v.get<int>());
        f.default_failed = fl;
    }

    const std::string& c = f.construction;
    if (c == "I" || c == "II" || c == "III" || c == "IV") {
        int a = (int)get_int(spec, "a");
        int n = (int)get_int(spec, "n");
        int k = (int)get_int(spec, "k");
        int64_t m = get_int_or(spec, "m", 0);
        int s = (int)get_int_or(spec, "s", a - 1);
        auto params = make_one_coset_params(f.F, a, m, n, k, s);
        f.code = RSCode::make(f.F, params.A, k);
        f.e = (int)get_int_or(spec, "e", (c == "III" || c == "IV") ? 2 : 1);
        if (c == "I")
            f.build = [params](const std::vector<int>& fl) {
                return construct_I(params, fl.at(0));
            };
        else if (c == "II")
            f.build = [params](const std::vector<int>& fl) {
                return construct_II(params, fl.at(0));
            };
        else if (c == "III")
            f.build = [params](const std::vector<int>& fl) {
                return construct_III(params, fl);
            };
        else
            f.build = [params](const std::vector<int>& fl) {
                return construct_IV(params, fl);
            };
        if (c == "I" || c == "II") f.e = 1;
        return f;
    }
    if (c == "two_coset") {
        int a = (int)get_int(spec, "a");
        int n = (int)get_int(spec, "n");
        int k = (int)get_int(spec, "k");
        int64_t m1 = get_int_or(spec, "m1", 0);
        int64_t m2 = get_int_or(spec, "m2", 1);
        auto F = f.F;
        f.build = [F, a, m1, m2, n, k](const std::vector<int>& fl) {
            return construct_two_coset(F, a, m1, m2, n, k, fl.at(0));
        };
        f.code = f.build({0}).code;
        f.e = 1;
        return f;
    }
    if (c == "multi_coset_1") {
        int r = (int)get_int(spec, "r");
        int nprime = (int)get_int(spec, "nprime");
        int a = (int)get_int(spec, "a");
        int lprime = 1;
        for (int i = 0; i < nprime; ++i) lprime *= r;
        if (f.F->ell() != a * lprime)
            throw Error(Error::Code::SpecError,
                        "field degree must equal a * r^nprime");
        auto adapter = ye_barg_adapter(f.F, f.F->subfield(lprime), r, nprime);
        auto mcc = std::make_shared<MultiCosetCode>(extend_multi_coset(adapter, a));
        f.code = mcc->code;
        f.e = 1;
        f.build = [mcc](const std::vector<int>& fl) {
            return mcc->scheme_for(fl.at(0));
        };
        return f;
    }
    throw Error(Error::Code::SpecError, "unknown construction: " + c);
}

}  // namespace rsrepair
