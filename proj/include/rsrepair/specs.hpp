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

#ifndef RSREPAIR_SPECS_HPP
#define RSREPAIR_SPECS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsrepair/engine.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

/// Code serialization: {"field": "gf(q,ell,poly=HEX)", "A": [hex...], "k": k}.
nlohmann::json code_to_json(const RSCode& code);
RSCodePtr code_from_json(const nlohmann::json& j);

nlohmann::json codeword_to_json(const RSCode& code, const Codeword& cw);
Codeword codeword_from_json(const RSCode& code, const nlohmann::json& j);

/// Transcript wire format: {"helper": t, "pivots": [[i,j]...],
/// "symbols": [hex...]} with symbols packed in the compact GF(q^a)
/// representation of the scheme's base subfield.
nlohmann::json transcript_to_json(const RepairScheme& s, const HelperTranscript& tr);

/// Canonical replayable scheme spec for a built instance.
nlohmann::json scheme_spec_json(const RepairScheme& s);

/// A parsed scheme spec: the code it describes plus an instance builder for
/// a chosen failed set. `default_failed` is present when the spec pinned one.
struct SchemeFactory {
    std::string construction;
    FieldCtxPtr F;
    RSCodePtr code;
    int e = 1;
    std::function<RepairScheme(const std::vector<int>&)> build;
    std::optional<std::vector<int>> default_failed;
    nlohmann::json spec;
};

/// Accepts {"construction": "I"|"II"|"two_coset"|"multi_coset_1"|"III"|"IV",
/// "field": ..., params...}; throws SpecError on malformed input.
SchemeFactory scheme_factory_from_json(const nlohmann::json& spec);

}  // namespace rsrepair

#endif  // RSREPAIR_SPECS_HPP
