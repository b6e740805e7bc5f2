#pragma once

#include <string>

#include <json.hpp>

#include "multitrans/chaos.hpp"
#include "multitrans/classify.hpp"
#include "multitrans/index_set.hpp"
#include "multitrans/systems.hpp"
#include "multitrans/verdict.hpp"
#include "multitrans/verify.hpp"

namespace mtv {

using Json = nlohmann::ordered_json;

/// Parses text as JSON; ParseError on malformed input.
Json parse_json(const std::string& text);

/// {"kind":"finite_map","table":[...]}, {"kind":"sft","vertices":n,"edges":[[u,v],...]} or
/// {"kind":"spacing_shift","gaps":[...],"horizon":L}. Missing or mistyped fields raise
/// ParseError; structurally invalid systems raise InvalidSystem.
DynSystem system_from_json(const Json& j);
Json to_json(const DynSystem& sys);

IndexSet index_set_from_json(const Json& j);
Json to_json(const IndexSet& s);

Json to_json(const Verdict& v);
Json to_json(const PropertyRecord& p);
Json to_json(const PairEvidence& e);
Json to_json(const SensitivitySearch& s);
Json to_json(const CaseReport& c);
Json to_json(const AgreementReport& r);
Json to_json(const SeparationCandidate& c);

/// One row per case: system,parameter,side_l,side_r,agreement,scope.
std::string to_csv(const AgreementReport& r);

/// "0,1,1" -> {0,1,1}. Empty text gives an empty word.
Word parse_word(const std::string& text);

}  // namespace mtv
