// Canonical recursive JSON form of biworlds. Level is inferred from nesting:
//   level 0:    {"obj": ["p"]}
//   level k+1:  {"obj": ["p"], "agents": {"a": {"poss": [...], "imp": [...]}}}
// Lists are sorted canonically. The parser validates the union and
// intersection invariants and reports which one failed.
#pragma once

#include <json.hpp>

#include "biworlds/biworld.hpp"

namespace biworlds {

nlohmann::json biworld_to_json(const Universe& u, const BiworldData& w);

// Parses and validates against the universe registries; every nested biworld
// must resolve to a registered id.
BiworldData biworld_from_json(const Universe& u, const nlohmann::json& j);

}  // namespace biworlds
