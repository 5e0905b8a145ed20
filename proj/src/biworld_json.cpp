#include "biworlds/biworld_json.hpp"

namespace biworlds {

using nlohmann::json;

namespace {

json interp_to_json(const Session& s, uint32_t obj) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.atom_count(); ++i)
    if ((obj >> i) & 1u) arr.push_back(s.atom_name(static_cast<AtomId>(i)));
  return arr;
}

uint32_t interp_from_json(const Session& s, const json& j) {
  if (!j.is_array()) throw JsonFormatError("\"obj\" must be an array of atom names");
  uint32_t obj = 0;
  for (const auto& el : j) {
    if (!el.is_string()) throw JsonFormatError("atom names must be strings");
    auto id = s.find_atom(el.get<std::string>());
    if (!id) throw JsonFormatError("undeclared atom '" + el.get<std::string>() + "'");
    obj |= 1u << *id;
  }
  return obj;
}

int json_level(const json& j) {
  if (!j.is_object() || !j.contains("obj")) throw JsonFormatError("biworld must be an object with \"obj\"");
  if (!j.contains("agents")) return 0;
  const json& agents = j.at("agents");
  if (!agents.is_object() || agents.empty())
    throw JsonFormatError("\"agents\" must be a non-empty object");
  const json& first = agents.begin().value();
  if (!first.is_object() || !first.contains("poss"))
    throw JsonFormatError("agent entry must contain \"poss\" and \"imp\"");
  const json& poss = first.at("poss");
  const json& imp = first.at("imp");
  if (!poss.is_array() || !imp.is_array()) throw JsonFormatError("\"poss\"/\"imp\" must be arrays");
  int child = -1;
  for (const json* arr : {&poss, &imp})
    for (const auto& el : *arr) {
      int l = json_level(el);
      if (child >= 0 && l != child) throw JsonFormatError("mixed nesting depths in poss/imp lists");
      child = l;
    }
  if (child < 0)
    // both lists empty: lowest consistent reading (members at level 0); the
    // union invariant will reject it anyway unless the registry is empty
    child = 0;
  return child + 1;
}

}  // namespace

json biworld_to_json(const Universe& u, const BiworldData& w) {
  json j;
  j["obj"] = interp_to_json(u.session(), w.obj);
  if (w.level == 0) return j;
  json agents = json::object();
  for (std::size_t a = 0; a < u.session().agent_count(); ++a) {
    json poss = json::array(), imp = json::array();
    // registry ids ascend in canonical order, so emitting by id keeps the
    // lists canonically sorted
    w.poss[a].for_each([&](uint32_t x) {
      poss.push_back(biworld_to_json(u, u.biworld(w.level - 1, x)));
    });
    w.imp[a].for_each([&](uint32_t x) {
      imp.push_back(biworld_to_json(u, u.biworld(w.level - 1, x)));
    });
    agents[u.session().agent_name(static_cast<AgentId>(a))] = {{"poss", std::move(poss)},
                                                               {"imp", std::move(imp)}};
  }
  j["agents"] = std::move(agents);
  return j;
}

BiworldData biworld_from_json(const Universe& u, const json& j) {
  const Session& s = u.session();
  int level = json_level(j);
  BiworldData w;
  w.level = level;
  w.obj = interp_from_json(s, j.at("obj"));
  if (level == 0) return w;
  if (!u.is_built(level - 1))
    throw UnbuiltLevelError("biworld at level " + std::to_string(level) +
                            " needs the level-" + std::to_string(level - 1) + " registry");
  const json& agents = j.at("agents");
  uint32_t nb = static_cast<uint32_t>(u.level_size(level - 1));
  for (std::size_t a = 0; a < s.agent_count(); ++a) {
    const std::string& name = s.agent_name(static_cast<AgentId>(a));
    if (!agents.contains(name)) throw JsonFormatError("missing agent '" + name + "'");
    const json& entry = agents.at(name);
    IdSet poss(nb), imp(nb);
    for (const char* side : {"poss", "imp"}) {
      if (!entry.contains(side)) throw JsonFormatError(std::string("missing \"") + side + "\"");
      for (const auto& el : entry.at(side)) {
        BiworldData child = biworld_from_json(u, el);
        auto id = u.find(child);
        if (!id) throw JsonFormatError("nested value is not a registered biworld");
        (side[0] == 'p' ? poss : imp).set(*id);
      }
    }
    if (!(poss.union_with(imp) == IdSet::full(nb)))
      throw JsonFormatError("union invariant violated for agent '" + name +
                            "': poss and imp must cover every level-" +
                            std::to_string(level - 1) + " biworld");
    bool bad_overlap = false;
    poss.intersection(imp).for_each([&](uint32_t x) {
      if (u.completed_flag(level - 1, x)) bad_overlap = true;
    });
    if (bad_overlap)
      throw JsonFormatError("intersection invariant violated for agent '" + name +
                            "': a completed biworld sits in both poss and imp");
    w.poss.push_back(std::move(poss));
    w.imp.push_back(std::move(imp));
  }
  for (const auto& [key, _] : agents.items())
    if (!s.find_agent(key)) throw JsonFormatError("undeclared agent '" + key + "'");
  return w;
}

}  // namespace biworlds
