// Declared vocabulary and agent set for one model-checking session. Atom and
// agent names are interned as indices into the sorted declaration lists.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biworlds/errors.hpp"

namespace biworlds {

using AtomId = uint32_t;
using AgentId = uint32_t;

class Session {
 public:
  Session(std::vector<std::string> atoms, std::vector<std::string> agents)
      : atoms_(std::move(atoms)), agents_(std::move(agents)) {
    normalize(atoms_, "atom");
    normalize(agents_, "agent");
    if (agents_.empty()) throw Error("agent set must be non-empty");
    if (atoms_.size() > 20) throw Error("at most 20 atoms supported");
  }

  [[nodiscard]] const std::vector<std::string>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<std::string>& agents() const { return agents_; }
  [[nodiscard]] std::size_t atom_count() const { return atoms_.size(); }
  [[nodiscard]] std::size_t agent_count() const { return agents_.size(); }

  [[nodiscard]] std::optional<AtomId> find_atom(const std::string& name) const {
    return find(atoms_, name);
  }
  [[nodiscard]] std::optional<AgentId> find_agent(const std::string& name) const {
    return find(agents_, name);
  }

  [[nodiscard]] const std::string& atom_name(AtomId id) const { return atoms_.at(id); }
  [[nodiscard]] const std::string& agent_name(AgentId id) const { return agents_.at(id); }

  friend bool operator==(const Session& a, const Session& b) {
    return a.atoms_ == b.atoms_ && a.agents_ == b.agents_;
  }

 private:
  static void normalize(std::vector<std::string>& names, const char* kind) {
    for (const auto& n : names) {
      if (n.empty() || !std::isalpha(static_cast<unsigned char>(n.front())))
        throw Error(std::string(kind) + " name must start with a letter: '" + n + "'");
      for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw Error(std::string(kind) + " name has invalid character: '" + n + "'");
    }
    std::sort(names.begin(), names.end());
    auto dup = std::adjacent_find(names.begin(), names.end());
    if (dup != names.end()) throw Error(std::string("duplicate ") + kind + ": '" + *dup + "'");
  }

  static std::optional<uint32_t> find(const std::vector<std::string>& v, const std::string& n) {
    auto it = std::lower_bound(v.begin(), v.end(), n);
    if (it != v.end() && *it == n) return static_cast<uint32_t>(it - v.begin());
    return std::nullopt;
  }

  std::vector<std::string> atoms_;
  std::vector<std::string> agents_;
};

}  // namespace biworlds
