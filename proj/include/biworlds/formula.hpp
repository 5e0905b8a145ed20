// Hash-consed formula ASTs with a recursive-descent parser, canonical
// renderer, and ordinal modal depth.
//
// Grammar (whitespace-insensitive):
//   formula := implies
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "~" unary | modal | atom | "true" | "false" | "(" formula ")"
//   modal   := ("K"|"M"|"O") "[" ident "]" unary
//            | ("E"|"C") "[" "{" ident ("," ident)* "}" "]" unary
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "biworlds/ordinal.hpp"
#include "biworlds/session.hpp"

namespace biworlds {

enum class Op : uint8_t { Atom, True, False, Not, And, Or, Implies, K, M, E, C, O };

using FormulaId = uint32_t;
using GroupId = uint32_t;

inline bool is_modal(Op op) { return op >= Op::K; }
inline bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Implies; }

struct FormulaNode {
  Op op;
  uint32_t sym = 0;   // AtomId for Atom, AgentId for K/M/O, GroupId for E/C
  FormulaId lhs = 0;  // child (unary/modal) or left child (binary)
  FormulaId rhs = 0;  // right child (binary)
};

// Arena interning formula nodes and agent groups. Equal subtrees share one id,
// which the evaluators use as memo keys.
class FormulaArena {
 public:
  explicit FormulaArena(const Session& session) : session_(&session) {}

  const Session& session() const { return *session_; }
  const FormulaNode& node(FormulaId id) const { return nodes_.at(id); }
  const std::vector<AgentId>& group(GroupId id) const { return groups_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  FormulaId atom(AtomId a) { return intern({Op::Atom, a, 0, 0}); }
  FormulaId atom(const std::string& name);
  FormulaId truth() { return intern({Op::True, 0, 0, 0}); }
  FormulaId falsity() { return intern({Op::False, 0, 0, 0}); }
  FormulaId negation(FormulaId f) { return intern({Op::Not, 0, f, 0}); }
  FormulaId conjunction(FormulaId l, FormulaId r) { return intern({Op::And, 0, l, r}); }
  FormulaId disjunction(FormulaId l, FormulaId r) { return intern({Op::Or, 0, l, r}); }
  FormulaId implication(FormulaId l, FormulaId r) { return intern({Op::Implies, 0, l, r}); }
  FormulaId knows(AgentId a, FormulaId f) { return intern({Op::K, a, f, 0}); }
  FormulaId knows_at_most(AgentId a, FormulaId f) { return intern({Op::M, a, f, 0}); }
  FormulaId only_knows(AgentId a, FormulaId f) { return intern({Op::O, a, f, 0}); }
  FormulaId everybody_knows(GroupId g, FormulaId f) { return intern({Op::E, g, f, 0}); }
  FormulaId common_knowledge(GroupId g, FormulaId f) { return intern({Op::C, g, f, 0}); }

  // Groups are kept sorted and deduplicated; must be non-empty.
  GroupId intern_group(std::vector<AgentId> agents);

  [[nodiscard]] bool contains_c(FormulaId f) const;

 private:
  FormulaId intern(FormulaNode n);

  struct NodeKey {
    uint64_t k0, k1;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
      uint64_t h = k.k0 * 0x9e3779b97f4a7c15ull ^ (k.k1 + 0x100000001b3ull);
      h ^= h >> 31;
      return static_cast<std::size_t>(h * 0xc2b2ae3d27d4eb4full);
    }
  };

  const Session* session_;
  std::vector<FormulaNode> nodes_;
  std::unordered_map<NodeKey, FormulaId, NodeKeyHash> index_;
  std::vector<std::vector<AgentId>> groups_;
  std::unordered_map<std::string, GroupId> group_index_;
};

// Parses `text` against the session vocabulary. Throws ParseError (with
// position), UndeclaredSymbolError, or EmptyGroupError.
FormulaId parse(FormulaArena& arena, const std::string& text);

// Canonical rendering: binary nodes fully parenthesized, group members sorted.
// parse(render(f)) == f.
std::string render(const FormulaArena& arena, FormulaId f);

// Modal depth per the ordinal recursion: atoms 0, negation transparent,
// conjunction takes the max, K/M/E/O add one, C jumps to the next limit.
OrdinalW2 modal_depth(const FormulaArena& arena, FormulaId f);

}  // namespace biworlds
