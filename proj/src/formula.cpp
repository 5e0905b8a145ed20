#include "biworlds/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include "biworlds/errors.hpp"

namespace biworlds {

FormulaId FormulaArena::atom(const std::string& name) {
  auto id = session_->find_atom(name);
  if (!id) throw UndeclaredSymbolError(0, "undeclared atom '" + name + "'");
  return atom(*id);
}

GroupId FormulaArena::intern_group(std::vector<AgentId> agents) {
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  if (agents.empty()) throw EmptyGroupError(0, "empty agent group");
  std::string key;
  for (AgentId a : agents) key += std::to_string(a) + ",";
  auto it = group_index_.find(key);
  if (it != group_index_.end()) return it->second;
  GroupId id = static_cast<GroupId>(groups_.size());
  groups_.push_back(std::move(agents));
  group_index_.emplace(std::move(key), id);
  return id;
}

FormulaId FormulaArena::intern(FormulaNode n) {
  NodeKey key{static_cast<uint64_t>(n.op) | (static_cast<uint64_t>(n.sym) << 8),
              static_cast<uint64_t>(n.lhs) | (static_cast<uint64_t>(n.rhs) << 32)};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  FormulaId id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(key, id);
  return id;
}

bool FormulaArena::contains_c(FormulaId f) const {
  const FormulaNode& n = node(f);
  switch (n.op) {
    case Op::Atom:
    case Op::True:
    case Op::False: return false;
    case Op::C: return true;
    case Op::And:
    case Op::Or:
    case Op::Implies: return contains_c(n.lhs) || contains_c(n.rhs);
    default: return contains_c(n.lhs);
  }
}

namespace {

class Parser {
 public:
  Parser(FormulaArena& arena, const std::string& text) : arena_(arena), text_(text) {}

  FormulaId run() {
    FormulaId f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(pos_, "syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_str(const char* s) {
    skip_ws();
    std::size_t n = std::strlen(s);
    return text_.compare(pos_, n, s) == 0;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail("expected identifier");
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Modal operator keywords are single capital letters immediately followed
  // by '['; anything else alphabetic parses as an atom or true/false.
  bool at_modal(char op) {
    skip_ws();
    if (pos_ + 1 >= text_.size() || text_[pos_] != op) return false;
    std::size_t j = pos_ + 1;
    while (j < text_.size() && std::isspace(static_cast<unsigned char>(text_[j]))) ++j;
    return j < text_.size() && text_[j] == '[';
  }

  FormulaId formula() { return implies(); }

  FormulaId implies() {
    FormulaId l = disj();
    skip_ws();
    if (peek_str("->")) {
      pos_ += 2;
      return arena_.implication(l, implies());  // right-associative
    }
    return l;
  }

  FormulaId disj() {
    FormulaId l = conj();
    while (true) {
      skip_ws();
      if (peek_str("->")) break;
      if (!eat('|')) break;
      l = arena_.disjunction(l, conj());
    }
    return l;
  }

  FormulaId conj() {
    FormulaId l = unary();
    while (eat('&')) l = arena_.conjunction(l, unary());
    return l;
  }

  AgentId agent() {
    std::size_t at = pos_;
    std::string name = ident();
    auto id = arena_.session().find_agent(name);
    if (!id) throw UndeclaredSymbolError(at, "undeclared agent '" + name + "'");
    return *id;
  }

  GroupId group() {
    skip_ws();
    std::size_t at = pos_;
    expect('{');
    skip_ws();
    if (eat('}')) throw EmptyGroupError(at, "empty agent group at position " + std::to_string(at));
    std::vector<AgentId> members;
    members.push_back(agent());
    while (eat(',')) members.push_back(agent());
    expect('}');
    return arena_.intern_group(std::move(members));
  }

  FormulaId unary() {
    skip_ws();
    if (eat('~')) return arena_.negation(unary());
    if (eat('(')) {
      FormulaId f = formula();
      expect(')');
      return f;
    }
    if (at_modal('K') || at_modal('M') || at_modal('O')) {
      char op = text_[pos_++];
      expect('[');
      AgentId a = agent();
      expect(']');
      FormulaId body = unary();
      if (op == 'K') return arena_.knows(a, body);
      if (op == 'M') return arena_.knows_at_most(a, body);
      return arena_.only_knows(a, body);
    }
    if (at_modal('E') || at_modal('C')) {
      char op = text_[pos_++];
      expect('[');
      GroupId g = group();
      expect(']');
      FormulaId body = unary();
      return op == 'E' ? arena_.everybody_knows(g, body) : arena_.common_knowledge(g, body);
    }
    std::size_t at = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("unexpected character");
    std::string name = ident();
    if (name == "true") return arena_.truth();
    if (name == "false") return arena_.falsity();
    auto id = arena_.session().find_atom(name);
    if (!id) throw UndeclaredSymbolError(at, "undeclared atom '" + name + "'");
    return arena_.atom(*id);
  }

  FormulaArena& arena_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

void render_into(const FormulaArena& arena, FormulaId f, std::string& out) {
  const FormulaNode& n = arena.node(f);
  switch (n.op) {
    case Op::Atom: out += arena.session().atom_name(n.sym); return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Not:
      out += '~';
      render_into(arena, n.lhs, out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      const char* sym = n.op == Op::And ? " & " : n.op == Op::Or ? " | " : " -> ";
      out += '(';
      render_into(arena, n.lhs, out);
      out += sym;
      render_into(arena, n.rhs, out);
      out += ')';
      return;
    }
    case Op::K:
    case Op::M:
    case Op::O: {
      out += n.op == Op::K ? 'K' : n.op == Op::M ? 'M' : 'O';
      out += '[';
      out += arena.session().agent_name(n.sym);
      out += "] ";
      render_into(arena, n.lhs, out);
      return;
    }
    case Op::E:
    case Op::C: {
      out += n.op == Op::E ? 'E' : 'C';
      out += "[{";
      const auto& g = arena.group(n.sym);
      // group ids are indices into the sorted agent list, so id order is
      // lexicographic name order
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out += ',';
        out += arena.session().agent_name(g[i]);
      }
      out += "}] ";
      render_into(arena, n.lhs, out);
      return;
    }
  }
}

}  // namespace

FormulaId parse(FormulaArena& arena, const std::string& text) {
  return Parser(arena, text).run();
}

std::string render(const FormulaArena& arena, FormulaId f) {
  std::string out;
  render_into(arena, f, out);
  return out;
}

OrdinalW2 modal_depth(const FormulaArena& arena, FormulaId f) {
  const FormulaNode& n = arena.node(f);
  switch (n.op) {
    case Op::Atom:
    case Op::True:
    case Op::False: return {0, 0};
    case Op::Not: return modal_depth(arena, n.lhs);
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return ord_max(modal_depth(arena, n.lhs), modal_depth(arena, n.rhs));
    case Op::K:
    case Op::M:
    case Op::E:
    case Op::O: return modal_depth(arena, n.lhs).succ();
    case Op::C: return modal_depth(arena, n.lhs).plus_omega();
  }
  return {0, 0};
}

}  // namespace biworlds
