// Finite-level biworlds over a fixed vocabulary and agent set.
//
// A level-0 biworld is a propositional interpretation. A level-(k+1) biworld
// pairs an interpretation with, per agent, a set `poss` of level-k biworld
// ids deemed extendibly possible and a set `imp` deemed extendibly
// impossible, subject to:
//   (union)        poss | imp covers every level-k biworld
//   (intersection) every id in poss & imp refers to an incompleted biworld
//
// A Universe interns all biworlds of each level up to a cap, in a canonical
// order, together with completedness flags and one-step restriction maps.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biworlds/counting.hpp"
#include "biworlds/errors.hpp"
#include "biworlds/session.hpp"

namespace biworlds {

// Set of lower-level biworld ids, stored as a fixed-domain bitset. Canonical
// comparison is lexicographic on the ascending id list (prefixes first).
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(uint32_t domain) : domain_(domain), words_((domain + 63) / 64, 0) {}

  static IdSet full(uint32_t domain) {
    IdSet s(domain);
    for (uint32_t i = 0; i < domain; ++i) s.set(i);
    return s;
  }

  [[nodiscard]] uint32_t domain() const { return domain_; }
  [[nodiscard]] bool test(uint32_t id) const {
    return (words_[id >> 6] >> (id & 63)) & 1ull;
  }
  void set(uint32_t id) { words_[id >> 6] |= 1ull << (id & 63); }
  void reset(uint32_t id) { words_[id >> 6] &= ~(1ull << (id & 63)); }

  [[nodiscard]] uint32_t count() const;
  [[nodiscard]] bool empty() const;
  [[nodiscard]] bool intersects(const IdSet& o) const;
  [[nodiscard]] bool is_subset_of(const IdSet& o) const;
  [[nodiscard]] IdSet intersection(const IdSet& o) const;
  [[nodiscard]] IdSet union_with(const IdSet& o) const;
  [[nodiscard]] IdSet difference(const IdSet& o) const;
  [[nodiscard]] IdSet complement() const;
  [[nodiscard]] std::vector<uint32_t> ids() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        f(static_cast<uint32_t>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const IdSet& a, const IdSet& b) {
    return a.domain_ == b.domain_ && a.words_ == b.words_;
  }

  // <0, 0, >0 like strcmp; sorted-id-list lexicographic order.
  static int compare(const IdSet& a, const IdSet& b);

  [[nodiscard]] uint64_t hash() const;

 private:
  uint32_t domain_ = 0;
  std::vector<uint64_t> words_;
};

struct BiworldData {
  int level = 0;
  uint32_t obj = 0;            // interpretation bitmask over session atoms
  std::vector<IdSet> poss;     // one per agent; empty vectors at level 0
  std::vector<IdSet> imp;

  friend bool operator==(const BiworldData&, const BiworldData&) = default;
  [[nodiscard]] uint64_t hash() const;
};

// <0, 0, >0; lexicographic on (obj bits, then per agent poss, imp).
int canonical_compare(const BiworldData& a, const BiworldData& b);

struct LevelTally {
  uint64_t total = 0;
  uint64_t completed = 0;
  [[nodiscard]] uint64_t incompleted() const { return total - completed; }
};

class Universe {
 public:
  // Builds registries for levels 0..max_level. Throws CapExceededError
  // (level, exact closed-form count) if a level would exceed `cap`.
  Universe(Session session, int max_level, uint64_t cap);

  [[nodiscard]] const Session& session() const { return session_; }
  [[nodiscard]] int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  [[nodiscard]] uint64_t cap() const { return cap_; }
  [[nodiscard]] bool is_built(int level) const {
    return level >= 0 && level <= max_level();
  }

  [[nodiscard]] uint64_t level_size(int level) const { return lvl(level).items.size(); }
  [[nodiscard]] const BiworldData& biworld(int level, uint32_t id) const {
    return lvl(level).items[id];
  }
  [[nodiscard]] bool completed_flag(int level, uint32_t id) const {
    return lvl(level).completed[id];
  }
  // Id at level-1 of the one-step restriction of registry entry (level, id).
  [[nodiscard]] uint32_t restrict1_id(int level, uint32_t id) const {
    return lvl(level).restrict1[id];
  }
  // Ids at `level` whose one-step restriction is `parent` (level >= 1).
  [[nodiscard]] const std::vector<uint32_t>& children(int level, uint32_t parent) const {
    return lvl(level).child_ids[parent];
  }
  [[nodiscard]] LevelTally tally(int level) const {
    return {level_size(level), lvl(level).completed_count};
  }

  [[nodiscard]] std::optional<uint32_t> find(const BiworldData& w) const;

  // True if w is structurally a member of (or a valid detached level above)
  // this universe: registered at its level, or one level above max with
  // id-sets over the top registry.
  [[nodiscard]] bool admits(const BiworldData& w) const;

 private:
  struct Level {
    std::vector<BiworldData> items;
    std::vector<uint8_t> completed;
    std::vector<uint32_t> restrict1;
    std::vector<std::vector<uint32_t>> child_ids;  // indexed by parent id
    std::unordered_map<uint64_t, std::vector<uint32_t>> index;  // hash -> ids
    uint64_t completed_count = 0;
  };

  const Level& lvl(int level) const {
    if (!is_built(level)) throw UnbuiltLevelError("level " + std::to_string(level) + " not built");
    return levels_[static_cast<std::size_t>(level)];
  }

  void build_level0();
  void build_next_level(bool parallel);

  Session session_;
  uint64_t cap_;
  std::vector<Level> levels_;
};

// --- operations on biworld values -----------------------------------------

// One-step restriction (level L -> L-1). Requires registries through L-1.
BiworldData restrict1(const Universe& u, const BiworldData& w);

// Restriction to level alpha <= level(w); restrict_to(w, level(w)) == w.
BiworldData restrict_to(const Universe& u, const BiworldData& w, int alpha);

// w <= w2 in the precision order: level(w) <= level(w2) and w2 restricts to w.
bool precision_leq(const Universe& u, const BiworldData& w, const BiworldData& w2);

// Theorem-1(4) characterization: all per-agent intersections empty. Level-0
// biworlds are always incompleted (the agent set is non-empty).
bool is_completed(const BiworldData& w);

struct ExtensionResult {
  std::vector<BiworldData> items;
  bool exhaustive = false;  // the stream ended before `limit`
};

// Distinct level-(k+1) biworlds extending w, canonically ordered, at most
// `limit` of them. For very large extension spaces the enumeration order is
// deterministic but only the exhaustible case is globally sorted.
ExtensionResult extensions(const Universe& u, const BiworldData& w, uint64_t limit);

// Exact number of level-(k+1) extensions of w (per-agent class product).
BigInt extension_count(const Universe& u, const BiworldData& w);

// Canonically least extension of w (the deterministic choice function).
BiworldData least_extension(const Universe& u, const BiworldData& w);

// Definition-level incompletedness check: does w have two distinct
// extensions? Independent of the is_completed shortcut.
bool incompleted_oracle(const Universe& u, const BiworldData& w);

// A completed level-(k+1) biworld extending w. Level 0 uses (w, all, empty);
// successor levels use ext(poss)\S_A / complement with S_A the image of the
// least-extension choice function over poss&imp.
BiworldData completed_extension(const Universe& u, const BiworldData& w);

// The unique extension of a completed biworld; NotCompletedError otherwise.
BiworldData unique_extension(const Universe& u, const BiworldData& w);

// Streaming enumeration of the first unbuilt level (or any level), tallying
// totals and completed counts without materializing. `level` must be
// buildable from level-1 registries. Serial and OpenMP variants.
LevelTally enumerate_level_tally_serial(const Universe& u, int level);
LevelTally enumerate_level_tally_parallel(const Universe& u, int level);

}  // namespace biworlds

template <>
struct std::hash<biworlds::BiworldData> {
  std::size_t operator()(const biworlds::BiworldData& w) const { return w.hash(); }
};
