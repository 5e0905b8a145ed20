#include "biworlds/biworld.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace biworlds {

// --- IdSet ------------------------------------------------------------------

uint32_t IdSet::count() const {
  uint32_t n = 0;
  for (uint64_t w : words_) n += static_cast<uint32_t>(std::popcount(w));
  return n;
}

bool IdSet::empty() const {
  for (uint64_t w : words_)
    if (w) return false;
  return true;
}

bool IdSet::intersects(const IdSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

bool IdSet::is_subset_of(const IdSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

IdSet IdSet::intersection(const IdSet& o) const {
  IdSet r(domain_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

IdSet IdSet::union_with(const IdSet& o) const {
  IdSet r(domain_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
  return r;
}

IdSet IdSet::difference(const IdSet& o) const {
  IdSet r(domain_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
  return r;
}

IdSet IdSet::complement() const {
  IdSet r(domain_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
  if (domain_ & 63) r.words_.back() &= (1ull << (domain_ & 63)) - 1;
  return r;
}

std::vector<uint32_t> IdSet::ids() const {
  std::vector<uint32_t> out;
  out.reserve(count());
  for_each([&](uint32_t id) { out.push_back(id); });
  return out;
}

// Sorted-id-list lexicographic order: shared prefixes compare by the first
// differing id; a proper prefix precedes its extensions.
int IdSet::compare(const IdSet& a, const IdSet& b) {
  assert(a.domain_ == b.domain_);
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    uint64_t diff = a.words_[i] ^ b.words_[i];
    if (!diff) continue;
    uint32_t d = static_cast<uint32_t>(i * 64 + std::countr_zero(diff));
    const IdSet& holder = a.test(d) ? a : b;
    const IdSet& other = (&holder == &a) ? b : a;
    // Does `other` contain anything above d?
    bool other_has_later = false;
    uint64_t high = other.words_[i] & ~((d & 63) == 63 ? ~0ull : ((2ull << (d & 63)) - 1));
    if (high)
      other_has_later = true;
    else
      for (std::size_t j = i + 1; j < other.words_.size() && !other_has_later; ++j)
        if (other.words_[j]) other_has_later = true;
    if (other_has_later) return &holder == &a ? -1 : 1;  // holder first
    return &other == &a ? -1 : 1;                        // prefix first
  }
  return 0;
}

uint64_t IdSet::hash() const {
  uint64_t h = 0xcbf29ce484222325ull ^ domain_;
  for (uint64_t w : words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

// --- BiworldData --------------------------------------------------------------

uint64_t BiworldData::hash() const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(level) << 32) ^ obj;
  for (const IdSet& s : poss) h = (h * 0xff51afd7ed558ccdull) ^ s.hash();
  for (const IdSet& s : imp) h = (h * 0xc4ceb9fe1a85ec53ull) ^ s.hash();
  return h;
}

int canonical_compare(const BiworldData& a, const BiworldData& b) {
  assert(a.level == b.level);
  if (a.obj != b.obj) return a.obj < b.obj ? -1 : 1;
  for (std::size_t ai = 0; ai < a.poss.size(); ++ai) {
    if (int c = IdSet::compare(a.poss[ai], b.poss[ai])) return c;
    if (int c = IdSet::compare(a.imp[ai], b.imp[ai])) return c;
  }
  return 0;
}

// --- Universe construction ----------------------------------------------------

Universe::Universe(Session session, int max_level, uint64_t cap)
    : session_(std::move(session)), cap_(cap) {
  if (max_level < 0) throw Error("max_level must be >= 0");
  auto counts = count_levels(session_.atom_count(), session_.agent_count(), max_level);
  for (int k = 0; k <= max_level; ++k) {
    const BigInt& n = counts[static_cast<std::size_t>(k)].total;
    if (n > BigInt(cap_))
      throw CapExceededError(k, n,
                             "level " + std::to_string(k) + " has " + n.str() +
                                 " biworlds, cap is " + std::to_string(cap_));
  }
  build_level0();
  for (int k = 1; k <= max_level; ++k) build_next_level(true);
}

void Universe::build_level0() {
  Level level;
  uint32_t n = 1u << session_.atom_count();
  level.items.reserve(n);
  for (uint32_t obj = 0; obj < n; ++obj) level.items.push_back({0, obj, {}, {}});
  level.completed.assign(n, 0);  // with agents present, every interpretation
                                 // has at least two level-1 extensions
  level.completed_count = 0;
  for (uint32_t id = 0; id < n; ++id) level.index[level.items[id].hash()].push_back(id);
  levels_.push_back(std::move(level));
}

void Universe::build_next_level(bool parallel) {
  const int k = max_level() + 1;
  const Level& below = levels_.back();
  const uint32_t nb = static_cast<uint32_t>(below.items.size());
  const std::size_t n_agents = session_.agent_count();

  // Per-agent assignment space: each lower biworld goes to exactly-poss,
  // exactly-imp, or (if incompleted) both. Identical for every agent.
  std::vector<std::pair<IdSet, IdSet>> assignments;
  {
    std::vector<uint8_t> digit(nb, 0);  // 0 = poss, 1 = imp, 2 = both
    while (true) {
      IdSet p(nb), m(nb);
      for (uint32_t x = 0; x < nb; ++x) {
        if (digit[x] != 1) p.set(x);
        if (digit[x] != 0) m.set(x);
      }
      assignments.emplace_back(std::move(p), std::move(m));
      // odometer
      std::size_t j = nb;
      while (j > 0) {
        --j;
        uint8_t radix = below.completed[j] ? 2 : 3;
        if (++digit[j] < radix) break;
        digit[j] = 0;
        if (j == 0) goto done;
      }
      if (nb == 0) break;
    }
  done:;
  }

  const uint64_t n_obj = 1ull << session_.atom_count();
  const uint64_t pa = assignments.size();
  uint64_t total = n_obj;
  for (std::size_t a = 0; a < n_agents; ++a) total *= pa;

  Level level;
  level.items.resize(total);
  level.completed.assign(total, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && total > 4096)
#endif
  for (int64_t idx = 0; idx < static_cast<int64_t>(total); ++idx) {
    uint64_t rest = static_cast<uint64_t>(idx);
    BiworldData w;
    w.level = k;
    w.poss.reserve(n_agents);
    w.imp.reserve(n_agents);
    for (std::size_t a = 0; a < n_agents; ++a) {
      uint64_t ai = rest % pa;
      rest /= pa;
      w.poss.push_back(assignments[ai].first);
      w.imp.push_back(assignments[ai].second);
    }
    w.obj = static_cast<uint32_t>(rest);
    level.items[static_cast<std::size_t>(idx)] = std::move(w);
  }

  std::sort(level.items.begin(), level.items.end(),
            [](const BiworldData& a, const BiworldData& b) { return canonical_compare(a, b) < 0; });

  level.restrict1.resize(total);
  level.child_ids.resize(nb);
  for (uint32_t id = 0; id < total; ++id) {
    const BiworldData& w = level.items[id];
    bool comp = true;
    for (std::size_t a = 0; a < n_agents && comp; ++a)
      comp = !w.poss[a].intersects(w.imp[a]);
    level.completed[id] = comp;
    if (comp) ++level.completed_count;
    level.index[w.hash()].push_back(id);
  }

  // One-step restriction ids; needs the new index in place for k >= 2.
  for (uint32_t id = 0; id < total; ++id) {
    const BiworldData& w = level.items[id];
    uint32_t rid;
    if (k == 1) {
      rid = w.obj;  // level-0 ids coincide with interpretation bits
    } else {
      BiworldData r;
      r.level = k - 1;
      r.obj = w.obj;
      uint32_t lower_nb = static_cast<uint32_t>(levels_[static_cast<std::size_t>(k - 2)].items.size());
      for (std::size_t a = 0; a < n_agents; ++a) {
        IdSet rp(lower_nb), rm(lower_nb);
        w.poss[a].for_each([&](uint32_t x) { rp.set(below.restrict1[x]); });
        w.imp[a].for_each([&](uint32_t x) { rm.set(below.restrict1[x]); });
        r.poss.push_back(std::move(rp));
        r.imp.push_back(std::move(rm));
      }
      auto it = below.index.find(r.hash());
      rid = UINT32_MAX;
      if (it != below.index.end())
        for (uint32_t cand : it->second)
          if (below.items[cand] == r) {
            rid = cand;
            break;
          }
      if (rid == UINT32_MAX) throw Error("restrictability violated during build");
    }
    level.restrict1[id] = rid;
    level.child_ids[rid].push_back(id);
  }

  levels_.push_back(std::move(level));
}

std::optional<uint32_t> Universe::find(const BiworldData& w) const {
  if (!is_built(w.level)) return std::nullopt;
  const Level& level = levels_[static_cast<std::size_t>(w.level)];
  auto it = level.index.find(w.hash());
  if (it == level.index.end()) return std::nullopt;
  for (uint32_t id : it->second)
    if (level.items[id] == w) return id;
  return std::nullopt;
}

bool Universe::admits(const BiworldData& w) const {
  if (w.level < 0) return false;
  if (w.level <= max_level()) return find(w).has_value();
  if (w.level != max_level() + 1) return false;
  if (w.poss.size() != session_.agent_count() || w.imp.size() != session_.agent_count())
    return false;
  uint32_t nb = static_cast<uint32_t>(level_size(max_level()));
  for (std::size_t a = 0; a < w.poss.size(); ++a)
    if (w.poss[a].domain() != nb || w.imp[a].domain() != nb) return false;
  return true;
}

// --- restriction & precision ---------------------------------------------------

BiworldData restrict1(const Universe& u, const BiworldData& w) {
  if (w.level < 1) throw Error("restrict1: level-0 biworld has no restriction");
  if (w.level == 1) return {0, w.obj, {}, {}};
  BiworldData r;
  r.level = w.level - 1;
  r.obj = w.obj;
  uint32_t nb = static_cast<uint32_t>(u.level_size(w.level - 2));
  for (std::size_t a = 0; a < w.poss.size(); ++a) {
    IdSet rp(nb), rm(nb);
    w.poss[a].for_each([&](uint32_t x) { rp.set(u.restrict1_id(w.level - 1, x)); });
    w.imp[a].for_each([&](uint32_t x) { rm.set(u.restrict1_id(w.level - 1, x)); });
    r.poss.push_back(std::move(rp));
    r.imp.push_back(std::move(rm));
  }
  return r;
}

BiworldData restrict_to(const Universe& u, const BiworldData& w, int alpha) {
  if (alpha < 0 || alpha > w.level) throw Error("restrict_to: level out of range");
  BiworldData r = w;
  while (r.level > alpha) r = restrict1(u, r);
  return r;
}

bool precision_leq(const Universe& u, const BiworldData& w, const BiworldData& w2) {
  if (w.level > w2.level) return false;
  return restrict_to(u, w2, w.level) == w;
}

bool is_completed(const BiworldData& w) {
  if (w.level == 0) return false;
  for (std::size_t a = 0; a < w.poss.size(); ++a)
    if (w.poss[a].intersects(w.imp[a])) return false;
  return true;
}

// --- extension machinery --------------------------------------------------------

namespace {

struct Member {
  uint32_t id;
  bool can_both;
};

struct ChoiceClass {
  std::vector<Member> members;
  bool constrained;  // must cover both the poss side and the imp side
};

struct AgentPlan {
  IdSet forced_poss, forced_imp;
  std::vector<ChoiceClass> classes;
};

std::vector<AgentPlan> make_plans(const Universe& u, const BiworldData& w) {
  const int k = w.level;
  if (!u.is_built(k))
    throw UnbuiltLevelError("extensions of a level-" + std::to_string(k) +
                            " biworld need the level-" + std::to_string(k) + " registry");
  const uint32_t nb = static_cast<uint32_t>(u.level_size(k));
  const std::size_t n_agents = u.session().agent_count();
  std::vector<AgentPlan> plans;
  plans.reserve(n_agents);
  for (std::size_t a = 0; a < n_agents; ++a) {
    AgentPlan plan{IdSet(nb), IdSet(nb), {}};
    if (k == 0) {
      ChoiceClass all{{}, false};
      for (uint32_t x = 0; x < nb; ++x) all.members.push_back({x, !u.completed_flag(k, x)});
      plan.classes.push_back(std::move(all));
    } else {
      uint32_t parents = static_cast<uint32_t>(u.level_size(k - 1));
      for (uint32_t r = 0; r < parents; ++r) {
        bool in_p = w.poss[a].test(r), in_i = w.imp[a].test(r);
        if (!in_p && !in_i)
          throw Error("union invariant violated: lower biworld neither possible nor impossible");
        const auto& kids = u.children(k, r);
        if (in_p && in_i) {
          if (u.completed_flag(k - 1, r))
            throw Error("intersection invariant violated: completed biworld in poss & imp");
          ChoiceClass cls{{}, true};
          for (uint32_t x : kids) cls.members.push_back({x, !u.completed_flag(k, x)});
          plan.classes.push_back(std::move(cls));
        } else if (in_p) {
          for (uint32_t x : kids) plan.forced_poss.set(x);
        } else {
          for (uint32_t x : kids) plan.forced_imp.set(x);
        }
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

BigInt class_count(const ChoiceClass& cls) {
  BigInt n = 1;
  for (const Member& m : cls.members) n *= m.can_both ? 3 : 2;
  if (cls.constrained) n -= 2;  // all-poss and all-imp break coverage
  return n;
}

// Enumerates the per-agent choice assignments of one plan as (poss, imp)
// pairs layered on the forced sets. Digit values: 0 poss, 1 imp, 2 both.
class PlanEnumerator {
 public:
  explicit PlanEnumerator(const AgentPlan& plan) : plan_(&plan) {
    for (const auto& cls : plan.classes)
      for (const Member& mem : cls.members) radix_.push_back(mem.can_both ? 3 : 2);
    reset();
  }

  void reset() {
    digits_.assign(radix_.size(), 0);
    done_ = false;
    if (!advance_to_valid()) done_ = true;
  }

  [[nodiscard]] bool done() const { return done_; }

  [[nodiscard]] std::pair<IdSet, IdSet> current() const {
    IdSet p = plan_->forced_poss, m = plan_->forced_imp;
    std::size_t d = 0;
    for (const auto& cls : plan_->classes)
      for (const Member& mem : cls.members) {
        if (digits_[d] != 1) p.set(mem.id);
        if (digits_[d] != 0) m.set(mem.id);
        ++d;
      }
    return {std::move(p), std::move(m)};
  }

  void next() {
    if (!increment() || !advance_to_valid()) done_ = true;
  }

 private:
  bool increment() {
    std::size_t d = digits_.size();
    while (d > 0) {
      --d;
      if (++digits_[d] < radix_[d]) return true;
      digits_[d] = 0;
    }
    return false;
  }

  // Skip assignments violating per-class coverage.
  bool valid() const {
    std::size_t d = 0;
    for (const auto& cls : plan_->classes) {
      if (!cls.constrained) {
        d += cls.members.size();
        continue;
      }
      bool has_p = false, has_i = false;
      for (std::size_t mi = 0; mi < cls.members.size(); ++mi, ++d) {
        if (digits_[d] != 1) has_p = true;
        if (digits_[d] != 0) has_i = true;
      }
      if (!has_p || !has_i) return false;
    }
    return true;
  }

  bool advance_to_valid() {
    while (!valid())
      if (!increment()) return false;
    return true;
  }

  const AgentPlan* plan_;
  std::vector<uint8_t> radix_;
  std::vector<uint8_t> digits_;
  bool done_ = false;
};

}  // namespace

BigInt extension_count(const Universe& u, const BiworldData& w) {
  auto plans = make_plans(u, w);
  BigInt n = 1;
  for (const AgentPlan& plan : plans)
    for (const ChoiceClass& cls : plan.classes) n *= class_count(cls);
  return n;
}

ExtensionResult extensions(const Universe& u, const BiworldData& w, uint64_t limit) {
  static constexpr uint64_t kSortLimit = 1u << 20;
  auto plans = make_plans(u, w);
  const uint32_t nb = static_cast<uint32_t>(u.level_size(w.level));
  BigInt total = 1;
  for (const AgentPlan& plan : plans)
    for (const ChoiceClass& cls : plan.classes) total *= class_count(cls);

  uint64_t to_generate;
  bool full_enumeration;
  if (total <= BigInt(kSortLimit)) {
    to_generate = total.convert_to<uint64_t>();
    full_enumeration = true;
  } else {
    to_generate = std::min<uint64_t>(limit, kSortLimit);
    full_enumeration = false;
  }

  // Cartesian product across agents via nested enumerators.
  std::vector<BiworldData> out;
  std::vector<PlanEnumerator> enums;
  enums.reserve(plans.size());
  for (const AgentPlan& plan : plans) enums.emplace_back(plan);
  bool exhausted = false;
  for (const PlanEnumerator& e : enums)
    if (e.done()) exhausted = true;

  (void)nb;
  while (!exhausted && out.size() < to_generate) {
    BiworldData ext;
    ext.level = w.level + 1;
    ext.obj = w.obj;
    for (const PlanEnumerator& e : enums) {
      auto [p, m] = e.current();
      ext.poss.push_back(std::move(p));
      ext.imp.push_back(std::move(m));
    }
    out.push_back(std::move(ext));
    // advance the rightmost agent enumerator, carrying leftwards
    std::size_t a = enums.size();
    while (a > 0) {
      --a;
      enums[a].next();
      if (!enums[a].done()) break;
      if (a == 0) {
        exhausted = true;
        break;
      }
      enums[a].reset();
    }
  }

  std::sort(out.begin(), out.end(),
            [](const BiworldData& a, const BiworldData& b) { return canonical_compare(a, b) < 0; });
  ExtensionResult res;
  res.exhaustive = full_enumeration && out.size() <= limit;
  if (out.size() > limit) out.resize(limit);
  res.items = std::move(out);
  return res;
}

bool incompleted_oracle(const Universe& u, const BiworldData& w) {
  return extensions(u, w, 2).items.size() == 2;
}

BiworldData least_extension(const Universe& u, const BiworldData& w) {
  auto plans = make_plans(u, w);
  BiworldData ext;
  ext.level = w.level + 1;
  ext.obj = w.obj;

  for (const AgentPlan& plan : plans) {
    // Gather choice members in ascending id order with their class index.
    struct Choice {
      uint32_t id;
      uint32_t cls;
      bool can_both;
    };
    std::vector<Choice> choices;
    for (uint32_t ci = 0; ci < plan.classes.size(); ++ci)
      for (const Member& m : plan.classes[ci].members) choices.push_back({m.id, ci, m.can_both});
    std::sort(choices.begin(), choices.end(),
              [](const Choice& a, const Choice& b) { return a.id < b.id; });

    std::size_t n_cls = plan.classes.size();
    std::vector<uint32_t> undecided(n_cls, 0), in_poss(n_cls, 0), incompleted_in_poss(n_cls, 0);
    std::vector<uint8_t> covered(n_cls, 0);
    std::vector<uint8_t> needs_cover(n_cls, 0);
    for (uint32_t ci = 0; ci < n_cls; ++ci) {
      undecided[ci] = static_cast<uint32_t>(plan.classes[ci].members.size());
      needs_cover[ci] = plan.classes[ci].constrained;
      covered[ci] = !plan.classes[ci].constrained;  // unconstrained classes need nothing
    }
    uint32_t uncovered = 0;
    for (uint32_t ci = 0; ci < n_cls; ++ci)
      if (!covered[ci]) ++uncovered;

    IdSet poss = plan.forced_poss;
    std::vector<uint8_t> in_poss_flag(choices.size(), 0);
    uint32_t max_forced = 0;
    bool any_forced = false;
    plan.forced_poss.for_each([&](uint32_t id) {
      any_forced = true;
      max_forced = std::max(max_forced, id);
    });

    // Greedy poss minimization in sorted-list order: include members while a
    // later list element is still guaranteed, unless inclusion would leave a
    // class with no way to reach the imp side.
    for (std::size_t i = 0; i < choices.size(); ++i) {
      const Choice& c = choices[i];
      bool later_guaranteed = (uncovered > 0) || (any_forced && max_forced > c.id);
      if (!later_guaranteed) break;  // stopping here yields a prefix, which is minimal
      --undecided[c.cls];
      bool last_and_all_in = undecided[c.cls] == 0 &&
                             in_poss[c.cls] == plan.classes[c.cls].members.size() - 1;
      bool feasible = true;
      if (needs_cover[c.cls] && last_and_all_in) {
        // class would lie entirely on the poss side; some member must be able
        // to sit on both sides
        feasible = incompleted_in_poss[c.cls] > 0 || c.can_both;
      }
      if (feasible) {
        poss.set(c.id);
        in_poss_flag[i] = 1;
        ++in_poss[c.cls];
        if (c.can_both) ++incompleted_in_poss[c.cls];
        if (!covered[c.cls]) {
          covered[c.cls] = 1;
          --uncovered;
        }
      }
    }
    if (uncovered > 0) throw Error("least_extension: coverage infeasible");

    // Imp side: forced imp, all excluded members, plus the lexicographically
    // cheapest both-side designations satisfying per-class imp coverage.
    IdSet imp = plan.forced_imp;
    std::vector<uint8_t> imp_side(n_cls, 0);
    for (uint32_t ci = 0; ci < n_cls; ++ci)
      if (!needs_cover[ci]) imp_side[ci] = 1;
    for (std::size_t i = 0; i < choices.size(); ++i)
      if (!in_poss_flag[i]) {
        imp.set(choices[i].id);
        imp_side[choices[i].cls] = 1;
      }

    std::vector<Choice> b_candidates;  // incompleted members on the poss side
    for (std::size_t i = 0; i < choices.size(); ++i)
      if (in_poss_flag[i] && choices[i].can_both) b_candidates.push_back(choices[i]);

    bool changed = true;
    while (changed) {
      changed = false;
      uint32_t max_in_imp = 0;
      bool any = false;
      imp.for_each([&](uint32_t id) {
        any = true;
        max_in_imp = std::max(max_in_imp, id);
      });
      for (const Choice& c : b_candidates) {
        if (imp.test(c.id)) continue;
        bool reduces = any && c.id < max_in_imp;
        bool required = !imp_side[c.cls];
        if (reduces || required) {
          imp.set(c.id);
          imp_side[c.cls] = 1;
          changed = true;
        }
      }
      // required classes with no candidate below max need their least member
      for (uint32_t ci = 0; ci < n_cls; ++ci) {
        if (imp_side[ci]) continue;
        uint32_t best = UINT32_MAX;
        for (const Choice& c : b_candidates)
          if (c.cls == ci) best = std::min(best, c.id);
        if (best == UINT32_MAX) throw Error("least_extension: imp coverage infeasible");
        imp.set(best);
        imp_side[ci] = 1;
        changed = true;
      }
    }

    ext.poss.push_back(std::move(poss));
    ext.imp.push_back(std::move(imp));
  }
  return ext;
}

BiworldData completed_extension(const Universe& u, const BiworldData& w) {
  const std::size_t n_agents = u.session().agent_count();
  if (w.level == 0) {
    if (!u.is_built(0)) throw UnbuiltLevelError("level 0 not built");
    BiworldData ext;
    ext.level = 1;
    ext.obj = w.obj;
    uint32_t nb = static_cast<uint32_t>(u.level_size(0));
    for (std::size_t a = 0; a < n_agents; ++a) {
      ext.poss.push_back(IdSet::full(nb));
      ext.imp.push_back(IdSet(nb));
    }
    return ext;
  }
  const int k = w.level;
  if (!u.is_built(k)) throw UnbuiltLevelError("completed_extension needs the level registry");
  uint32_t nb = static_cast<uint32_t>(u.level_size(k));
  BiworldData ext;
  ext.level = k + 1;
  ext.obj = w.obj;
  for (std::size_t a = 0; a < n_agents; ++a) {
    IdSet ext_poss(nb);
    w.poss[a].for_each([&](uint32_t r) {
      for (uint32_t x : u.children(k, r)) ext_poss.set(x);
    });
    IdSet chosen(nb);  // the image S_A of the choice function
    IdSet overlap = w.poss[a].intersection(w.imp[a]);
    overlap.for_each([&](uint32_t r) {
      BiworldData fv = least_extension(u, u.biworld(k - 1, r));
      auto id = u.find(fv);
      if (!id) throw Error("completed_extension: chosen extension not registered");
      chosen.set(*id);
    });
    ext.poss.push_back(ext_poss.difference(chosen));
    ext.imp.push_back(ext_poss.complement().union_with(chosen));
  }
  return ext;
}

BiworldData unique_extension(const Universe& u, const BiworldData& w) {
  if (!is_completed(w))
    throw NotCompletedError("unique_extension: biworld is incompleted");
  const int k = w.level;
  if (!u.is_built(k)) throw UnbuiltLevelError("unique_extension needs the level registry");
  uint32_t nb = static_cast<uint32_t>(u.level_size(k));
  BiworldData ext;
  ext.level = k + 1;
  ext.obj = w.obj;
  for (std::size_t a = 0; a < w.poss.size(); ++a) {
    IdSet p(nb), m(nb);
    w.poss[a].for_each([&](uint32_t r) {
      for (uint32_t x : u.children(k, r)) p.set(x);
    });
    w.imp[a].for_each([&](uint32_t r) {
      for (uint32_t x : u.children(k, r)) m.set(x);
    });
    ext.poss.push_back(std::move(p));
    ext.imp.push_back(std::move(m));
  }
  return ext;
}

// --- streaming level tallies ------------------------------------------------

namespace {

struct DigitSpace {
  std::vector<uint8_t> radix;  // most significant first
  uint64_t total = 1;
};

DigitSpace tally_space(const Universe& u, int level) {
  if (level < 1 || !u.is_built(level - 1))
    throw UnbuiltLevelError("enumerate_level_tally: level-" + std::to_string(level - 1) +
                            " registry required");
  DigitSpace ds;
  uint64_t nb = u.level_size(level - 1);
  uint64_t n_obj = 1ull << u.session().atom_count();
  for (std::size_t a = 0; a < u.session().agent_count(); ++a)
    for (uint64_t x = 0; x < nb; ++x)
      ds.radix.push_back(u.completed_flag(level - 1, static_cast<uint32_t>(x)) ? 2 : 3);
  ds.total = n_obj;
  for (uint8_t r : ds.radix) {
    if (ds.total > (1ull << 33) / r)
      throw Error("enumerate_level_tally: space too large to stream");
    ds.total *= r;
  }
  return ds;
}

// Tally a [begin, end) slice of the mixed-radix space. Digit value 2 means
// "both sides"; an assignment is completed iff no digit is 2.
LevelTally tally_range(const DigitSpace& ds, uint64_t begin, uint64_t end) {
  LevelTally t;
  std::size_t nd = ds.radix.size();
  std::vector<uint8_t> digit(nd, 0);
  // decode `begin` (objective is the most significant factor and does not
  // affect completedness, so it is folded into the plain index)
  uint64_t idx = begin;
  uint32_t both_count = 0;
  for (std::size_t j = nd; j-- > 0;) {
    digit[j] = static_cast<uint8_t>(idx % ds.radix[j]);
    idx /= ds.radix[j];
    if (digit[j] == 2) ++both_count;
  }
  for (uint64_t i = begin; i < end; ++i) {
    ++t.total;
    if (both_count == 0) ++t.completed;
    // odometer increment
    std::size_t j = nd;
    while (j > 0) {
      --j;
      if (digit[j] == 2) --both_count;
      if (++digit[j] < ds.radix[j]) {
        if (digit[j] == 2) ++both_count;
        break;
      }
      digit[j] = 0;
    }
  }
  return t;
}

}  // namespace

LevelTally enumerate_level_tally_serial(const Universe& u, int level) {
  DigitSpace ds = tally_space(u, level);
  return tally_range(ds, 0, ds.total);
}

LevelTally enumerate_level_tally_parallel(const Universe& u, int level) {
  DigitSpace ds = tally_space(u, level);
  int n_chunks = 1;
#ifdef _OPENMP
  n_chunks = std::max(1, omp_get_max_threads() * 8);
#endif
  uint64_t chunk = (ds.total + n_chunks - 1) / n_chunks;
  uint64_t total = 0, completed = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total, completed)
#endif
  for (int c = 0; c < n_chunks; ++c) {
    uint64_t b = static_cast<uint64_t>(c) * chunk;
    uint64_t e = std::min(ds.total, b + chunk);
    if (b >= e) continue;
    LevelTally part = tally_range(ds, b, e);
    total += part.total;
    completed += part.completed;
  }
  return {total, completed};
}

}  // namespace biworlds
