#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qoincl/automata.hpp"
#include "qoincl/foundations.hpp"
#include "qoincl/grammar.hpp"
#include "qoincl/quasiorders.hpp"

namespace qoincl {

enum class PruneMode { None, Antichain };

struct Stats {
  std::size_t iterations = 0;      // m: index of the stabilized iterate
  std::size_t f_applications = 0;  // m + 1 for the Kleene engines
  std::size_t words_generated = 0;
  std::size_t comparisons = 0;
  std::size_t membership_queries = 0;
  std::size_t pruned = 0;
};

struct Verdict {
  bool holds = true;
  std::optional<Word> counterexample;
  // Set when inclusion fails but the witness is too long to materialize.
  bool counterexample_unavailable = false;
  Stats stats;
};

// Membership procedure for M; the engines default to running the automaton.
using MembershipOracle = std::function<bool(const Word&)>;

struct EngineOptions {
  std::size_t iteration_cap = 1'000'000;
  // Largest total number of words (or profiles) one iterate may hold.
  std::size_t word_budget = 50'000'000;
  // Assert F^i ⊑ F^(i+1) on every turn.
  bool check_growth = true;
  // Word engine: called with k and F^k (start component index given).
  std::function<void(std::size_t, const LangVector&, Var)> on_iterate;
  // Antichain engine: called with k and the per-component antichain sizes.
  std::function<void(std::size_t, const std::vector<std::size_t>&)> on_antichain_iterate;
};

enum class FixpointForm { Cnf, RightRegular };

// A grammar in a shape with a fixpoint function.
struct FixpointSystem {
  Cfg grammar;
  FixpointForm form;
};

// Right-regular grammars keep their shape when `prefer_right_regular`;
// everything else is brought to CNF.
inline FixpointSystem prepare_system(const Cfg& g, bool prefer_right_regular = true) {
  const auto c = classification(g);
  if (c.right_regular && prefer_right_regular) return {g, FixpointForm::RightRegular};
  if (c.cnf) return {g, FixpointForm::Cnf};
  return {to_cnf(g), FixpointForm::Cnf};
}

inline LangVector apply_system(const FixpointSystem& sys, const LangVector& l) {
  return sys.form == FixpointForm::Cnf ? apply_F(sys.grammar, l) : apply_F_right_regular(sys.grammar, l);
}

inline void check_order_admissible(const FixpointSystem& sys, QuasiorderKind k) {
  if (!is_two_sided(k) && sys.form != FixpointForm::RightRegular)
    throw InputError(std::string("the ") + to_string(k) +
                     " quasiorder is only right-monotonic and needs a right-regular grammar");
}

// Indices of an antichain subset of `items`, in input order. An item is
// dropped when a retained one lies below it; among equivalent items the
// first in `before` order survives.
template <class T, class Leq, class Before>
std::vector<std::size_t> antichain_indices(const std::vector<T>& items, Leq&& leq, Before&& before) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return before(items[a], items[b]); });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) { return leq(items[k], items[i]); });
    if (covered) continue;
    std::erase_if(kept, [&](std::size_t k) { return leq(items[i], items[k]); });
    kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Generic pruning with first-inserted tie-breaking.
template <class T, class Leq>
std::vector<T> prune(const std::vector<T>& items, Leq&& leq) {
  const auto kept = antichain_indices(items, leq, [](const T&, const T&) { return false; });
  std::vector<T> out;
  for (std::size_t i : kept) out.push_back(items[i]);
  return out;
}

namespace detail {

class KeyCache {
 public:
  explicit KeyCache(const Quasiorder& q) : q_(&q) {}
  const OrderKey& operator()(const Word& w) {
    auto it = cache_.find(w);
    if (it == cache_.end()) it = cache_.emplace(w, q_->key(w)).first;
    return it->second;
  }

 private:
  const Quasiorder* q_;
  std::unordered_map<Word, OrderKey, WordHash> cache_;
};

// Word-set operations over a quasiorder with cached keys and a
// comparison counter.
class OrderedWords {
 public:
  OrderedWords(const Quasiorder& q, std::size_t& comparisons) : q_(&q), keys_(q), comparisons_(&comparisons) {}

  bool leq(const Word& u, const Word& v, bool counted = true) {
    if (counted) ++*comparisons_;
    return q_->leq(keys_(u), keys_(v));
  }

  // xs ⊑ ys
  bool covered(const WordSet& xs, const WordSet& ys, bool counted = true) {
    std::vector<const OrderKey*> ykeys;
    {
      std::unordered_map<OrderKey, bool, OrderKeyHash> seen;
      for (const auto& y : ys) {
        const auto& k = keys_(y);
        if (seen.emplace(k, true).second) ykeys.push_back(&k);
      }
    }
    std::unordered_map<OrderKey, bool, OrderKeyHash> verdicts;
    for (const auto& x : xs) {
      const auto& kx = keys_(x);
      auto it = verdicts.find(kx);
      if (it == verdicts.end()) {
        bool ok = false;
        for (const auto* ky : ykeys) {
          if (counted) ++*comparisons_;
          if (q_->leq(*ky, kx)) {
            ok = true;
            break;
          }
        }
        it = verdicts.emplace(kx, ok).first;
      }
      if (!it->second) return false;
    }
    return true;
  }

  bool covered_vec(const LangVector& xs, const LangVector& ys, bool counted = true) {
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (!covered(xs[j], ys[j], counted)) return false;
    return true;
  }

  // Antichain representative of s with shortlex tie-breaking.
  WordSet prune(const WordSet& s) {
    const auto kept = antichain_indices(
        s.words(), [&](const Word& a, const Word& b) { return leq(a, b); }, shortlex_less);
    WordSet out;
    for (std::size_t i : kept) out.insert(s[i]);
    return out;
  }

 private:
  const Quasiorder* q_;
  KeyCache keys_;
  std::size_t* comparisons_;
};

inline std::size_t total_size(const LangVector& l) {
  std::size_t n = 0;
  for (const auto& s : l) n += s.size();
  return n;
}

inline void check_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what) {
  if (!(a == b)) throw InputError(std::string("alphabet mismatch between grammar and ") + what);
}

}  // namespace detail

// WordSet pruning under a quasiorder; shortlex-least words win ties.
inline WordSet prune(const WordSet& s, const Quasiorder& q) {
  std::size_t comparisons = 0;
  detail::OrderedWords ow(q, comparisons);
  return ow.prune(s);
}

struct KleeneResult {
  std::size_t m = 0;               // F^(m+1) ⊑ F^m
  std::size_t f_applications = 0;  // m + 1
  LangVector stable;               // F^m, or its pruned representative
  FixpointSystem system;
  Stats stats;
};

// Kleene iteration from the empty vector until cur ⊑ prev.
inline KleeneResult kleene_until_stable(const Cfg& g, const Quasiorder& q, PruneMode prune_mode,
                                        const EngineOptions& opts = {}) {
  detail::check_same_alphabet(g.alphabet(), q.alphabet(), "quasiorder automaton");
  FixpointSystem sys = prepare_system(g);
  check_order_admissible(sys, q.kind());

  Stats stats;
  detail::OrderedWords ow(q, stats.comparisons);
  const std::size_t n = sys.grammar.num_vars();
  LangVector cur(n);
  std::size_t k = 0;
  for (;;) {
    LangVector prev;
    if (prune_mode == PruneMode::Antichain) {
      prev.reserve(n);
      for (const auto& s : cur) {
        prev.push_back(ow.prune(s));
        stats.pruned += s.size() - prev.back().size();
      }
    } else {
      prev = std::move(cur);
    }
    if (k >= opts.iteration_cap)
      throw ResourceError("Kleene iteration exceeded the cap of " + std::to_string(opts.iteration_cap) +
                          " applications");
    cur = apply_system(sys, prev);
    ++k;
    const std::size_t size = detail::total_size(cur);
    stats.words_generated += size;
    if (size > opts.word_budget)
      throw ResourceError("iterate " + std::to_string(k) + " holds " + std::to_string(size) +
                          " words, above the budget of " + std::to_string(opts.word_budget));
    if (opts.on_iterate) opts.on_iterate(k, cur, sys.grammar.start());
    if (opts.check_growth && !ow.covered_vec(prev, cur, false))
      throw InvariantViolation("iterate " + std::to_string(k) + " does not cover its predecessor");
    if (ow.covered_vec(cur, prev)) {
      stats.iterations = k - 1;
      stats.f_applications = k;
      return {k - 1, k, std::move(prev), std::move(sys), stats};
    }
  }
}

// Algorithm: iterate to stability, then test every word of the start
// component for membership, shortest first.
inline Verdict decide_inclusion_word(const Cfg& g, const Nfa& a, const Quasiorder& q, PruneMode prune_mode,
                                     const EngineOptions& opts = {}, MembershipOracle membership = {}) {
  detail::check_same_alphabet(g.alphabet(), a.alphabet(), "automaton");
  if (!membership) membership = [&a](const Word& u) { return run_membership(a, u); };

  auto run = kleene_until_stable(g, q, prune_mode, opts);
  Verdict v;
  v.stats = run.stats;
  for (const auto& u : run.stable[run.system.grammar.start()].sorted()) {
    ++v.stats.membership_queries;
    if (!membership(u)) {
      if (!derives(g, u) || membership(u))
        throw InvariantViolation("word engine produced an invalid counterexample");
      v.holds = false;
      v.counterexample = u;
      break;
    }
  }
  return v;
}

template <class Profile>
struct AntichainItem {
  Profile profile;
  Word witness;
};

template <class Profile>
struct AntichainRun {
  std::size_t m = 0;
  std::size_t f_applications = 0;
  std::vector<std::vector<AntichainItem<Profile>>> stable;
  FixpointSystem system;
  Stats stats;
};

namespace detail {

template <class Ops>
using ProfileOf = std::decay_t<decltype(std::declval<const Ops&>().unit())>;

template <class Ops>
AntichainRun<ProfileOf<Ops>> antichain_until_stable(FixpointSystem sys, const Ops& ops, const EngineOptions& opts) {
  using Profile = ProfileOf<Ops>;
  using Item = AntichainItem<Profile>;
  using Vec = std::vector<std::vector<Item>>;
  constexpr bool kCtx = std::is_same_v<Ops, CtxProfileOps>;
  if constexpr (kCtx) {
    if (sys.form != FixpointForm::Cnf) throw InputError("context antichains need a CNF grammar");
  } else {
    if (sys.form != FixpointForm::RightRegular) throw InputError("post antichains need a right-regular grammar");
  }

  Stats stats;
  auto leq = [&](const Item& x, const Item& y) {
    ++stats.comparisons;
    return ops.leq(x.profile, y.profile);
  };
  // xs ⊑ ys
  auto covered = [&](const Vec& xs, const Vec& ys, bool counted) {
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (const auto& x : xs[j]) {
        const bool ok = std::any_of(ys[j].begin(), ys[j].end(), [&](const Item& y) {
          if (counted) ++stats.comparisons;
          return ops.leq(y.profile, x.profile);
        });
        if (!ok) return false;
      }
    return true;
  };

  const auto& g = sys.grammar;
  const std::size_t n = g.num_vars();
  Vec cur(n);
  std::size_t k = 0;
  for (;;) {
    Vec prev = std::move(cur);
    if (k >= opts.iteration_cap)
      throw ResourceError("antichain iteration exceeded the cap of " + std::to_string(opts.iteration_cap) +
                          " applications");
    Vec raw(n);
    std::size_t size = 0;
    for (const auto& p : g.productions()) {
      auto& dst = raw[p.head];
      if (p.body.empty()) {
        dst.push_back({ops.unit(), {}});
      } else if (p.body.size() == 1) {
        dst.push_back({ops.of_symbol(p.body[0].id), Word{p.body[0].id}});
      } else if constexpr (kCtx) {
        for (const auto& x : prev[p.body[0].id])
          for (const auto& y : prev[p.body[1].id]) dst.push_back({ops.compose(x.profile, y.profile), concat(x.witness, y.witness)});
      } else {
        const Symbol a = p.body[1].id;
        for (const auto& x : prev[p.body[0].id]) {
          Word w = x.witness;
          w.push_back(a);
          dst.push_back({ops.step(x.profile, a), std::move(w)});
        }
      }
      size += dst.size();
      if (size > opts.word_budget)
        throw ResourceError("antichain iterate exceeded the budget of " + std::to_string(opts.word_budget) + " items");
    }
    ++k;
    stats.words_generated += size;
    cur.assign(n, {});
    std::vector<std::size_t> sizes(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto kept = antichain_indices(raw[j], leq, [](const Item& x, const Item& y) {
        return shortlex_less(x.witness, y.witness);
      });
      stats.pruned += raw[j].size() - kept.size();
      for (std::size_t i : kept) cur[j].push_back(std::move(raw[j][i]));
      sizes[j] = cur[j].size();
    }
    if (opts.on_antichain_iterate) opts.on_antichain_iterate(k, sizes);
    if (opts.check_growth && !covered(prev, cur, false))
      throw InvariantViolation("antichain iterate " + std::to_string(k) + " does not cover its predecessor");
    if (covered(cur, prev, true)) {
      stats.iterations = k - 1;
      stats.f_applications = k;
      return {k - 1, k, std::move(prev), std::move(sys), stats};
    }
  }
}

template <class Ops>
Verdict antichain_verdict(const Cfg& g, const Nfa& a, const Ops& ops, AntichainRun<ProfileOf<Ops>> run) {
  Verdict v;
  v.stats = run.stats;
  auto& items = run.stable[run.system.grammar.start()];
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& x, const auto& y) { return shortlex_less(x.witness, y.witness); });
  for (const auto& item : items) {
    ++v.stats.membership_queries;
    if (!ops.accepts(item.profile)) {
      const Word& w = item.witness;
      if (!(ops.of_word(w) == item.profile) || !derives(g, w) || run_membership(a, w))
        throw InvariantViolation("antichain engine produced an invalid counterexample");
      v.holds = false;
      v.counterexample = w;
      break;
    }
  }
  return v;
}

}  // namespace detail

// Antichain runs exposed for inspection; the ops must refer to `a`.
inline AntichainRun<CtxProfile> antichain_until_stable_ctx(const Cfg& g, const Nfa& a, const EngineOptions& opts = {}) {
  detail::check_same_alphabet(g.alphabet(), a.alphabet(), "automaton");
  return detail::antichain_until_stable(prepare_system(g, false), CtxProfileOps(a), opts);
}

inline AntichainRun<PostProfile> antichain_until_stable_post(const Cfg& g, const Nfa& a,
                                                             const EngineOptions& opts = {}) {
  detail::check_same_alphabet(g.alphabet(), a.alphabet(), "automaton");
  auto sys = prepare_system(g, true);
  if (sys.form != FixpointForm::RightRegular) throw InputError("post antichains need a right-regular grammar");
  return detail::antichain_until_stable(std::move(sys), PostProfileOps(a), opts);
}

// Words dropped in favour of their profiles. Right-regular grammars use
// post profiles unless `profile_kind` asks for contexts; other grammars
// always use contexts.
inline Verdict decide_inclusion_antichain(const Cfg& g, const Nfa& a, const EngineOptions& opts = {},
                                          std::optional<QuasiorderKind> profile_kind = std::nullopt) {
  detail::check_same_alphabet(g.alphabet(), a.alphabet(), "automaton");
  if (profile_kind && !is_state_based(*profile_kind))
    throw UnsupportedKindError(std::string("the antichain engine cannot use the ") + to_string(*profile_kind) +
                               " quasiorder");
  const bool rr = classification(g).right_regular;
  const bool use_post = profile_kind ? *profile_kind == QuasiorderKind::StatePost : rr;
  if (use_post) {
    if (!rr) throw InputError("the post quasiorder is only right-monotonic and needs a right-regular grammar");
    const PostProfileOps ops(a);
    return detail::antichain_verdict(g, a, ops, antichain_until_stable_post(g, a, opts));
  }
  const CtxProfileOps ops(a);
  return detail::antichain_verdict(g, a, ops, antichain_until_stable_ctx(g, a, opts));
}

}  // namespace qoincl
