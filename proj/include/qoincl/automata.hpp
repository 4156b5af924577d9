#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qoincl/bitset.hpp"
#include "qoincl/foundations.hpp"

namespace qoincl {

using State = std::uint32_t;

struct Transition {
  State from;
  Symbol symbol;
  State to;
};

namespace detail {
inline std::uint64_t next_automaton_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}
}  // namespace detail

// Epsilon-free nondeterministic finite automaton. Immutable once built.
class Nfa {
 public:
  Nfa(Alphabet alphabet, std::vector<std::string> state_names, State initial,
      const std::vector<State>& finals, const std::vector<Transition>& transitions)
      : alphabet_(std::move(alphabet)),
        names_(std::move(state_names)),
        initial_(initial),
        finals_(names_.size()),
        id_(detail::next_automaton_id()) {
    const std::size_t n = names_.size();
    if (n == 0) throw InputError("automaton needs at least one state");
    if (alphabet_.empty()) throw InputError("automaton alphabet is empty");
    if (initial_ >= n) throw InputError("initial state out of range");
    for (State f : finals) {
      if (f >= n) throw InputError("final state out of range");
      finals_.set(f);
    }
    succ_.assign(n * alphabet_.size(), BitSet(n));
    symbol_rel_.assign(alphabet_.size(), BitMatrix(n));
    for (const auto& t : transitions) {
      if (t.from >= n || t.to >= n) throw InputError("transition mentions an unknown state");
      if (t.symbol >= alphabet_.size()) throw InputError("transition mentions an unknown symbol");
      succ_[t.from * alphabet_.size() + t.symbol].set(t.to);
      symbol_rel_[t.symbol].set(t.from, t.to);
    }
  }

  // Unnamed states 0..n-1.
  Nfa(Alphabet alphabet, std::size_t num_states, State initial, const std::vector<State>& finals,
      const std::vector<Transition>& transitions)
      : Nfa(std::move(alphabet), default_names(num_states), initial, finals, transitions) {}

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  State initial() const { return initial_; }
  const BitSet& finals() const { return finals_; }
  bool is_final(State q) const { return finals_.test(q); }
  const std::string& state_name(State q) const { return names_.at(q); }
  const std::vector<std::string>& state_names() const { return names_; }
  std::uint64_t id() const { return id_; }

  const BitSet& successors(State q, Symbol a) const { return succ_[q * alphabet_.size() + a]; }
  // Relation {(q, q') | q --a--> q'}.
  const BitMatrix& symbol_relation(Symbol a) const { return symbol_rel_.at(a); }

  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    for (State q = 0; q < num_states(); ++q)
      for (Symbol a = 0; a < alphabet_.size(); ++a)
        successors(q, a).for_each([&](std::size_t t) { out.push_back({q, a, static_cast<State>(t)}); });
    return out;
  }

  std::vector<State> final_states() const {
    std::vector<State> out;
    finals_.for_each([&](std::size_t q) { out.push_back(static_cast<State>(q)); });
    return out;
  }

  // Same automaton over a larger alphabet that extends this one; the new
  // symbols have no transitions.
  Nfa widened(const Alphabet& superset) const {
    if (superset.size() < alphabet_.size()) throw InputError("alphabet widening must not drop symbols");
    for (Symbol a = 0; a < alphabet_.size(); ++a)
      if (superset.name(a) != alphabet_.name(a)) throw InputError("alphabet widening must keep symbol order");
    return Nfa(superset, names_, initial_, final_states(), transitions());
  }

 private:
  static std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  Alphabet alphabet_;
  std::vector<std::string> names_;
  State initial_;
  BitSet finals_;
  std::vector<BitSet> succ_;
  std::vector<BitMatrix> symbol_rel_;
  std::uint64_t id_;
};

// ctx(u) = {(q, q') | q --u-->* q'} over a reference automaton.
struct CtxProfile {
  std::uint64_t automaton = 0;
  BitMatrix pairs;

  bool contains(State p, State q) const { return pairs.test(p, q); }
  bool leq(const CtxProfile& other) const { return pairs.is_subset_of(other.pairs); }
  std::size_t size() const { return pairs.count(); }
  friend bool operator==(const CtxProfile&, const CtxProfile&) = default;
};

// post(u) = {q | q_I --u-->* q}.
struct PostProfile {
  std::uint64_t automaton = 0;
  BitSet states;

  bool leq(const PostProfile& other) const { return states.is_subset_of(other.states); }
  friend bool operator==(const PostProfile&, const PostProfile&) = default;
};

inline BitSet post_set(const Nfa& a, BitSet from, const Word& u) {
  for (Symbol s : u) {
    BitSet next(a.num_states());
    from.for_each([&](std::size_t q) { next |= a.successors(static_cast<State>(q), s); });
    from = std::move(next);
    if (from.none()) break;
  }
  return from;
}

inline PostProfile post_profile(const Nfa& a, const Word& u) {
  check_word(a.alphabet(), u);
  BitSet init(a.num_states());
  init.set(a.initial());
  return {a.id(), post_set(a, std::move(init), u)};
}

// One-symbol extension of a post profile.
inline PostProfile post_step(const Nfa& a, const PostProfile& p, Symbol s) {
  if (p.automaton != a.id()) throw InputError("post profile belongs to a different automaton");
  if (s >= a.alphabet().size()) throw InputError("symbol outside the automaton alphabet");
  return {a.id(), post_set(a, p.states, Word{s})};
}

inline bool run_membership(const Nfa& a, const Word& u) {
  return post_profile(a, u).states.intersects(a.finals());
}

inline CtxProfile identity_ctx(const Nfa& a) { return {a.id(), BitMatrix::identity(a.num_states())}; }

inline CtxProfile symbol_ctx(const Nfa& a, Symbol s) {
  if (s >= a.alphabet().size()) throw InputError("symbol outside the automaton alphabet");
  return {a.id(), a.symbol_relation(s)};
}

inline CtxProfile ctx_profile(const Nfa& a, const Word& u) {
  check_word(a.alphabet(), u);
  CtxProfile c = identity_ctx(a);
  for (Symbol s : u) c.pairs = c.pairs.compose(a.symbol_relation(s));
  return c;
}

// ctx(uv) from ctx(u) and ctx(v).
inline CtxProfile compose_ctx(const CtxProfile& c1, const CtxProfile& c2) {
  if (c1.automaton != c2.automaton || c1.pairs.dim() != c2.pairs.dim())
    throw InputError("context profiles refer to different automata");
  return {c1.automaton, c1.pairs.compose(c2.pairs)};
}

// u in L(A) iff ctx(u) meets {q_I} x F.
inline bool ctx_accepts(const Nfa& a, const CtxProfile& c) {
  if (c.automaton != a.id()) throw InputError("context profile belongs to a different automaton");
  return c.pairs.row(a.initial()).intersects(a.finals());
}

inline bool post_accepts(const Nfa& a, const PostProfile& p) {
  if (p.automaton != a.id()) throw InputError("post profile belongs to a different automaton");
  return p.states.intersects(a.finals());
}

// Complete deterministic automaton.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t num_states, State initial, std::vector<bool> finals,
      std::vector<State> delta, std::vector<BitSet> subsets = {})
      : alphabet_(std::move(alphabet)),
        n_(num_states),
        initial_(initial),
        finals_(std::move(finals)),
        delta_(std::move(delta)),
        subsets_(std::move(subsets)) {
    if (n_ == 0) throw InputError("DFA needs at least one state");
    if (initial_ >= n_) throw InputError("DFA initial state out of range");
    if (finals_.size() != n_) throw InputError("DFA final-state vector has the wrong size");
    if (delta_.size() != n_ * alphabet_.size()) throw InputError("DFA transition table is not total");
    for (State t : delta_)
      if (t >= n_) throw InputError("DFA transition target out of range");
    if (!subsets_.empty() && subsets_.size() != n_) throw InputError("DFA subset labels have the wrong size");
    for (State q = 0; q < n_ && !sink_; ++q) {
      if (!subsets_.empty()) {
        if (subsets_[q].none()) sink_ = q;
        continue;
      }
      bool absorbing = !finals_[q];
      for (Symbol a = 0; a < alphabet_.size() && absorbing; ++a) absorbing = next(q, a) == q;
      if (absorbing) sink_ = q;
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return n_; }
  State initial() const { return initial_; }
  bool is_final(State q) const { return finals_.at(q); }
  State next(State q, Symbol a) const { return delta_[q * alphabet_.size() + a]; }
  State run(State q, const Word& u) const {
    for (Symbol a : u) q = next(q, a);
    return q;
  }
  bool accepts(const Word& u) const { return is_final(run(initial_, u)); }
  // Non-final absorbing state, when one exists (for determinized automata:
  // the empty subset).
  std::optional<State> sink() const { return sink_; }
  // NFA state subset each DFA state stands for (empty unless determinized).
  const std::vector<BitSet>& subsets() const { return subsets_; }

 private:
  Alphabet alphabet_;
  std::size_t n_;
  State initial_;
  std::vector<bool> finals_;
  std::vector<State> delta_;
  std::vector<BitSet> subsets_;
  std::optional<State> sink_;
};

struct BitSetHash {
  std::size_t operator()(const BitSet& s) const noexcept { return s.hash(); }
};

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 20;

// Subset construction over reachable subsets. The empty subset, when
// reachable, becomes the sink.
inline Dfa determinize(const Nfa& a, std::size_t max_states = kDefaultSubsetCap) {
  const std::size_t sigma = a.alphabet().size();
  std::vector<BitSet> subsets;
  std::unordered_map<BitSet, State, BitSetHash> index;
  std::vector<State> delta;
  std::vector<bool> finals;

  auto intern = [&](BitSet s) -> State {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (subsets.size() >= max_states)
      throw ResourceError("determinization exceeded " + std::to_string(max_states) + " subset states");
    const auto id = static_cast<State>(subsets.size());
    index.emplace(s, id);
    finals.push_back(s.intersects(a.finals()));
    subsets.push_back(std::move(s));
    return id;
  };

  BitSet init(a.num_states());
  init.set(a.initial());
  intern(std::move(init));
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (Symbol s = 0; s < sigma; ++s) {
      BitSet next(a.num_states());
      subsets[cur].for_each([&](std::size_t q) { next |= a.successors(static_cast<State>(q), s); });
      const State t = intern(std::move(next));
      delta.push_back(t);
    }
  }
  const std::size_t n = subsets.size();
  return Dfa(a.alphabet(), n, 0, std::move(finals), std::move(delta), std::move(subsets));
}

// rel(q1, q2) iff L(q1) ⊆ L(q2) in a complete DFA. Greatest fixpoint:
// start from pairs respecting finality, then drop pairs with a successor
// pair already dropped.
inline BitMatrix residual_inclusion_table(const Dfa& d) {
  const std::size_t n = d.num_states();
  const std::size_t sigma = d.alphabet().size();
  BitMatrix rel(n);
  std::deque<std::pair<State, State>> removed;
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) {
      if (d.is_final(p) && !d.is_final(q))
        removed.emplace_back(p, q);
      else
        rel.set(p, q);
    }

  // pred[a][r] = states reaching r on a
  std::vector<std::vector<std::vector<State>>> pred(sigma, std::vector<std::vector<State>>(n));
  for (State p = 0; p < n; ++p)
    for (Symbol a = 0; a < sigma; ++a) pred[a][d.next(p, a)].push_back(p);

  while (!removed.empty()) {
    auto [r1, r2] = removed.front();
    removed.pop_front();
    for (Symbol a = 0; a < sigma; ++a)
      for (State p1 : pred[a][r1])
        for (State p2 : pred[a][r2])
          if (rel.test(p1, p2)) {
            rel.reset(p1, p2);
            removed.emplace_back(p1, p2);
          }
  }
  return rel;
}

}  // namespace qoincl
