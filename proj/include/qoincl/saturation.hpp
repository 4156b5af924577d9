#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qoincl/automata.hpp"
#include "qoincl/bitset.hpp"
#include "qoincl/engine.hpp"
#include "qoincl/grammar.hpp"

namespace qoincl {

struct VarTransition {
  State from;
  Var var;
  State to;
  friend bool operator==(const VarTransition&, const VarTransition&) = default;
};

// Base automaton plus variable-labelled transitions. Once saturated it
// accepts pre*(L(A)) over V ∪ Σ.
class SaturatedAutomaton {
 public:
  SaturatedAutomaton(const Nfa& base, std::size_t num_vars)
      : base_(&base), rel_(num_vars, BitMatrix(base.num_states())) {}

  const Nfa& base() const { return *base_; }
  std::size_t num_vars() const { return rel_.size(); }
  bool has(State q, Var x, State q2) const { return rel_.at(x).test(q, q2); }
  // {(q, q') | q --x--> q'}
  const BitMatrix& relation(Var x) const { return rel_.at(x); }
  // Added transitions in insertion order.
  const std::vector<VarTransition>& added() const { return added_; }

  bool add(State q, Var x, State q2) {
    if (rel_.at(x).test(q, q2)) return false;
    rel_[x].set(q, q2);
    added_.push_back({q, x, q2});
    return true;
  }

  // States reached from `from` by reading the sentential form `alpha`.
  BitSet run(BitSet from, const std::vector<GSym>& alpha) const {
    for (const auto& s : alpha) {
      if (s.is_var)
        from = rel_.at(s.id).image(from);
      else
        from = post_set(*base_, std::move(from), Word{s.id});
    }
    return from;
  }

  bool accepts(const std::vector<GSym>& alpha) const {
    BitSet init(base_->num_states());
    init.set(base_->initial());
    return run(std::move(init), alpha).intersects(base_->finals());
  }

 private:
  const Nfa* base_;
  std::vector<BitMatrix> rel_;
  std::vector<VarTransition> added_;
};

// Least fixpoint of: X -> β ∈ P and q --β-->* q' ⇒ add q --X--> q'.
// Worklist over partial matches (production, position, origin, current);
// each new transition wakes only the matches waiting on it. The result
// borrows `a`.
inline SaturatedAutomaton saturate(const Nfa& a, const Cfg& g) {
  if (!(a.alphabet() == g.alphabet())) throw InputError("alphabet mismatch between grammar and automaton");
  const std::size_t n = a.num_states();
  const auto& prods = g.productions();
  SaturatedAutomaton sat(a, g.num_vars());

  struct Item {
    std::uint32_t prod;
    std::uint32_t pos;
    State origin;
    State at;
  };
  std::vector<std::size_t> base_offset(prods.size() + 1, 0);
  for (std::size_t i = 0; i < prods.size(); ++i) base_offset[i + 1] = base_offset[i] + (prods[i].body.size() + 1);
  auto item_id = [&](const Item& it) -> std::uint64_t {
    return ((static_cast<std::uint64_t>(base_offset[it.prod] + it.pos) * n) + it.origin) * n + it.at;
  };

  std::unordered_set<std::uint64_t> seen;
  std::vector<Item> work;
  // waiting[x * n + q]: matches that next read variable x from state q
  std::vector<std::vector<Item>> waiting(g.num_vars() * n);

  auto push = [&](Item it) {
    if (seen.insert(item_id(it)).second) work.push_back(it);
  };
  for (std::uint32_t p = 0; p < prods.size(); ++p)
    for (State q = 0; q < n; ++q) push({p, 0, q, q});

  while (!work.empty()) {
    const Item it = work.back();
    work.pop_back();
    const auto& body = prods[it.prod].body;
    if (it.pos == body.size()) {
      const Var x = prods[it.prod].head;
      if (sat.add(it.origin, x, it.at))
        for (const auto& w : waiting[x * n + it.origin]) push({w.prod, w.pos + 1, w.origin, it.at});
      continue;
    }
    const GSym s = body[it.pos];
    if (!s.is_var) {
      a.successors(it.at, s.id).for_each(
          [&](std::size_t q2) { push({it.prod, it.pos + 1, it.origin, static_cast<State>(q2)}); });
    } else {
      waiting[s.id * n + it.at].push_back(it);
      for (State q2 = 0; q2 < n; ++q2)
        if (sat.has(it.at, s.id, q2)) push({it.prod, it.pos + 1, it.origin, q2});
    }
  }
  return sat;
}

struct SlpExpansion {
  enum class Status { Expanded, Overflow, Empty };
  Status status = Status::Empty;
  Word word;
  std::uint64_t length = 0;  // saturates at UINT64_MAX
};

// Length of the word derived by each SLP variable; nullopt for variables
// deriving nothing. Saturating arithmetic.
inline std::vector<std::optional<std::uint64_t>> slp_lengths(const Cfg& g) {
  if (!is_slp(g)) throw InputError("grammar is not a straight-line program");
  const std::size_t nv = g.num_vars();
  std::vector<std::optional<std::uint64_t>> len(nv);
  std::vector<bool> done(nv, false);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();

  // Iterative post-order over the acyclic dependency graph.
  for (Var root = 0; root < nv; ++root) {
    if (done[root]) continue;
    std::vector<std::pair<Var, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [v, expanded] = stack.back();
      stack.pop_back();
      if (done[v]) continue;
      const auto& ps = g.productions_of(v);
      if (!expanded) {
        stack.emplace_back(v, true);
        if (!ps.empty())
          for (const auto& s : g.productions()[ps[0]].body)
            if (s.is_var && !done[s.id]) stack.emplace_back(s.id, false);
        continue;
      }
      done[v] = true;
      if (ps.empty()) continue;
      std::uint64_t total = 0;
      bool productive = true;
      for (const auto& s : g.productions()[ps[0]].body) {
        std::uint64_t l = 1;
        if (s.is_var) {
          if (!len[s.id]) {
            productive = false;
            break;
          }
          l = *len[s.id];
        }
        total = (total > kMax - l) ? kMax : total + l;
      }
      if (productive) len[v] = total;
    }
  }
  return len;
}

// The unique word of an SLP, computed only when its length is at most `cap`.
inline SlpExpansion expand_slp(const Cfg& g, std::uint64_t cap) {
  const auto lengths = slp_lengths(g);
  SlpExpansion out;
  if (!lengths[g.start()]) return out;
  out.length = *lengths[g.start()];
  if (out.length > cap) {
    out.status = SlpExpansion::Status::Overflow;
    return out;
  }
  out.status = SlpExpansion::Status::Expanded;
  out.word.reserve(out.length);
  std::vector<GSym> stack{GSym::var(g.start())};
  while (!stack.empty()) {
    const GSym s = stack.back();
    stack.pop_back();
    if (!s.is_var) {
      out.word.push_back(s.id);
      continue;
    }
    const auto& body = g.productions()[g.productions_of(s.id)[0]].body;
    for (auto it = body.rbegin(); it != body.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

inline constexpr std::uint64_t kDefaultExpansionCap = std::uint64_t{1} << 16;

// L(G) = {w} ⊆ L(A) iff some q_I --X_start--> f, f final, after saturation.
// The word itself is only expanded to report a counterexample.
inline Verdict decide_slp_inclusion(const Cfg& g, const Nfa& a, std::uint64_t expansion_cap = kDefaultExpansionCap) {
  if (!(a.alphabet() == g.alphabet())) throw InputError("alphabet mismatch between grammar and automaton");
  if (!is_slp(g)) throw InputError("grammar is not a straight-line program");
  Verdict v;
  if (!productive_vars(g)[g.start()]) return v;

  const auto sat = saturate(a, g);
  v.stats.words_generated = 1;
  v.stats.membership_queries = 1;
  v.holds = sat.relation(g.start()).row(a.initial()).intersects(a.finals());
  if (v.holds) return v;

  const auto exp = expand_slp(g, expansion_cap);
  if (exp.status == SlpExpansion::Status::Overflow) {
    v.counterexample_unavailable = true;
    return v;
  }
  if (exp.status != SlpExpansion::Status::Expanded || run_membership(a, exp.word))
    throw InvariantViolation("saturation verdict disagrees with the expanded word");
  v.counterexample = exp.word;
  return v;
}

}  // namespace qoincl
