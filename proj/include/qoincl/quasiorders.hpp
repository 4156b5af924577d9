#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qoincl/automata.hpp"
#include "qoincl/bitset.hpp"
#include "qoincl/foundations.hpp"

namespace qoincl {

enum class QuasiorderKind { StateCtx, StatePost, Myhill, Nerode };

inline const char* to_string(QuasiorderKind k) {
  switch (k) {
    case QuasiorderKind::StateCtx: return "ctx";
    case QuasiorderKind::StatePost: return "post";
    case QuasiorderKind::Myhill: return "myhill";
    case QuasiorderKind::Nerode: return "nerode";
  }
  return "?";
}

inline std::optional<QuasiorderKind> parse_quasiorder_kind(std::string_view s) {
  if (s == "ctx") return QuasiorderKind::StateCtx;
  if (s == "post") return QuasiorderKind::StatePost;
  if (s == "myhill") return QuasiorderKind::Myhill;
  if (s == "nerode") return QuasiorderKind::Nerode;
  return std::nullopt;
}

// Post and Nerode are only right-monotonic, so they may only drive the
// right-regular fixpoint function.
inline bool is_two_sided(QuasiorderKind k) { return k == QuasiorderKind::StateCtx || k == QuasiorderKind::Myhill; }
inline bool is_state_based(QuasiorderKind k) {
  return k == QuasiorderKind::StateCtx || k == QuasiorderKind::StatePost;
}

// Finite summary of a word that decides the quasiorder: profile bits for
// the state-based kinds, DFA states for Nerode/Myhill.
struct OrderKey {
  std::vector<std::uint64_t> data;
  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct OrderKeyHash {
  std::size_t operator()(const OrderKey& k) const noexcept {
    std::size_t h = k.data.size();
    for (auto x : k.data) h = (h ^ x) * 0x100000001B3ull + 0x9E3779B9u;
    return h;
  }
};

// A word quasiorder derived from an automaton for M.
//   ctx:    ctx(u) ⊆ ctx(v)
//   post:   post(u) ⊆ post(v)
//   nerode: L(δ(q_I,u)) ⊆ L(δ(q_I,v)) in the determinized automaton
//   myhill: L(δ(s,u)) ⊆ L(δ(s,v)) for every reachable DFA state s
class Quasiorder {
 public:
  Quasiorder(QuasiorderKind kind, Nfa reference, std::size_t subset_cap = kDefaultSubsetCap)
      : kind_(kind), nfa_(std::move(reference)) {
    if (!is_state_based(kind_)) {
      dfa_.emplace(determinize(nfa_, subset_cap));
      residual_ = residual_inclusion_table(*dfa_);
    }
  }

  QuasiorderKind kind() const { return kind_; }
  const Nfa& reference() const { return nfa_; }
  const Alphabet& alphabet() const { return nfa_.alphabet(); }
  const std::optional<Dfa>& dfa() const { return dfa_; }
  const BitMatrix& residual_table() const { return residual_; }

  OrderKey key(const Word& u) const {
    check_word(alphabet(), u);
    switch (kind_) {
      case QuasiorderKind::StateCtx: return {ctx_profile(nfa_, u).pairs.blocks()};
      case QuasiorderKind::StatePost: return {post_profile(nfa_, u).states.blocks()};
      case QuasiorderKind::Nerode: return {{dfa_->run(dfa_->initial(), u)}};
      case QuasiorderKind::Myhill: {
        std::vector<std::uint64_t> f(dfa_->num_states());
        for (State s = 0; s < f.size(); ++s) f[s] = s;
        for (Symbol a : u)
          for (auto& x : f) x = dfa_->next(static_cast<State>(x), a);
        return {std::move(f)};
      }
    }
    return {};
  }

  bool leq(const OrderKey& a, const OrderKey& b) const {
    switch (kind_) {
      case QuasiorderKind::StateCtx:
      case QuasiorderKind::StatePost:
        for (std::size_t i = 0; i < a.data.size(); ++i)
          if ((a.data[i] & ~b.data[i]) != 0) return false;
        return true;
      case QuasiorderKind::Nerode:
        return residual_.test(a.data[0], b.data[0]);
      case QuasiorderKind::Myhill:
        for (std::size_t s = 0; s < a.data.size(); ++s)
          if (!residual_.test(a.data[s], b.data[s])) return false;
        return true;
    }
    return false;
  }

  // u ≲ v
  bool compare(const Word& u, const Word& v) const { return leq(key(u), key(v)); }

 private:
  QuasiorderKind kind_;
  Nfa nfa_;
  std::optional<Dfa> dfa_;
  BitMatrix residual_;
};

// Checks u ∈ M ∧ u ≲ v ⇒ v ∈ M on the given pairs.
inline bool is_M_preserving_sample(const Quasiorder& q, const std::vector<std::pair<Word, Word>>& samples) {
  for (const auto& [u, v] : samples)
    if (run_membership(q.reference(), u) && q.compare(u, v) && !run_membership(q.reference(), v)) return false;
  return true;
}

// Profile algebra behind the ctx order: words replaced by their contexts.
class CtxProfileOps {
 public:
  explicit CtxProfileOps(const Nfa& a) : nfa_(&a) {}
  CtxProfile unit() const { return identity_ctx(*nfa_); }
  CtxProfile of_symbol(Symbol a) const { return symbol_ctx(*nfa_, a); }
  CtxProfile compose(const CtxProfile& x, const CtxProfile& y) const { return compose_ctx(x, y); }
  bool accepts(const CtxProfile& c) const { return ctx_accepts(*nfa_, c); }
  bool leq(const CtxProfile& x, const CtxProfile& y) const { return x.leq(y); }
  CtxProfile of_word(const Word& u) const { return ctx_profile(*nfa_, u); }
  const Nfa& automaton() const { return *nfa_; }

 private:
  const Nfa* nfa_;
};

// Profile algebra behind the post order. Only single-symbol steps are
// offered: post sets do not compose under concatenation of two words.
class PostProfileOps {
 public:
  explicit PostProfileOps(const Nfa& a) : nfa_(&a) {}
  PostProfile unit() const { return post_profile(*nfa_, {}); }
  PostProfile step(const PostProfile& p, Symbol a) const { return post_step(*nfa_, p, a); }
  PostProfile of_symbol(Symbol a) const { return step(unit(), a); }
  bool accepts(const PostProfile& p) const { return post_accepts(*nfa_, p); }
  bool leq(const PostProfile& x, const PostProfile& y) const { return x.leq(y); }
  PostProfile of_word(const Word& u) const { return post_profile(*nfa_, u); }
  const Nfa& automaton() const { return *nfa_; }

 private:
  const Nfa* nfa_;
};

using ProfileOps = std::variant<CtxProfileOps, PostProfileOps>;

// The returned ops borrow q's automaton.
inline ProfileOps profile_ops(const Quasiorder& q) {
  switch (q.kind()) {
    case QuasiorderKind::StateCtx: return CtxProfileOps(q.reference());
    case QuasiorderKind::StatePost: return PostProfileOps(q.reference());
    default:
      throw UnsupportedKindError(std::string("no profile algebra for the ") + to_string(q.kind()) + " quasiorder");
  }
}

}  // namespace qoincl
