#pragma once

// Brute-force reference procedures. Used by the tests and the `debug`
// subcommand; never on a decision path.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "qoincl/automata.hpp"
#include "qoincl/bitset.hpp"
#include "qoincl/foundations.hpp"
#include "qoincl/grammar.hpp"

namespace qoincl::oracle {

struct EnumerationBudget {
  std::size_t max_len = 8;
  std::size_t max_count = 1'000'000;
};

struct Enumeration {
  std::vector<Word> words;  // shortlex order
  bool truncated = false;
};

// L(G) ∩ Σ^{≤max_len} as the least fixpoint of the bounded derivation
// step, read directly off the productions (no normalization).
inline Enumeration enumerate_words(const Cfg& g, const EnumerationBudget& b) {
  const std::size_t nv = g.num_vars();
  // by_len[v][l]: words of length l derived from v
  std::vector<std::vector<std::vector<Word>>> by_len(nv, std::vector<std::vector<Word>>(b.max_len + 1));
  std::vector<std::unordered_set<Word, WordHash>> seen(nv);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      std::vector<Word> produced;
      Word prefix;
      // depth-first product over the body
      auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == p.body.size()) {
          produced.push_back(prefix);
          return;
        }
        const GSym s = p.body[pos];
        if (!s.is_var) {
          if (prefix.size() + 1 > b.max_len) return;
          prefix.push_back(s.id);
          self(self, pos + 1);
          prefix.pop_back();
          return;
        }
        const std::size_t room = b.max_len - prefix.size();
        for (std::size_t l = 0; l <= room; ++l)
          for (std::size_t i = 0; i < by_len[s.id][l].size(); ++i) {
            const Word& w = by_len[s.id][l][i];
            prefix.insert(prefix.end(), w.begin(), w.end());
            self(self, pos + 1);
            prefix.resize(prefix.size() - w.size());
          }
      };
      rec(rec, 0);
      for (auto& w : produced)
        if (seen[p.head].insert(w).second) {
          by_len[p.head][w.size()].push_back(std::move(w));
          changed = true;
        }
    }
  }

  Enumeration out;
  for (const auto& bucket : by_len[g.start()])
    for (const auto& w : bucket) out.words.push_back(w);
  std::sort(out.words.begin(), out.words.end(), shortlex_less);
  if (out.words.size() > b.max_count) {
    out.words.resize(b.max_count);
    out.truncated = true;
  }
  return out;
}

struct BruteVerdict {
  bool holds_up_to_bound = true;
  std::optional<Word> counterexample;  // shortlex-least
  bool truncated = false;
};

inline BruteVerdict brute_inclusion(const Cfg& g, const Nfa& a, const EnumerationBudget& b) {
  const auto e = enumerate_words(g, b);
  BruteVerdict v;
  v.truncated = e.truncated;
  for (const auto& w : e.words)
    if (!run_membership(a, w)) {
      v.holds_up_to_bound = false;
      v.counterexample = w;
      break;
    }
  return v;
}

// All words over an alphabet of size `sigma` with length ≤ max_len, shortlex.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol a = 0; a < sigma; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

// Saturation by rereading every production from every state until nothing
// changes. One relation per variable.
inline std::vector<BitMatrix> naive_saturate(const Nfa& a, const Cfg& g) {
  const std::size_t n = a.num_states();
  std::vector<BitMatrix> rel(g.num_vars(), BitMatrix(n));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions())
      for (State q = 0; q < n; ++q) {
        BitSet cur(n);
        cur.set(q);
        for (const auto& s : p.body) {
          BitSet next(n);
          cur.for_each([&](std::size_t r) {
            if (s.is_var) {
              for (State t = 0; t < n; ++t)
                if (rel[s.id].test(r, t)) next.set(t);
            } else {
              next |= a.successors(static_cast<State>(r), s.id);
            }
          });
          cur = std::move(next);
        }
        cur.for_each([&](std::size_t t) {
          if (!rel[p.head].test(q, t)) {
            rel[p.head].set(q, t);
            changed = true;
          }
        });
      }
  }
  return rel;
}

// Accepts w from a set of NFA states.
inline bool accepts_from(const Nfa& a, const BitSet& from, const Word& w) {
  return post_set(a, from, w).intersects(a.finals());
}

// L(q1) ⊆ L(q2) in a DFA, checked on all words up to max_len. Runs both
// states in lockstep, one length level at a time.
inline bool residual_leq_bounded(const Dfa& d, State q1, State q2, std::size_t max_len) {
  const std::size_t n = d.num_states();
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<State, State>> level{{q1, q2}};
  seen[q1 * n + q2] = true;
  for (std::size_t len = 0; !level.empty(); ++len) {
    std::vector<std::pair<State, State>> next;
    for (const auto& [x, y] : level) {
      if (d.is_final(x) && !d.is_final(y)) return false;
      if (len == max_len) continue;
      for (Symbol a = 0; a < d.alphabet().size(); ++a) {
        const State x2 = d.next(x, a), y2 = d.next(y, a);
        if (!seen[x2 * n + y2]) {
          seen[x2 * n + y2] = true;
          next.emplace_back(x2, y2);
        }
      }
    }
    level = std::move(next);
  }
  return true;
}

// u ≤ v in the Myhill order, quantifying over contexts (w, w') with
// |w|, |w'| ≤ k. Runs the NFA only.
inline bool myhill_leq_bounded(const Nfa& a, const Word& u, const Word& v, std::size_t k) {
  const auto words = all_words(a.alphabet().size(), k);
  std::unordered_set<BitSet, BitSetHash> prefixes;
  BitSet init(a.num_states());
  init.set(a.initial());
  for (const auto& w : words) prefixes.insert(post_set(a, init, w));
  for (const auto& s : prefixes) {
    const BitSet su = post_set(a, s, u);
    const BitSet sv = post_set(a, s, v);
    for (const auto& w2 : words)
      if (accepts_from(a, su, w2) && !accepts_from(a, sv, w2)) return false;
  }
  return true;
}

// u ≤ v in the Nerode order, quantifying over suffixes of length ≤ k.
inline bool nerode_leq_bounded(const Nfa& a, const Word& u, const Word& v, std::size_t k) {
  for (const auto& w : all_words(a.alphabet().size(), k))
    if (run_membership(a, concat(u, w)) && !run_membership(a, concat(v, w))) return false;
  return true;
}

}  // namespace qoincl::oracle
