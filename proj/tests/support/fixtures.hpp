#pragma once

#include <string_view>

#include "qoincl/qoincl.hpp"

namespace qoincl::testing {

inline Alphabet ab() { return Alphabet{"a", "b"}; }

// a*b*, states p (initial) and q, both accepting.
inline Nfa fig1_automaton() {
  return parse_automaton(R"(
alphabet: a b
states: p q
initial: p
final: p q
p a p
p b q
q b q
)");
}

// (ab)*
inline Nfa abstar_automaton() {
  return parse_automaton(R"(
alphabet: a b
states: s t
initial: s
final: s
s a t
t b s
)");
}

// a^n b^n in CNF: X1 -> ε | X2 X3, X2 -> a, X3 -> X1 X4, X4 -> b.
inline Cfg example1_cnf() {
  return parse_grammar(R"(
vars: X1 X2 X3 X4
start: X1
X1 -> EPS
X1 -> X2 X3
X2 -> a
X3 -> X1 X4
X4 -> b
)",
                       ab());
}

// X1 -> ε | a X1 b
inline Cfg example1_plain() {
  return parse_grammar("vars: X1\nX1 -> EPS | a X1 b\n", ab());
}

inline Word w(std::string_view text) { return ab().parse_word(text); }

inline Word repeat(std::string_view sym, std::size_t n) {
  Word out;
  const Symbol s = ab().at(sym);
  out.assign(n, s);
  return out;
}

inline Word anbn(std::size_t n) { return concat(repeat("a", n), repeat("b", n)); }

}  // namespace qoincl::testing
