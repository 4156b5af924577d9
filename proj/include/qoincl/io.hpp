#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qoincl/automata.hpp"
#include "qoincl/foundations.hpp"
#include "qoincl/grammar.hpp"

namespace qoincl {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

[[noreturn]] inline void fail_at(std::size_t line_no, const std::string& msg) {
  throw InputError("line " + std::to_string(line_no) + ": " + msg);
}

// "key: values..." header; returns the key when the first token ends with ':'.
inline std::optional<std::string> header_key(const std::vector<std::string>& tokens) {
  if (tokens.empty() || tokens[0].size() < 2 || tokens[0].back() != ':') return std::nullopt;
  return tokens[0].substr(0, tokens[0].size() - 1);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// Line-based automaton format:
//   alphabet: a b
//   states: p q
//   initial: p
//   final: p q
//   p a p          (one transition per line)
inline Nfa parse_automaton(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::vector<std::string> states;
  std::unordered_map<std::string, State> state_index;
  std::optional<State> initial;
  std::vector<State> finals;
  std::vector<Transition> transitions;
  bool seen_states = false, seen_final = false;

  auto lookup_state = [&](std::size_t ln, const std::string& name) {
    auto it = state_index.find(name);
    if (it == state_index.end()) detail::fail_at(ln, "unknown state '" + name + "'");
    return it->second;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    const auto tokens = detail::split_ws(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (auto key = detail::header_key(tokens)) {
      const std::vector<std::string> values(tokens.begin() + 1, tokens.end());
      if (*key == "alphabet") {
        if (alphabet) detail::fail_at(ln, "duplicate 'alphabet:' line");
        if (values.empty()) detail::fail_at(ln, "alphabet must not be empty");
        try {
          alphabet = Alphabet(values);
        } catch (const InputError& e) {
          detail::fail_at(ln, e.what());
        }
      } else if (*key == "states") {
        if (seen_states) detail::fail_at(ln, "duplicate 'states:' line");
        if (values.empty()) detail::fail_at(ln, "states must not be empty");
        seen_states = true;
        for (const auto& s : values) {
          if (!state_index.emplace(s, static_cast<State>(states.size())).second)
            detail::fail_at(ln, "duplicate state '" + s + "'");
          states.push_back(s);
        }
      } else if (*key == "initial") {
        if (!seen_states) detail::fail_at(ln, "'initial:' must follow 'states:'");
        if (initial) detail::fail_at(ln, "duplicate 'initial:' line");
        if (values.size() != 1) detail::fail_at(ln, "exactly one initial state expected");
        initial = lookup_state(ln, values[0]);
      } else if (*key == "final") {
        if (!seen_states) detail::fail_at(ln, "'final:' must follow 'states:'");
        if (seen_final) detail::fail_at(ln, "duplicate 'final:' line");
        seen_final = true;
        for (const auto& s : values) finals.push_back(lookup_state(ln, s));
      } else {
        detail::fail_at(ln, "unknown header '" + *key + ":'");
      }
      continue;
    }
    if (!alphabet || !seen_states) detail::fail_at(ln, "transition before 'alphabet:' and 'states:'");
    if (tokens.size() != 3) detail::fail_at(ln, "transition must be 'state symbol state'");
    const State from = lookup_state(ln, tokens[0]);
    const auto sym = alphabet->find(tokens[1]);
    if (!sym) detail::fail_at(ln, "unknown symbol '" + tokens[1] + "'");
    const State to = lookup_state(ln, tokens[2]);
    transitions.push_back({from, *sym, to});
  }
  if (!alphabet) throw InputError("automaton: missing 'alphabet:' line");
  if (!seen_states) throw InputError("automaton: missing 'states:' line");
  if (!initial) throw InputError("automaton: missing 'initial:' line");
  return Nfa(std::move(*alphabet), std::move(states), *initial, finals, transitions);
}

inline Nfa load_automaton(const std::string& path) { return parse_automaton(detail::read_file(path)); }

inline std::string format_automaton(const Nfa& a) {
  std::ostringstream out;
  out << "alphabet:";
  for (const auto& s : a.alphabet().names()) out << ' ' << s;
  out << "\nstates:";
  for (const auto& s : a.state_names()) out << ' ' << s;
  out << "\ninitial: " << a.state_name(a.initial()) << "\nfinal:";
  for (State f : a.final_states()) out << ' ' << a.state_name(f);
  out << '\n';
  for (const auto& t : a.transitions())
    out << a.state_name(t.from) << ' ' << a.alphabet().name(t.symbol) << ' ' << a.state_name(t.to) << '\n';
  return out.str();
}

// Line-based grammar format:
//   vars: X1 X2
//   start: X1          (optional; defaults to the first variable)
//   X1 -> X2 a | EPS
// Tokens not declared in 'vars:' are terminals. Terminals missing from
// `alphabet` are appended to it, so the returned grammar's alphabet extends
// the one passed in.
inline Cfg parse_grammar(std::string_view text, Alphabet alphabet = {}) {
  std::vector<std::string> vars;
  std::unordered_map<std::string, Var> var_index;
  std::optional<Var> start;
  std::vector<Production> prods;
  bool seen_vars = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    const auto tokens = detail::split_ws(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (auto key = detail::header_key(tokens)) {
      if (*key == "vars") {
        if (seen_vars) detail::fail_at(ln, "duplicate 'vars:' line");
        seen_vars = true;
        if (tokens.size() < 2) detail::fail_at(ln, "at least one variable expected");
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          const auto& v = tokens[i];
          if (v == "EPS" || v == "|" || v == "->") detail::fail_at(ln, "reserved token '" + v + "' used as variable");
          if (!var_index.emplace(v, static_cast<Var>(vars.size())).second)
            detail::fail_at(ln, "duplicate variable '" + v + "'");
          vars.push_back(v);
        }
      } else if (*key == "start") {
        if (!seen_vars) detail::fail_at(ln, "'start:' must follow 'vars:'");
        if (start) detail::fail_at(ln, "duplicate 'start:' line");
        if (tokens.size() != 2) detail::fail_at(ln, "exactly one start variable expected");
        auto it = var_index.find(tokens[1]);
        if (it == var_index.end()) detail::fail_at(ln, "unknown start variable '" + tokens[1] + "'");
        start = it->second;
      } else {
        detail::fail_at(ln, "unknown header '" + *key + ":'");
      }
      continue;
    }
    if (!seen_vars) detail::fail_at(ln, "production before 'vars:'");
    if (tokens.size() < 3 || tokens[1] != "->") detail::fail_at(ln, "production must be 'Var -> body'");
    auto head = var_index.find(tokens[0]);
    if (head == var_index.end()) detail::fail_at(ln, "unknown variable '" + tokens[0] + "'");

    std::vector<std::vector<std::string>> alternatives{{}};
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      if (tokens[i] == "|")
        alternatives.emplace_back();
      else
        alternatives.back().push_back(tokens[i]);
    }
    for (const auto& alt : alternatives) {
      if (alt.empty()) detail::fail_at(ln, "empty alternative (write EPS for the empty body)");
      Production p{head->second, {}};
      if (alt.size() == 1 && alt[0] == "EPS") {
        prods.push_back(std::move(p));
        continue;
      }
      for (const auto& tok : alt) {
        if (tok == "EPS") detail::fail_at(ln, "EPS must stand alone in its alternative");
        if (tok == "->") detail::fail_at(ln, "unexpected '->'");
        if (auto v = var_index.find(tok); v != var_index.end()) {
          p.body.push_back(GSym::var(v->second));
        } else {
          auto sym = alphabet.find(tok);
          p.body.push_back(GSym::term(sym ? *sym : alphabet.add(tok)));
        }
      }
      prods.push_back(std::move(p));
    }
  }
  if (!seen_vars) throw InputError("grammar: missing 'vars:' line");
  return Cfg(std::move(alphabet), std::move(vars), start.value_or(0), std::move(prods));
}

inline Cfg load_grammar(const std::string& path, Alphabet alphabet = {}) {
  return parse_grammar(detail::read_file(path), std::move(alphabet));
}

inline std::string format_grammar(const Cfg& g) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : g.var_names()) out << ' ' << v;
  out << "\nstart: " << g.var_name(g.start()) << '\n';
  for (const auto& p : g.productions()) {
    out << g.var_name(p.head) << " ->";
    if (p.body.empty()) out << " EPS";
    for (const auto& s : p.body) out << ' ' << (s.is_var ? g.var_name(s.id) : g.alphabet().name(s.id));
    out << '\n';
  }
  return out.str();
}

}  // namespace qoincl
