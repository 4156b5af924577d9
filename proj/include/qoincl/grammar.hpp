#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qoincl/foundations.hpp"

namespace qoincl {

using Var = std::uint32_t;

// A body symbol: either a grammar variable or an alphabet symbol.
struct GSym {
  bool is_var = false;
  std::uint32_t id = 0;

  static GSym var(Var v) { return {true, v}; }
  static GSym term(Symbol a) { return {false, a}; }

  friend auto operator<=>(const GSym&, const GSym&) = default;
};

struct Production {
  Var head = 0;
  std::vector<GSym> body;

  friend auto operator<=>(const Production&, const Production&) = default;
};

class Cfg {
 public:
  Cfg(Alphabet alphabet, std::vector<std::string> var_names, Var start, std::vector<Production> productions)
      : alphabet_(std::move(alphabet)), names_(std::move(var_names)), start_(start) {
    if (names_.empty()) throw InputError("grammar needs at least one variable");
    if (start_ >= names_.size()) throw InputError("start variable out of range");
    std::set<std::string> seen_names;
    for (const auto& n : names_) {
      if (n.empty()) throw InputError("variable names must be non-empty");
      if (!seen_names.insert(n).second) throw InputError("duplicate variable '" + n + "'");
    }
    std::set<Production> seen;
    for (auto& p : productions) {
      if (p.head >= names_.size()) throw InputError("production head out of range");
      for (const auto& s : p.body) {
        if (s.is_var && s.id >= names_.size()) throw InputError("production body mentions an unknown variable");
        if (!s.is_var && s.id >= alphabet_.size()) throw InputError("production body mentions an unknown symbol");
      }
      if (seen.insert(p).second) productions_.push_back(std::move(p));
    }
    by_head_.resize(names_.size());
    for (std::size_t i = 0; i < productions_.size(); ++i) by_head_[productions_[i].head].push_back(i);
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_vars() const { return names_.size(); }
  Var start() const { return start_; }
  const std::string& var_name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& var_names() const { return names_; }
  const std::vector<Production>& productions() const { return productions_; }
  // Indices into productions() whose head is v, in declaration order.
  const std::vector<std::size_t>& productions_of(Var v) const { return by_head_.at(v); }

  std::optional<Var> find_var(std::string_view name) const {
    for (Var v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  Var start_;
  std::vector<Production> productions_;
  std::vector<std::vector<std::size_t>> by_head_;
};

enum class GrammarClass { GeneralCnf, RightRegular, Slp, Other };

inline const char* to_string(GrammarClass c) {
  switch (c) {
    case GrammarClass::GeneralCnf: return "cnf";
    case GrammarClass::RightRegular: return "right-regular";
    case GrammarClass::Slp: return "slp";
    case GrammarClass::Other: return "other";
  }
  return "?";
}

// A grammar can fit several shapes at once; `primary` picks one with
// precedence RightRegular > Slp > GeneralCnf.
struct Classification {
  bool cnf = false;
  bool right_regular = false;
  bool slp = false;
  GrammarClass primary = GrammarClass::Other;
};

inline bool is_cnf_production(const Cfg& g, const Production& p) {
  const auto& b = p.body;
  if (b.empty()) return p.head == g.start();
  if (b.size() == 1) return !b[0].is_var;
  return b.size() == 2 && b[0].is_var && b[1].is_var;
}

inline bool is_right_regular_production(const Production& p) {
  const auto& b = p.body;
  if (b.empty()) return true;
  if (b.size() == 1) return !b[0].is_var;
  return b.size() == 2 && b[0].is_var && !b[1].is_var;
}

// At most one production per variable and an acyclic dependency graph,
// so every variable derives at most one word.
inline bool is_slp(const Cfg& g) {
  const std::size_t n = g.num_vars();
  for (Var v = 0; v < n; ++v)
    if (g.productions_of(v).size() > 1) return false;
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> mark(n, 0);
  std::vector<std::pair<Var, std::size_t>> stack;
  for (Var root = 0; root < n; ++root) {
    if (mark[root]) continue;
    stack.emplace_back(root, 0);
    mark[root] = 1;
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      const auto& prods = g.productions_of(v);
      const std::vector<GSym>* body = prods.empty() ? nullptr : &g.productions()[prods[0]].body;
      if (!body || pos == body->size()) {
        mark[v] = 2;
        stack.pop_back();
        continue;
      }
      const GSym s = (*body)[pos++];
      if (!s.is_var) continue;
      if (mark[s.id] == 1) return false;
      if (mark[s.id] == 0) {
        mark[s.id] = 1;
        stack.emplace_back(s.id, 0);
      }
    }
  }
  return true;
}

inline Classification classification(const Cfg& g) {
  Classification c;
  c.cnf = std::all_of(g.productions().begin(), g.productions().end(),
                      [&](const Production& p) { return is_cnf_production(g, p); });
  c.right_regular = std::all_of(g.productions().begin(), g.productions().end(),
                                [](const Production& p) { return is_right_regular_production(p); });
  c.slp = is_slp(g);
  if (c.right_regular)
    c.primary = GrammarClass::RightRegular;
  else if (c.slp)
    c.primary = GrammarClass::Slp;
  else if (c.cnf)
    c.primary = GrammarClass::GeneralCnf;
  return c;
}

inline GrammarClass classify(const Cfg& g) { return classification(g).primary; }

// Variables with at least one terminating derivation.
inline std::vector<bool> productive_vars(const Cfg& g) {
  std::vector<bool> prod(g.num_vars(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (prod[p.head]) continue;
      if (std::all_of(p.body.begin(), p.body.end(), [&](const GSym& s) { return !s.is_var || prod[s.id]; })) {
        prod[p.head] = true;
        changed = true;
      }
    }
  }
  return prod;
}

inline std::vector<bool> nullable_vars(const Cfg& g) {
  std::vector<bool> null(g.num_vars(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (null[p.head]) continue;
      if (std::all_of(p.body.begin(), p.body.end(), [&](const GSym& s) { return s.is_var && null[s.id]; })) {
        null[p.head] = true;
        changed = true;
      }
    }
  }
  return null;
}

namespace detail {

// Fresh variable names of the form base<k>, skipping any name in use.
class FreshNames {
 public:
  explicit FreshNames(const std::vector<std::string>& taken) : taken_(taken.begin(), taken.end()) {}
  std::string make(const std::string& base) {
    for (;;) {
      std::string name = base + "<" + std::to_string(next_++) + ">";
      if (taken_.insert(name).second) return name;
    }
  }

 private:
  std::set<std::string> taken_;
  std::size_t next_ = 1;
};

}  // namespace detail

// Chomsky normal form in the relaxed shape X -> Y Z | a, start -> ε, where
// the start may occur in bodies. Inputs already in that shape are returned
// unchanged. Original variables keep their indices and languages (up to ε
// for non-start variables); fresh variables are appended.
inline Cfg to_cnf(const Cfg& g) {
  if (classification(g).cnf) return g;

  std::vector<std::string> names = g.var_names();
  detail::FreshNames fresh(names);
  const Var start = g.start();
  const auto productive = productive_vars(g);

  // Unproductive variables keep no rules; rules mentioning them go too.
  std::vector<Production> prods;
  for (const auto& p : g.productions()) {
    if (!productive[p.head]) continue;
    if (std::any_of(p.body.begin(), p.body.end(), [&](const GSym& s) { return s.is_var && !productive[s.id]; }))
      continue;
    prods.push_back(p);
  }

  auto new_var = [&](const std::string& base) {
    names.push_back(fresh.make(base));
    return static_cast<Var>(names.size() - 1);
  };

  // Terminal lifting inside bodies of length >= 2.
  std::map<Symbol, Var> term_var;
  for (auto& p : prods) {
    if (p.body.size() < 2) continue;
    for (auto& s : p.body) {
      if (s.is_var) continue;
      auto it = term_var.find(s.id);
      if (it == term_var.end()) it = term_var.emplace(s.id, new_var(g.alphabet().name(s.id))).first;
      s = GSym::var(it->second);
    }
  }
  for (auto [a, v] : term_var) prods.push_back({v, {GSym::term(a)}});

  // Binarization, right-nested.
  std::vector<Production> bin;
  for (auto& p : prods) {
    if (p.body.size() <= 2) {
      bin.push_back(std::move(p));
      continue;
    }
    Var head = p.head;
    const std::string base = names[p.head];
    for (std::size_t i = 0; i + 2 < p.body.size(); ++i) {
      const Var rest = new_var(base);
      bin.push_back({head, {p.body[i], GSym::var(rest)}});
      head = rest;
    }
    bin.push_back({head, {p.body[p.body.size() - 2], p.body.back()}});
  }

  // ε elimination. Start keeps start -> ε when nullable, so its occurrences
  // need no omitted variants.
  std::vector<bool> nullable;
  {
    Cfg tmp(g.alphabet(), names, start, bin);
    nullable = nullable_vars(tmp);
  }
  auto omittable = [&](const GSym& s) { return s.is_var && s.id != start && nullable[s.id]; };
  std::vector<Production> no_eps;
  for (const auto& p : bin) {
    // bodies have length <= 2 here
    std::vector<std::vector<GSym>> variants{{}};
    for (const auto& s : p.body) {
      std::vector<std::vector<GSym>> next;
      for (const auto& v : variants) {
        auto with = v;
        with.push_back(s);
        next.push_back(std::move(with));
        if (omittable(s)) next.push_back(v);
      }
      variants = std::move(next);
    }
    for (auto& body : variants)
      if (!body.empty()) no_eps.push_back({p.head, std::move(body)});
  }
  if (nullable[start]) no_eps.push_back({start, {}});

  // Unit elimination: X gets every non-unit rule of each Y in its unit closure.
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> unit(n, std::vector<bool>(n, false));
  for (Var v = 0; v < n; ++v) unit[v][v] = true;
  for (const auto& p : no_eps)
    if (p.body.size() == 1 && p.body[0].is_var) unit[p.head][p.body[0].id] = true;
  for (Var k = 0; k < n; ++k)
    for (Var i = 0; i < n; ++i)
      if (unit[i][k])
        for (Var j = 0; j < n; ++j)
          if (unit[k][j]) unit[i][j] = true;

  std::vector<Production> out;
  for (Var x = 0; x < n; ++x)
    for (Var y = 0; y < n; ++y) {
      if (!unit[x][y]) continue;
      for (const auto& p : no_eps) {
        if (p.head != y) continue;
        if (p.body.size() == 1 && p.body[0].is_var) continue;
        if (p.body.empty() && x != start) continue;
        out.push_back({x, p.body});
      }
    }
  // Keep declaration-ish order: group by head, stable.
  std::stable_sort(out.begin(), out.end(), [](const Production& a, const Production& b) { return a.head < b.head; });
  return Cfg(g.alphabet(), std::move(names), start, std::move(out));
}

// F_G for a CNF grammar: component j is the union of L_k L_k' over
// X_j -> X_k X_k' plus {a} over X_j -> a (a may be ε).
inline LangVector apply_F(const Cfg& g, const LangVector& l) {
  if (!classification(g).cnf) throw InputError("apply_F requires a grammar in Chomsky normal form");
  if (l.size() != g.num_vars()) throw InputError("language vector length differs from the variable count");
  LangVector out(g.num_vars());
  for (const auto& p : g.productions()) {
    auto& dst = out[p.head];
    if (p.body.size() == 2) {
      for (const auto& y : l[p.body[0].id])
        for (const auto& z : l[p.body[1].id]) dst.insert(concat(y, z));
    } else if (p.body.size() == 1) {
      dst.insert(Word{p.body[0].id});
    } else {
      dst.insert(Word{});
    }
  }
  return out;
}

// F_G for a right-regular grammar: L_k{a} over X_j -> X_k a plus {a}.
inline LangVector apply_F_right_regular(const Cfg& g, const LangVector& l) {
  if (!classification(g).right_regular) throw InputError("apply_F_right_regular requires a right-regular grammar");
  if (l.size() != g.num_vars()) throw InputError("language vector length differs from the variable count");
  LangVector out(g.num_vars());
  for (const auto& p : g.productions()) {
    auto& dst = out[p.head];
    if (p.body.size() == 2) {
      for (const auto& y : l[p.body[0].id]) {
        Word w = y;
        w.push_back(p.body[1].id);
        dst.insert(std::move(w));
      }
    } else if (p.body.size() == 1) {
      dst.insert(Word{p.body[0].id});
    } else {
      dst.insert(Word{});
    }
  }
  return out;
}

// CYK over a relaxed-CNF grammar, tolerant of nullable variables inside
// binary rules. Returns, for every variable, whether it derives u.
inline std::vector<bool> cyk_deriving_vars(const Cfg& cnf, const Word& u) {
  if (!classification(cnf).cnf) throw InputError("CYK requires a grammar in Chomsky normal form");
  check_word(cnf.alphabet(), u);
  const std::size_t n = u.size();
  const std::size_t nv = cnf.num_vars();
  const auto nullable = nullable_vars(cnf);

  std::vector<const Production*> binary;
  for (const auto& p : cnf.productions())
    if (p.body.size() == 2) binary.push_back(&p);

  // table[i][len]: variables deriving u[i, i+len)
  std::vector<std::vector<std::vector<bool>>> table(n + 1, std::vector<std::vector<bool>>(n + 1));
  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::vector<bool> cell(nv, false);
      if (len == 0) {
        cell = nullable;
      } else {
        if (len == 1)
          for (const auto& p : cnf.productions())
            if (p.body.size() == 1 && p.body[0].id == u[i]) cell[p.head] = true;
        for (const auto* p : binary)
          for (std::size_t k = 1; k < len && !cell[p->head]; ++k)
            if (table[i][k][p->body[0].id] && table[i + k][len - k][p->body[1].id]) cell[p->head] = true;
        // splits where one side derives ε
        bool changed = true;
        while (changed) {
          changed = false;
          for (const auto* p : binary) {
            if (cell[p->head]) continue;
            const Var b = p->body[0].id, c = p->body[1].id;
            if ((nullable[b] && cell[c]) || (nullable[c] && cell[b])) {
              cell[p->head] = true;
              changed = true;
            }
          }
        }
      }
      table[i][len] = std::move(cell);
    }
  }
  return table[0][n];
}

// u ∈ L(G), deciding on the CNF normalization.
inline bool derives(const Cfg& g, const Word& u) {
  const Cfg cnf = to_cnf(g);
  return cyk_deriving_vars(cnf, u)[cnf.start()];
}

}  // namespace qoincl
