// qoincl: decide L(G) ⊆ L(A) for a context-free grammar G and a finite automaton A.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qoincl/oracle.hpp"
#include "qoincl/qoincl.hpp"

namespace {

using namespace qoincl;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

enum class EngineKind { Word, Antichain, Saturation, Auto };

struct RunConfig {
  std::string grammar_path;
  std::string automaton_path;
  std::string engine = "auto";
  std::string order = "auto";
  bool prune = false;
  bool stats = false;
  bool trace = false;
  std::size_t iteration_cap = 1'000'000;
  std::uint64_t expansion_cap = kDefaultExpansionCap;
};

struct Inputs {
  Cfg grammar;
  Nfa automaton;
};

// Grammar terminals the automaton does not know are added to its alphabet
// without transitions.
Inputs load_inputs(const std::string& grammar_path, const std::string& automaton_path) {
  Nfa a = load_automaton(automaton_path);
  Cfg g = load_grammar(grammar_path, a.alphabet());
  if (!(g.alphabet() == a.alphabet())) a = a.widened(g.alphabet());
  return {std::move(g), std::move(a)};
}

std::string format_set(const Alphabet& alphabet, const WordSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& w : s.sorted()) {
    if (!first) out += ", ";
    first = false;
    out += format_word(alphabet, w);
  }
  return out + "}";
}

void print_stats(const Stats& s) {
  std::cout << "iterations=" << s.iterations << '\n'
            << "f_applications=" << s.f_applications << '\n'
            << "words_generated=" << s.words_generated << '\n'
            << "comparisons=" << s.comparisons << '\n'
            << "membership_queries=" << s.membership_queries << '\n'
            << "pruned=" << s.pruned << '\n';
}

int run_check(const RunConfig& cfg) {
  const auto [g, a] = load_inputs(cfg.grammar_path, cfg.automaton_path);
  const auto cls = classification(g);

  EngineKind engine;
  if (cfg.engine == "word")
    engine = EngineKind::Word;
  else if (cfg.engine == "antichain")
    engine = EngineKind::Antichain;
  else if (cfg.engine == "saturation")
    engine = EngineKind::Saturation;
  else if (cfg.engine == "auto")
    engine = EngineKind::Auto;
  else
    throw InputError("unknown engine '" + cfg.engine + "'");

  std::optional<QuasiorderKind> order;
  if (cfg.order != "auto") {
    order = parse_quasiorder_kind(cfg.order);
    if (!order) throw InputError("unknown order '" + cfg.order + "'");
    if (!is_two_sided(*order) && !cls.right_regular)
      throw InputError("order '" + cfg.order + "' requires a right-regular grammar");
  }

  if (engine == EngineKind::Auto) {
    if (cls.slp)
      engine = EngineKind::Saturation;
    else if (order && !is_state_based(*order))
      engine = EngineKind::Word;
    else
      engine = EngineKind::Antichain;
  }
  if (engine == EngineKind::Saturation && !cls.slp)
    throw InputError("the saturation engine requires a straight-line program");
  if (engine == EngineKind::Antichain && order && !is_state_based(*order))
    throw InputError("the antichain engine supports only the ctx and post orders");
  if (!order)
    order = (cls.right_regular && engine == EngineKind::Word) ? QuasiorderKind::StatePost : QuasiorderKind::StateCtx;

  EngineOptions opts;
  opts.iteration_cap = cfg.iteration_cap;
  if (cfg.trace) {
    std::cout << "trace-v1\n";
    opts.on_iterate = [&g](std::size_t k, const LangVector& cur, Var start) {
      std::cout << "F" << k << ": " << format_set(g.alphabet(), cur[start]) << '\n';
    };
    opts.on_antichain_iterate = [](std::size_t k, const std::vector<std::size_t>& sizes) {
      std::cout << "F" << k << ": sizes=";
      for (std::size_t i = 0; i < sizes.size(); ++i) std::cout << (i ? " " : "") << sizes[i];
      std::cout << '\n';
    };
  }

  Verdict v;
  switch (engine) {
    case EngineKind::Word: {
      const Quasiorder q(*order, a);
      v = decide_inclusion_word(g, a, q, cfg.prune ? PruneMode::Antichain : PruneMode::None, opts);
      break;
    }
    case EngineKind::Antichain:
      v = decide_inclusion_antichain(g, a, opts, order);
      break;
    case EngineKind::Saturation:
      v = decide_slp_inclusion(g, a, cfg.expansion_cap);
      break;
    case EngineKind::Auto:
      break;
  }

  std::cout << (v.holds ? "INCLUSION HOLDS" : "INCLUSION FAILS") << '\n';
  if (!v.holds) {
    if (v.counterexample)
      std::cout << "counterexample: " << format_word(g.alphabet(), *v.counterexample) << '\n';
    else
      std::cout << "counterexample: (unavailable, exceeds expansion cap)\n";
  }
  if (cfg.stats) print_stats(v.stats);
  return v.holds ? kExitHolds : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide inclusion of a context-free language in a regular language"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* check = app.add_subcommand("check", "Decide L(grammar) ⊆ L(automaton)");
  check->add_option("--grammar", cfg.grammar_path, "Grammar file")->required();
  check->add_option("--automaton", cfg.automaton_path, "Automaton file")->required();
  check->add_option("--engine", cfg.engine, "word | antichain | saturation | auto")->capture_default_str();
  check->add_option("--order", cfg.order, "ctx | post | myhill | nerode | auto")->capture_default_str();
  check->add_flag("--prune", cfg.prune, "Prune iterates to antichains (word engine)");
  check->add_flag("--stats", cfg.stats, "Print run statistics");
  check->add_flag("--trace", cfg.trace, "Print every iterate");
  check->add_option("--iteration-cap", cfg.iteration_cap, "Maximum number of fixpoint steps")->capture_default_str();
  check->add_option("--expansion-cap", cfg.expansion_cap, "Longest SLP word to materialize")->capture_default_str();

  auto* debug = app.add_subcommand("debug", "Inspection helpers (brute force, not decision procedures)");
  debug->require_subcommand(1);
  std::string d_grammar, d_automaton, d_word;
  std::size_t d_max_len = 8;

  auto* enumerate = debug->add_subcommand("enumerate", "List words of L(grammar) up to a length");
  enumerate->add_option("--grammar", d_grammar)->required();
  enumerate->add_option("--automaton", d_automaton, "Take the alphabet from this automaton");
  enumerate->add_option("--max-len", d_max_len)->capture_default_str();

  auto* brute = debug->add_subcommand("brute", "Bounded brute-force inclusion check");
  brute->add_option("--grammar", d_grammar)->required();
  brute->add_option("--automaton", d_automaton)->required();
  brute->add_option("--max-len", d_max_len)->capture_default_str();

  auto* ctx = debug->add_subcommand("ctx", "Print the context set of a word");
  ctx->add_option("--automaton", d_automaton)->required();
  ctx->add_option("--word", d_word, "Space-separated symbols; empty for the empty word");

  auto* cnf = debug->add_subcommand("cnf", "Print the Chomsky normal form of a grammar");
  cnf->add_option("--grammar", d_grammar)->required();

  auto* classify_cmd = debug->add_subcommand("classify", "Print the grammar class");
  classify_cmd->add_option("--grammar", d_grammar)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*check) return run_check(cfg);

    if (*enumerate) {
      Alphabet alphabet = d_automaton.empty() ? Alphabet{} : load_automaton(d_automaton).alphabet();
      const Cfg g = load_grammar(d_grammar, alphabet);
      const auto e = oracle::enumerate_words(g, {d_max_len, 1'000'000});
      for (const auto& w : e.words) std::cout << format_word(g.alphabet(), w) << '\n';
      if (e.truncated) std::cout << "(truncated)\n";
      return 0;
    }
    if (*brute) {
      const auto [g, a] = load_inputs(d_grammar, d_automaton);
      const auto v = oracle::brute_inclusion(g, a, {d_max_len, 1'000'000});
      if (v.holds_up_to_bound) {
        std::cout << "HOLDS UP TO LENGTH " << d_max_len << '\n';
        return kExitHolds;
      }
      std::cout << "INCLUSION FAILS\ncounterexample: " << format_word(g.alphabet(), *v.counterexample) << '\n';
      return kExitFails;
    }
    if (*ctx) {
      const Nfa a = load_automaton(d_automaton);
      const auto c = ctx_profile(a, a.alphabet().parse_word(d_word));
      std::cout << "{";
      bool first = true;
      for (State p = 0; p < a.num_states(); ++p)
        for (State q = 0; q < a.num_states(); ++q)
          if (c.contains(p, q)) {
            std::cout << (first ? "" : ", ") << "(" << a.state_name(p) << "," << a.state_name(q) << ")";
            first = false;
          }
      std::cout << "}\n";
      return 0;
    }
    if (*cnf) {
      std::cout << format_grammar(to_cnf(load_grammar(d_grammar)));
      return 0;
    }
    if (*classify_cmd) {
      const auto c = classification(load_grammar(d_grammar));
      std::cout << "class=" << to_string(c.primary) << "\ncnf=" << c.cnf << "\nright_regular=" << c.right_regular
                << "\nslp=" << c.slp << '\n';
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
