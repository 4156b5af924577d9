#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
  std::string out;
  int code = -1;
};

// Runs the CLI with stderr discarded unless `with_stderr`.
Result run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(QOINCL_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(QOINCL_SAMPLES_DIR) + "/" + name; }

std::string check(const std::string& grammar, const std::string& automaton, const std::string& flags = "") {
  return "check --grammar " + sample(grammar) + " --automaton " + sample(automaton) + (flags.empty() ? "" : " " + flags);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("qoincl_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, RunningExampleHolds) {
  const auto r = run(check("anbn.cfg", "astarbstar.fa", "--engine word --order ctx --stats"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "INCLUSION HOLDS\n"
            "iterations=4\n"
            "f_applications=5\n"
            "words_generated=25\n"
            "comparisons=18\n"
            "membership_queries=2\n"
            "pruned=0\n");
}

TEST(Cli, AbStarFailsWithDefaults) {
  const auto r = run(check("anbn.cfg", "abstar.fa"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "INCLUSION FAILS\ncounterexample: a a b b\n");
}

TEST(Cli, EveryEngineAndOrderAgreesOnAbStar) {
  for (const char* flags : {"--engine word --order ctx", "--engine word --order myhill", "--engine word --order ctx --prune",
                            "--engine antichain", "--engine antichain --order ctx"}) {
    const auto r = run(check("anbn.cfg", "abstar.fa", flags));
    EXPECT_EQ(r.code, 1) << flags;
    EXPECT_EQ(r.out, "INCLUSION FAILS\ncounterexample: a a b b\n") << flags;
  }
}

TEST(Cli, NonCnfGrammarIsNormalized) {
  EXPECT_EQ(run(check("anbn_plain.cfg", "astarbstar.fa")).code, 0);
  EXPECT_EQ(run(check("anbn_plain.cfg", "abstar.fa", "--engine word --order myhill")).out,
            "INCLUSION FAILS\ncounterexample: a a b b\n");
}

TEST(Cli, WordTraceReproducesTheIterates) {
  const auto r = run(check("anbn.cfg", "anbn3.fa", "--engine word --order ctx --trace"));
  EXPECT_EQ(r.out.substr(0, r.out.find("F8:")),
            "trace-v1\n"
            "F1: {(empty)}\n"
            "F2: {(empty)}\n"
            "F3: {(empty), a b}\n"
            "F4: {(empty), a b}\n"
            "F5: {(empty), a b, a a b b}\n"
            "F6: {(empty), a b, a a b b}\n"
            "F7: {(empty), a b, a a b b, a a a b b b}\n");
}

TEST(Cli, AntichainTracePrintsSizes) {
  const auto r = run(check("anbn.cfg", "astarbstar.fa", "--engine antichain --trace"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("trace-v1\nF1: sizes=1 1 0 1\n", 0), 0u) << r.out;
}

TEST(Cli, RightRegularOrders) {
  for (const char* flags : {"", "--engine word", "--engine word --order post", "--engine word --order nerode",
                            "--engine antichain --order post", "--engine antichain --order ctx"}) {
    const auto r = run(check("astar.cfg", "astar.fa", flags));
    EXPECT_EQ(r.code, 0) << flags;
    EXPECT_EQ(r.out, "INCLUSION HOLDS\n") << flags;
  }
}

TEST(Cli, SlpSamples) {
  auto r = run(check("abab.slp", "astarbstar.fa"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "INCLUSION FAILS\ncounterexample: a b a b\n");
  r = run(check("abab.slp", "abstar.fa", "--engine saturation"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run(check("abab.slp", "abstar.fa", "--engine word")).code, 0);
  EXPECT_EQ(run(check("doubling40.slp", "even_a.fa")).out, "INCLUSION HOLDS\n");
}

TEST(Cli, SlpCounterexampleBeyondTheCap) {
  const auto odd = temp_file("odd.fa", "alphabet: a\nstates: e o\ninitial: e\nfinal: o\ne a o\no a e\n");
  const auto r = run("check --grammar " + sample("doubling40.slp") + " --automaton " + odd);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "INCLUSION FAILS\ncounterexample: (unavailable, exceeds expansion cap)\n");
  const auto small = run("check --grammar " + sample("abab.slp") + " --automaton " + sample("astarbstar.fa") +
                         " --expansion-cap 3");
  EXPECT_EQ(small.out, "INCLUSION FAILS\ncounterexample: (unavailable, exceeds expansion cap)\n");
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("check --grammar /nonexistent.cfg --automaton " + sample("abstar.fa")).code, 2);
  EXPECT_EQ(run("check --grammar " + sample("anbn.cfg") + " --automaton /nonexistent.fa").code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--engine quantum")).code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--order simulation")).code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--order post")).code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--order nerode")).code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--engine saturation")).code, 2);
  EXPECT_EQ(run(check("anbn.cfg", "abstar.fa", "--engine antichain --order myhill")).code, 2);
  EXPECT_EQ(run("check --grammar " + sample("anbn.cfg")).code, 2);
  EXPECT_EQ(run("").code, 2);
  const auto bad = temp_file("bad.fa", "alphabet: a b\nstates: p\ninitial: p\np c p\n");
  const auto r = run("check --grammar " + sample("anbn.cfg") + " --automaton " + bad, true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 4"), std::string::npos) << r.out;
}

TEST(Cli, IterationCapExitsThree) {
  EXPECT_EQ(run(check("anbn.cfg", "astarbstar.fa", "--engine word --iteration-cap 2")).code, 3);
  EXPECT_EQ(run(check("anbn.cfg", "astarbstar.fa", "--engine antichain --iteration-cap 2")).code, 3);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& args : {check("anbn.cfg", "abstar.fa", "--engine word --order ctx --stats --trace"),
                           check("anbn.cfg", "astarbstar.fa", "--engine antichain --stats --trace"),
                           check("abab.slp", "astarbstar.fa", "--stats")}) {
    const auto first = run(args);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(run(args).out, first.out);
  }
}

TEST(Cli, DebugCommands) {
  EXPECT_EQ(run("debug ctx --automaton " + sample("astarbstar.fa") + " --word 'a b'").out, "{(p,q)}\n");
  EXPECT_EQ(run("debug ctx --automaton " + sample("astarbstar.fa")).out, "{(p,p), (q,q)}\n");
  EXPECT_EQ(run("debug enumerate --grammar " + sample("anbn.cfg") + " --max-len 4").out, "(empty)\na b\na a b b\n");
  const auto brute = run("debug brute --grammar " + sample("anbn.cfg") + " --automaton " + sample("abstar.fa"));
  EXPECT_EQ(brute.code, 1);
  EXPECT_EQ(brute.out, "INCLUSION FAILS\ncounterexample: a a b b\n");
  EXPECT_EQ(run("debug brute --grammar " + sample("anbn.cfg") + " --automaton " + sample("astarbstar.fa")).out,
            "HOLDS UP TO LENGTH 8\n");
  EXPECT_EQ(run("debug classify --grammar " + sample("astar.cfg")).out.rfind("class=right-regular\n", 0), 0u);
  const auto cnf = run("debug cnf --grammar " + sample("anbn_plain.cfg"));
  EXPECT_EQ(cnf.code, 0);
  EXPECT_NE(cnf.out.find("X1 -> EPS"), std::string::npos);
}
