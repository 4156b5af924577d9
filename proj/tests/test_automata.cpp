#include <gtest/gtest.h>

#include "qoincl/oracle.hpp"
#include "qoincl/qoincl.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace qoincl;
using namespace qoincl::testing;

namespace {

// Pairs of a context set, by state name.
std::set<std::pair<std::string, std::string>> pairs(const Nfa& a, const CtxProfile& c) {
  std::set<std::pair<std::string, std::string>> out;
  for (State p = 0; p < a.num_states(); ++p)
    for (State q = 0; q < a.num_states(); ++q)
      if (c.contains(p, q)) out.emplace(a.state_name(p), a.state_name(q));
  return out;
}

using Pairs = std::set<std::pair<std::string, std::string>>;

std::set<std::string> states(const Nfa& a, const BitSet& s) {
  std::set<std::string> out;
  s.for_each([&](std::size_t q) { out.insert(a.state_name(static_cast<State>(q))); });
  return out;
}

}  // namespace

TEST(Nfa, ValidatesConstruction) {
  EXPECT_THROW(Nfa(ab(), 0, 0, {}, {}), InputError);
  EXPECT_THROW(Nfa(Alphabet{}, 1, 0, {}, {}), InputError);
  EXPECT_THROW(Nfa(ab(), 2, 2, {}, {}), InputError);
  EXPECT_THROW(Nfa(ab(), 2, 0, {3}, {}), InputError);
  EXPECT_THROW(Nfa(ab(), 2, 0, {}, {{0, 0, 5}}), InputError);
  EXPECT_THROW(Nfa(ab(), 2, 0, {}, {{0, 2, 1}}), InputError);
}

TEST(RunMembership, Fig1) {
  const auto a = fig1_automaton();
  EXPECT_TRUE(run_membership(a, w("a a b b")));
  EXPECT_TRUE(run_membership(a, {}));
  EXPECT_FALSE(run_membership(a, w("b a")));
  EXPECT_THROW(run_membership(a, Word{4}), InputError);
}

TEST(CtxProfile, Fig1Table) {
  const auto a = fig1_automaton();
  EXPECT_EQ(pairs(a, ctx_profile(a, {})), (Pairs{{"p", "p"}, {"q", "q"}}));
  EXPECT_EQ(pairs(a, ctx_profile(a, w("a"))), (Pairs{{"p", "p"}}));
  EXPECT_EQ(pairs(a, ctx_profile(a, w("b"))), (Pairs{{"p", "q"}, {"q", "q"}}));
  for (const char* u : {"a b", "a a b", "a b b b", "a a a b b", "a b b"})
    EXPECT_EQ(pairs(a, ctx_profile(a, w(u))), (Pairs{{"p", "q"}})) << u;
}

TEST(CtxProfile, Composition) {
  const auto a = fig1_automaton();
  const auto ca = ctx_profile(a, w("a")), cb = ctx_profile(a, w("b"));
  EXPECT_EQ(compose_ctx(ca, cb), ctx_profile(a, w("a b")));
  EXPECT_EQ(pairs(a, compose_ctx(ca, cb)), (Pairs{{"p", "q"}}));
  EXPECT_EQ(compose_ctx(identity_ctx(a), cb), cb);
  EXPECT_EQ(compose_ctx(cb, identity_ctx(a)), cb);
  EXPECT_TRUE(compose_ctx(cb, ca).pairs.none());
}

TEST(CtxProfile, CompositionAcrossAutomataIsRejected) {
  const auto a = fig1_automaton();
  const auto b = fig1_automaton();
  EXPECT_THROW(compose_ctx(ctx_profile(a, w("a")), ctx_profile(b, w("b"))), InputError);
}

TEST(CtxAccepts, Fig1) {
  const auto a = fig1_automaton();
  EXPECT_TRUE(ctx_accepts(a, ctx_profile(a, w("a b"))));
  EXPECT_FALSE(ctx_accepts(a, CtxProfile{a.id(), BitMatrix(a.num_states())}));
  EXPECT_FALSE(ctx_accepts(a, ctx_profile(a, w("b a"))));
}

TEST(PostProfile, Fig1) {
  const auto a = fig1_automaton();
  EXPECT_EQ(states(a, post_profile(a, {}).states), (std::set<std::string>{"p"}));
  EXPECT_EQ(states(a, post_profile(a, w("a b")).states), (std::set<std::string>{"q"}));
  EXPECT_TRUE(post_profile(a, w("b a")).states.none());
  EXPECT_EQ(post_step(a, post_profile(a, {}), ab().at("b")), post_profile(a, w("b")));
}

TEST(Determinize, Fig1HasThreeStates) {
  const auto a = fig1_automaton();
  const Dfa d = determinize(a);
  ASSERT_EQ(d.num_states(), 3u);
  ASSERT_TRUE(d.sink());
  EXPECT_FALSE(d.is_final(*d.sink()));
  for (Symbol s = 0; s < 2; ++s) EXPECT_EQ(d.next(*d.sink(), s), *d.sink());
  std::set<std::set<std::string>> labels;
  for (const auto& s : d.subsets()) labels.insert(states(a, s));
  EXPECT_EQ(labels, (std::set<std::set<std::string>>{{"p"}, {"q"}, {}}));
}

TEST(Determinize, CompleteDfaIsIsomorphic) {
  // even number of a's
  const Nfa a(ab(), 2, 0, {0}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
  const Dfa d = determinize(a);
  EXPECT_EQ(d.num_states(), 2u);
  for (const auto& u : oracle::all_words(2, 6)) EXPECT_EQ(d.accepts(u), run_membership(a, u));
}

TEST(Determinize, DropsUnreachableStates) {
  const Nfa a(ab(), 3, 0, {0, 2}, {{0, 0, 0}, {2, 1, 2}});
  const Dfa d = determinize(a);
  for (const auto& s : d.subsets()) EXPECT_FALSE(s.test(2));
  EXPECT_EQ(d.num_states(), 2u);
}

TEST(Determinize, SubsetCapRaisesResourceError) {
  // (a|b)* a (a|b)^4: the minimal DFA has 32 states
  std::vector<Transition> ts{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (State q = 1; q < 5; ++q) ts.insert(ts.end(), {{q, 0, q + 1}, {q, 1, q + 1}});
  const Nfa a(ab(), 6, 0, {5}, ts);
  EXPECT_THROW(determinize(a, 8), ResourceError);
  EXPECT_NO_THROW(determinize(a));
}

TEST(ResidualTable, Fig1) {
  const auto a = fig1_automaton();
  const Dfa d = determinize(a);
  const auto t = residual_inclusion_table(d);
  State p = 0, q = 0;
  for (State s = 0; s < d.num_states(); ++s) {
    if (d.subsets()[s].test(0)) p = s;
    if (d.subsets()[s].test(1)) q = s;
  }
  for (State s = 0; s < d.num_states(); ++s) {
    EXPECT_TRUE(t.test(s, s));
    EXPECT_TRUE(t.test(*d.sink(), s));
  }
  EXPECT_TRUE(t.test(q, p));
  EXPECT_FALSE(t.test(p, q));
  EXPECT_TRUE(oracle::residual_leq_bounded(d, q, p, 6));
  EXPECT_FALSE(oracle::residual_leq_bounded(d, p, q, 6));
}

TEST(AutomataProperty, ProfilesAgreeWithRuns) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Nfa a = random_nfa(rng, 4);
    const Word u = random_word(rng, 2, 6), v = random_word(rng, 2, 6);
    const auto cu = ctx_profile(a, u);
    ASSERT_EQ(compose_ctx(cu, ctx_profile(a, v)), ctx_profile(a, concat(u, v)));
    ASSERT_EQ(ctx_accepts(a, cu), run_membership(a, u));
    BitSet from_initial(a.num_states());
    for (State q = 0; q < a.num_states(); ++q)
      if (cu.contains(a.initial(), q)) from_initial.set(q);
    ASSERT_EQ(post_profile(a, u).states, from_initial);
    ASSERT_EQ(post_accepts(a, post_profile(a, u)), run_membership(a, u));
  }
}

TEST(AutomataProperty, DeterminizePreservesLanguage) {
  Rng rng(22);
  const auto words = oracle::all_words(2, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const Nfa a = random_nfa(rng, 4);
    const Dfa d = determinize(a);
    for (const auto& u : words) ASSERT_EQ(d.accepts(u), run_membership(a, u));
  }
}

TEST(AutomataProperty, ResidualTableMatchesBoundedOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Dfa d = determinize(random_nfa(rng, 4));
    const auto t = residual_inclusion_table(d);
    for (State x = 0; x < d.num_states(); ++x)
      for (State y = 0; y < d.num_states(); ++y)
        ASSERT_EQ(t.test(x, y), oracle::residual_leq_bounded(d, x, y, 2 * d.num_states()));
  }
}
