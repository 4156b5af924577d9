#include <gtest/gtest.h>

#include "qoincl/oracle.hpp"
#include "qoincl/qoincl.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace qoincl;
using namespace qoincl::testing;

namespace {

constexpr QuasiorderKind kAllKinds[] = {QuasiorderKind::StateCtx, QuasiorderKind::StatePost, QuasiorderKind::Myhill,
                                       QuasiorderKind::Nerode};

}  // namespace

TEST(QuasiorderKind, Names) {
  for (auto k : kAllKinds) EXPECT_EQ(parse_quasiorder_kind(to_string(k)), k);
  EXPECT_FALSE(parse_quasiorder_kind("simulation"));
  EXPECT_TRUE(is_two_sided(QuasiorderKind::Myhill));
  EXPECT_FALSE(is_two_sided(QuasiorderKind::Nerode));
}

TEST(Compare, Fig1Ctx) {
  const Quasiorder q(QuasiorderKind::StateCtx, fig1_automaton());
  EXPECT_TRUE(q.compare(w("a b"), w("a a b b")));
  EXPECT_TRUE(q.compare(w("a a b b"), w("a b")));
  EXPECT_FALSE(q.compare({}, w("b")));
  EXPECT_TRUE(q.compare(w("b a"), {}));
  EXPECT_THROW(q.compare(Word{3}, {}), InputError);
}

TEST(Compare, ReflexiveForEveryKind) {
  for (auto k : kAllKinds) {
    const Quasiorder q(k, fig1_automaton());
    for (const auto& u : oracle::all_words(2, 4)) EXPECT_TRUE(q.compare(u, u)) << to_string(k);
  }
}

TEST(Compare, Fig1CoarserOrders) {
  const Quasiorder post(QuasiorderKind::StatePost, fig1_automaton());
  const Quasiorder nerode(QuasiorderKind::Nerode, fig1_automaton());
  const Quasiorder myhill(QuasiorderKind::Myhill, fig1_automaton());
  // post(ab) = post(b) = {q}
  EXPECT_TRUE(post.compare(w("a b"), w("b")));
  // b* ⊆ a*b*
  EXPECT_TRUE(nerode.compare(w("b"), w("a")));
  EXPECT_FALSE(nerode.compare(w("a"), w("b")));
  EXPECT_FALSE(myhill.compare(w("b"), w("a")));
  EXPECT_TRUE(myhill.compare(w("a b"), w("b")));
}

TEST(IsMPreserving, Examples) {
  const Quasiorder q(QuasiorderKind::StateCtx, fig1_automaton());
  EXPECT_TRUE(is_M_preserving_sample(q, {{w("a b"), w("a a b b")}}));
  EXPECT_TRUE(is_M_preserving_sample(q, {{w("b a"), w("a")}}));
  EXPECT_TRUE(is_M_preserving_sample(q, {}));
}

TEST(ProfileOps, CtxOnFig1) {
  const Quasiorder q(QuasiorderKind::StateCtx, fig1_automaton());
  const auto ops = std::get<CtxProfileOps>(profile_ops(q));
  const Nfa& a = q.reference();
  EXPECT_EQ(ops.of_symbol(ab().at("a")), ctx_profile(a, w("a")));
  EXPECT_EQ(ops.unit().pairs, BitMatrix::identity(2));
  EXPECT_EQ(ops.compose(ops.of_symbol(0), ops.of_symbol(1)), ops.of_word(w("a b")));
  EXPECT_TRUE(ops.accepts(ops.of_word(w("a b"))));
  EXPECT_TRUE(ops.leq(ops.of_word(w("a b")), ops.of_word(w("b"))));
}

TEST(ProfileOps, PostOnFig1) {
  const Quasiorder q(QuasiorderKind::StatePost, fig1_automaton());
  const auto ops = std::get<PostProfileOps>(profile_ops(q));
  const Nfa& a = q.reference();
  BitSet only_q(2);
  only_q.set(1);
  EXPECT_EQ(ops.step(ops.unit(), ab().at("b")).states, only_q);
  EXPECT_EQ(ops.unit(), post_profile(a, {}));
  EXPECT_FALSE(ops.accepts(ops.of_word(w("b a"))));
}

TEST(ProfileOps, UnsupportedForLanguageOrders) {
  EXPECT_THROW(profile_ops(Quasiorder(QuasiorderKind::Myhill, fig1_automaton())), UnsupportedKindError);
  EXPECT_THROW(profile_ops(Quasiorder(QuasiorderKind::Nerode, fig1_automaton())), UnsupportedKindError);
}

TEST(Quasiorder, CarriesDfaOnlyForLanguageOrders) {
  EXPECT_FALSE(Quasiorder(QuasiorderKind::StateCtx, fig1_automaton()).dfa());
  const Quasiorder m(QuasiorderKind::Myhill, fig1_automaton());
  ASSERT_TRUE(m.dfa());
  EXPECT_EQ(m.residual_table().dim(), m.dfa()->num_states());
}

TEST(QuasiorderProperty, Laws) {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Nfa a = random_nfa(rng, 4);
    for (auto k : kAllKinds) {
      const Quasiorder q(k, a);
      for (int i = 0; i < 40; ++i) {
        const Word u = random_word(rng, 2, 5), v = random_word(rng, 2, 5), x = random_word(rng, 2, 5);
        const Symbol s = static_cast<Symbol>(uniform(rng, 0, 1));
        ASSERT_TRUE(q.compare(u, u));
        if (q.compare(u, v) && q.compare(v, x)) {
          ASSERT_TRUE(q.compare(u, x));
        }
        if (q.compare(u, v)) {
          if (run_membership(a, u)) {
            ASSERT_TRUE(run_membership(a, v)) << to_string(k);
          }
          ASSERT_TRUE(q.compare(concat(u, {s}), concat(v, {s}))) << to_string(k);
          if (is_two_sided(k)) {
            ASSERT_TRUE(q.compare(concat({s}, u), concat({s}, v))) << to_string(k);
          }
        }
      }
    }
  }
}

TEST(QuasiorderProperty, StateOrdersRefineLanguageOrders) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Nfa a = random_nfa(rng, 4);
    const Quasiorder ctx(QuasiorderKind::StateCtx, a), myhill(QuasiorderKind::Myhill, a);
    const Quasiorder post(QuasiorderKind::StatePost, a), nerode(QuasiorderKind::Nerode, a);
    for (int i = 0; i < 50; ++i) {
      const Word u = random_word(rng, 2, 5), v = random_word(rng, 2, 5);
      if (ctx.compare(u, v)) {
        ASSERT_TRUE(myhill.compare(u, v));
      }
      if (post.compare(u, v)) {
        ASSERT_TRUE(nerode.compare(u, v));
      }
      if (myhill.compare(u, v)) {
        ASSERT_TRUE(nerode.compare(u, v));
      }
    }
  }
}

TEST(QuasiorderProperty, LanguageOrdersMatchBoundedDefinitions) {
  Rng rng(43);
  const auto words = oracle::all_words(2, 3);
  int automata = 0;
  while (automata < 25) {
    const Nfa a = random_nfa(rng, 3);
    const Quasiorder myhill(QuasiorderKind::Myhill, a), nerode(QuasiorderKind::Nerode, a);
    const std::size_t bound = myhill.dfa()->num_states() + 2;
    if (bound > 8) continue;
    ++automata;
    for (const auto& u : words)
      for (const auto& v : words) {
        ASSERT_EQ(myhill.compare(u, v), oracle::myhill_leq_bounded(a, u, v, bound));
        ASSERT_EQ(nerode.compare(u, v), oracle::nerode_leq_bounded(a, u, v, bound));
      }
  }
}
