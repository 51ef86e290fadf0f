#include <gtest/gtest.h>

#include <algorithm>

#include "chanres/errors.hpp"
#include "chanres/indist.hpp"
#include "chanres/msc.hpp"
#include "chanres/restrictions.hpp"
#include "common.hpp"
#include "generators.hpp"

namespace chanres {
namespace {

using testing::W;

bool contains(const std::set<Word>& s, const Word& w) { return s.count(w) != 0; }

TEST(Neighbors, RuleGuards) {
  EXPECT_TRUE(contains(one_step_neighbors(W("P>Q!a R>S!b")), W("R>S!b P>Q!a")));
  EXPECT_TRUE(one_step_neighbors(W("P>Q!a P>R!b")).empty());
  EXPECT_TRUE(one_step_neighbors(W("P>Q!a P>Q?a")).empty());
  // Two receives of distinct receivers.
  EXPECT_TRUE(contains(one_step_neighbors(W("P>Q!a R>S!b P>Q?a R>S?b")), W("P>Q!a R>S!b R>S?b P>Q?a")));
  // Same channel, already non-empty: the second send may pass the first receive.
  EXPECT_TRUE(contains(one_step_neighbors(W("P>Q!a P>Q?a P>Q!b")), W("P>Q!a P>Q!b P>Q?a")));
}

TEST(Neighbors, SwapsAreSymmetric) {
  testing::Rng rng(testing::base_seed() + 10);
  for (int i = 0; i < 200; ++i) {
    const Word w = testing::random_word(rng, {8, 3, 2, false});
    for (const auto& s : legal_swaps(w)) {
      const Word u = apply_swap(w, s);
      EXPECT_TRUE(contains(one_step_neighbors(u), w)) << format_word(w) << " / rule " << s.rule_id;
      EXPECT_TRUE(is_channel_compliant(u));
      EXPECT_TRUE(isomorphic(msc_of(u), msc_of(w)));
    }
  }
}

TEST(Closure, Examples) {
  EXPECT_EQ(closure({W("P>Q!m")}, 1), (std::set<Word>{W("P>Q!m")}));
  const auto c = closure({W("P>Q!m1 P>Q?m1 R>S!m2 R>S?m2")}, 4);
  // Interleavings of two independent two-event sequences: C(4,2).
  EXPECT_EQ(c.size(), 6u);
  for (const auto& w : c) {
    EXPECT_EQ(project(w, OnProcess{"P"}), W("P>Q!m1"));
    EXPECT_LT(std::find(w.begin(), w.end(), Event::send("R", "S", "m2")) - w.begin(),
              std::find(w.begin(), w.end(), Event::receive("R", "S", "m2")) - w.begin());
  }
}

TEST(Closure, EqualsLinearizationsOfTheMsc) {
  testing::Rng rng(testing::base_seed() + 11);
  for (int i = 0; i < 100; ++i) {
    const Word w = testing::random_word(rng, {8, 3, 2, i % 2 == 0});
    const auto words = linearizations(msc_of(w));
    EXPECT_EQ(closure({w}, w.size()), std::set<Word>(words.begin(), words.end())) << format_word(w);
  }
}

TEST(Closure, BudgetIsReported) {
  const Word w = W("P>Q!a R>S!b T>U!c V>W!d P>Q?a R>S?b T>U?c V>W?d");
  EXPECT_THROW(closure({w}, w.size(), 10), BudgetExceeded);
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(equiv_mod_indist({W("P>Q!a R>S!b")}, {W("R>S!b P>Q!a")}));
  EXPECT_FALSE(equiv_mod_indist({W("P>Q!a P>Q?a")}, {W("P>Q!b P>Q?b")}));
}

TEST(Preservation, NeighborsClassifyAlike) {
  testing::Rng rng(testing::base_seed() + 12);
  for (int i = 0; i < 150; ++i) {
    const Word w = testing::random_word(rng, {10, 3, 2, false});
    const auto c = classify_word(w);
    for (const auto& u : one_step_neighbors(w)) EXPECT_EQ(classify_word(u), c) << format_word(w);
  }
}

}  // namespace
}  // namespace chanres
