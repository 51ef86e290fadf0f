#include <gtest/gtest.h>

#include <algorithm>

#include "chanres/csm.hpp"
#include "chanres/errors.hpp"
#include "chanres/indist.hpp"
#include "common.hpp"
#include "generators.hpp"

namespace chanres {
namespace {

using testing::fixture_csm;
using testing::W;

std::set<Word> maximal_words(const ExplorationResult& r) {
  std::set<Word> out;
  for (const auto& t : r.maximal) out.insert(t.word);
  return out;
}

TEST(Step, SendReceiveAndErrors) {
  const auto c5 = fixture_csm("c5.csm");
  const auto c0 = initial_configuration(c5);
  const auto c1 = step(c5, c0, Event::send("P", "Q", "m"));
  EXPECT_EQ(c1.queues, (std::map<Channel, std::vector<Message>>{{{"P", "Q"}, {"m"}}}));
  EXPECT_THROW(step(c5, c0, Event::receive("Q", "P", "m")), NoSuchTransition);

  const auto stream = fixture_csm("stream.csm");
  const auto f0 = initial_configuration(stream);
  EXPECT_THROW(step(stream, f0, Event::receive("P", "Q", "cons")), BlockedReceive);
  const auto f1 = step(stream, f0, Event::send("P", "Q", "cons"));
  EXPECT_THROW(step(stream, f1, Event::receive("P", "Q", "nil")), BlockedReceive);
  const auto f2 = step(stream, f1, Event::receive("P", "Q", "cons"));
  EXPECT_TRUE(f2.queues.empty());
  EXPECT_EQ(f2.states, f0.states);
  EXPECT_THROW(step(stream, f0, "P", 7), NoSuchTransition);
}

TEST(Explore, Stream) {
  const auto r = explore(fixture_csm("stream.csm"), 8, 4);
  const auto words = maximal_words(r);
  EXPECT_TRUE(words.count(W("P>Q!nil P>Q?nil Q>P!ack Q>P?ack")));
  EXPECT_TRUE(words.count(W("P>Q!cons P>Q?cons P>Q!nil P>Q?nil Q>P!ack Q>P?ack")));
  EXPECT_TRUE(words.count(W("P>Q!cons P>Q!nil P>Q?cons P>Q?nil Q>P!ack Q>P?ack")));
  for (const auto& t : r.maximal) EXPECT_TRUE(t.complete());
  const bool cons_loop = std::any_of(r.lassos.begin(), r.lassos.end(), [](const LassoTrace& l) {
    return l.lasso.cycle == W("P>Q!cons P>Q?cons") && !l.pumping();
  });
  EXPECT_TRUE(cons_loop);
  EXPECT_TRUE(r.depth_hit);
}

TEST(Explore, NonReceivingSenders) {
  const auto r = explore(fixture_csm("c5.csm"), 8, 3);
  EXPECT_TRUE(r.maximal.empty());
  ASSERT_FALSE(r.lassos.empty());
  for (const auto& l : r.lassos) {
    EXPECT_TRUE(l.pumping());
    EXPECT_TRUE(is_channel_compliant(l.lasso.unroll(3)));
  }
  EXPECT_TRUE(r.cap_hit);
  ASSERT_TRUE(r.cap_witness);
}

TEST(Explore, TrivialMachines) {
  const auto a = parse_csm("csm t { machine P { initial s ; final s ; } machine Q { initial s ; final s ; } }");
  const auto r = explore(a, 5, 2);
  EXPECT_EQ(maximal_words(r), (std::set<Word>{Word{}}));
  EXPECT_TRUE(r.lassos.empty());
  EXPECT_EQ(r.configurations, 1u);
}

TEST(Explore, TracesAreCompliantAndClosed) {
  for (const char* f : {"stream.csm", "c2.csm", "c3.csm", "c4.csm", "c6.csm"}) {
    const auto r = explore(fixture_csm(f), 10, 4);
    const auto words = maximal_words(r);
    for (const auto& w : words) {
      EXPECT_TRUE(is_channel_compliant(w)) << f;
      for (const auto& u : one_step_neighbors(w)) EXPECT_TRUE(words.count(u)) << f << ": " << format_word(w);
    }
  }
}

TEST(Explore, EpsilonTransitionsAreElided) {
  const auto a = parse_csm(
      "csm e { machine P { initial a ; final c ; a -> b : eps ; b -> c : ! Q m ; }"
      " machine Q { initial a ; final b ; a -> b : ? P m ; } }");
  EXPECT_EQ(maximal_words(explore(a, 6, 2)), (std::set<Word>{W("P>Q!m P>Q?m")}));
}

TEST(Projection, LanguageIsLinearizations) {
  testing::Rng rng(testing::base_seed() + 50);
  for (int i = 0; i < 80; ++i) {
    const auto m = testing::random_bmsc(rng, 6);
    const auto a = project_bmsc(m);
    EXPECT_TRUE(csm_problems(a).empty());
    const auto r = explore(a, m.size() + 1, m.size() + 1);
    const auto lins = linearizations(m);
    EXPECT_EQ(maximal_words(r), std::set<Word>(lins.begin(), lins.end())) << print_bmsc(m, "m");
    EXPECT_FALSE(check_deadlock(a, m.size() + 1, m.size() + 1)) << print_bmsc(m, "m");
  }
  const auto empty = project_bmsc(PrefixMsc());
  EXPECT_TRUE(empty.machines.empty());
  EXPECT_EQ(maximal_words(explore(empty, 3, 1)), (std::set<Word>{Word{}}));
}

TEST(Deadlock, Examples) {
  EXPECT_FALSE(check_deadlock(fixture_csm("stream.csm"), 12, 6));
  EXPECT_FALSE(check_deadlock(fixture_csm("c4.csm"), 12, 6));
  const auto waiting = parse_csm(
      "csm w { machine P { initial a ; final b ; a -> b : ? Q m ; }"
      " machine Q { initial a ; final b ; a -> b : ? P m ; } }");
  const auto d = check_deadlock(waiting, 4, 2);
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->trace.empty());
  EXPECT_EQ(d->configuration, initial_configuration(waiting));
}

TEST(Classify, Landscape) {
  const auto stream = classify_csm(fixture_csm("stream.csm"));
  ASSERT_EQ(stream.verdicts.size(), 3u);
  for (const auto& v : stream.verdicts) {
    EXPECT_TRUE(v.holds) << to_string(v.property);
    EXPECT_TRUE(v.bounded_claim);
  }
  EXPECT_EQ(stream.verdicts[1].parameter, 1u);
  EXPECT_EQ(stream.verdicts[2].parameter, 1u);

  const auto c5 = classify_csm(fixture_csm("c5.csm")).verdicts;
  EXPECT_FALSE(c5[0].holds);
  EXPECT_FALSE(c5[0].bounded_claim);
  ASSERT_TRUE(std::holds_alternative<CrossingPair>(c5[0].witness));
  EXPECT_EQ(std::get<CrossingPair>(c5[0].witness).prefix, W("P>Q!m Q>P!m"));
  EXPECT_FALSE(c5[1].holds);
  EXPECT_FALSE(c5[1].bounded_claim);
  EXPECT_TRUE(std::holds_alternative<Pumping>(c5[1].witness));
  EXPECT_TRUE(c5[2].holds);
  EXPECT_TRUE(c5[2].bounded_claim);
  EXPECT_EQ(c5[2].parameter, 1u);

  const auto c6 = classify_csm(fixture_csm("c6.csm")).verdicts;
  EXPECT_TRUE(c6[0].holds);
  EXPECT_TRUE(c6[0].bounded_claim);
  EXPECT_FALSE(c6[1].holds);
  EXPECT_FALSE(c6[1].bounded_claim);
  EXPECT_TRUE(c6[2].holds);
}

TEST(Classify, ProjectionsMatchTheirMscs) {
  for (const char* f : {"h2.bmsc", "h3.bmsc", "h4.bmsc", "h5.bmsc"}) {
    const auto m = testing::fixture_bmsc(f);
    const auto msc = classify_msc(m);
    const auto csm = classify_csm(project_bmsc(m)).verdicts;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(csm[i].holds, msc[i].holds) << f << " " << to_string(msc[i].property);
      if (msc[i].holds) {
        EXPECT_EQ(csm[i].parameter, msc[i].parameter) << f;
      }
    }
  }
}

TEST(Classify, BudgetIsReported) {
  EXPECT_THROW(explore(fixture_csm("stream.csm"), 12, 6, 10), BudgetExceeded);
}

TEST(TextFormat, RoundTrip) {
  for (const char* f : {"stream.csm", "c2.csm", "c3.csm", "c4.csm", "c5.csm", "c6.csm"}) {
    const auto a = fixture_csm(f);
    EXPECT_EQ(print_csm(parse_csm(print_csm(a))), print_csm(a)) << f;
    EXPECT_TRUE(csm_problems(a).empty()) << f;
  }
  EXPECT_THROW(parse_csm("csm x { machine P { s0 -> s1 : ! Q m ; } }"), ParseError);
  EXPECT_THROW(parse_csm("csm x { machine P { initial a ; a -> b : ! Q m ; } }"), InvalidModel);
  Csm hand{"hand", {}};
  hand.machines["P"] = StateMachine{"P", {"a", "b"}, "a", {"b"}, {{"a", Event::send("P", "Q", "m"), "b"}}};
  EXPECT_FALSE(csm_problems(hand).empty());
}

}  // namespace
}  // namespace chanres
