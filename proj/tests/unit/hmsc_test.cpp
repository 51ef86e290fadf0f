#include <gtest/gtest.h>

#include <algorithm>

#include "chanres/errors.hpp"
#include "chanres/global_type.hpp"
#include "chanres/hmsc.hpp"
#include "chanres/indist.hpp"
#include "common.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace chanres {
namespace {

using testing::fixture_hmsc;
using testing::W;

Hmsc single(const PrefixMsc& m) {
  Hmsc h("one");
  h.add_vertex("v", m);
  h.set_initial(0);
  h.add_terminal(0);
  return h;
}

bool has_kind(const HmscValidationReport& r, HmscViolation::Kind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const HmscViolation& v) { return v.kind == k; });
}

TEST(Validate, FixturesAndProblems) {
  for (const char* f : {"stream.hmsc", "h1.hmsc", "h6.hmsc", "h7.hmsc"}) EXPECT_TRUE(validate_hmsc(fixture_hmsc(f)).ok()) << f;

  Hmsc unreachable("u");
  unreachable.add_vertex("a");
  unreachable.add_vertex("b");
  unreachable.set_initial(0);
  unreachable.add_terminal(0);
  unreachable.add_terminal(1);
  EXPECT_TRUE(has_kind(validate_hmsc(unreachable), HmscViolation::Kind::Unreachable));

  Hmsc stuck("s");
  stuck.add_vertex("a");
  stuck.add_vertex("b");
  stuck.set_initial(0);
  stuck.add_edge(0, 1);
  EXPECT_TRUE(has_kind(validate_hmsc(stuck), HmscViolation::Kind::NotCompletable));

  EXPECT_TRUE(has_kind(validate_hmsc(Hmsc("none")), HmscViolation::Kind::NoInitial));
  EXPECT_TRUE(has_kind(validate_hmsc(single(msc_of(W("P>Q!m")))), HmscViolation::Kind::IncompleteLabel));
  EXPECT_THROW(unreachable.add_vertex("a"), InvalidModel);
}

TEST(Paths, Stream) {
  const auto h = fixture_hmsc("stream.hmsc");
  const auto ps = paths(h, 3);
  const auto start = *h.index_of("start");
  const auto loop = *h.index_of("loop");
  const auto exit = *h.index_of("exit");
  std::vector<HmscPath> finite;
  std::vector<HmscPath> lassos;
  for (const auto& p : ps) (p.is_lasso() ? lassos : finite).push_back(p);
  std::sort(finite.begin(), finite.end());
  EXPECT_EQ(finite, (std::vector<HmscPath>{{{start, loop, exit}, {}}, {{start, exit}, {}}}));
  EXPECT_EQ(lassos, (std::vector<HmscPath>{{{start}, {loop}}}));
  EXPECT_EQ(paths(single(PrefixMsc()), 4), (std::vector<HmscPath>{{{0}, {}}}));

  Hmsc ring("ring");
  ring.add_vertex("a");
  ring.add_vertex("b");
  ring.set_initial(0);
  ring.add_edge(0, 1);
  ring.add_edge(1, 0);
  for (const auto& p : paths(ring, 4)) EXPECT_TRUE(p.is_lasso());
}

TEST(Paths, MscOfPath) {
  const auto h = fixture_hmsc("stream.hmsc");
  const auto start = *h.index_of("start");
  const auto loop = *h.index_of("loop");
  const auto exit = *h.index_of("exit");
  EXPECT_TRUE(isomorphic(msc_of_path(h, {{exit}, {}}), msc_of(W("P>Q!nil P>Q?nil Q>P!ack Q>P?ack"))));
  EXPECT_TRUE(isomorphic(msc_of_path(h, {{start, loop, exit}, {}}),
                         msc_of(W("P>Q!cons P>Q?cons P>Q!nil P>Q?nil Q>P!ack Q>P?ack"))));
  EXPECT_EQ(msc_of_path(h, {{start}, {loop}}, 3).size(), 6u);
}

TEST(Language, StreamMatchesTypeClosure) {
  const auto h = fixture_hmsc("stream.hmsc");
  const auto lang = hmsc_language(h, 8);
  const auto type = type_language(testing::fixture_type("stream.gt"), 8);
  EXPECT_EQ(lang.words, closure(type.finite, 8));
  EXPECT_TRUE(lang.prefixes.count(W("P>Q!cons P>Q?cons P>Q!cons P>Q?cons")));
  EXPECT_EQ(hmsc_language(single(PrefixMsc()), 4).words, (std::set<Word>{Word{}}));
}

TEST(Language, RandomAgainstPathOracle) {
  testing::Rng rng(testing::base_seed() + 30);
  for (int i = 0; i < 60; ++i) {
    const auto h = testing::random_hmsc(rng, 4, 4);
    const auto words = hmsc_language(h, 7, 0).words;
    EXPECT_EQ(words, testing::oracle_hmsc_words(h, 7)) << print_hmsc(h);
    // The language is closed under indistinguishability.
    for (const auto& w : words) {
      for (const auto& u : one_step_neighbors(w)) EXPECT_TRUE(words.count(u)) << format_word(w);
    }
  }
}

TEST(Language, BudgetIsReported) {
  EXPECT_THROW(hmsc_language(fixture_hmsc("stream.hmsc"), 12, 3, 5), BudgetExceeded);
}

TEST(Restrictions, Fixtures) {
  const auto stream = fixture_hmsc("stream.hmsc");
  EXPECT_TRUE(hmsc_k_synchronisable(stream, 1).holds);
  EXPECT_EQ(hmsc_existential_bound(stream), 1u);
  EXPECT_TRUE(hmsc_half_duplex(stream).holds);

  const auto h5 = single(testing::fixture_bmsc("h5.bmsc"));
  const auto k2 = hmsc_k_synchronisable(h5, 2);
  EXPECT_FALSE(k2.holds);
  ASSERT_TRUE(std::holds_alternative<AtVertex>(k2.witness));
  EXPECT_EQ(std::get<AtVertex>(k2.witness).vertex, "v");
  EXPECT_EQ(hmsc_k_synchronisable(h5).parameter, 3u);
  EXPECT_EQ(hmsc_existential_bound(h5), 1u);
  EXPECT_FALSE(hmsc_k_synchronisable(single(testing::fixture_bmsc("h3.bmsc"))).holds);
  EXPECT_FALSE(hmsc_half_duplex(single(testing::fixture_bmsc("h2.bmsc"))).holds);
  EXPECT_EQ(hmsc_existential_bound(single(PrefixMsc())), 0u);

  const auto h7 = classify_hmsc(fixture_hmsc("h7.hmsc"));
  for (const auto& v : h7) EXPECT_TRUE(v.holds) << to_string(v.property);
  EXPECT_EQ(h7[1].parameter, 1u);
  EXPECT_EQ(h7[2].parameter, 1u);

  const auto capped = hmsc_exist_bound_verdict(single(msc_of(W("P>Q!a P>Q!b Q>P!go P>Q?a P>Q?b Q>P?go"))), 0);
  EXPECT_FALSE(capped.holds);
  EXPECT_TRUE(capped.bounded_claim);
}

// Vertex-local half-duplex against the words of the bounded language.
TEST(Restrictions, HalfDuplexRuleAgreesWithLanguage) {
  testing::Rng rng(testing::base_seed() + 31);
  for (int i = 0; i < 60; ++i) {
    const auto h = testing::random_hmsc(rng, 4, 4);
    const auto words = hmsc_language(h, 10, 0).words;
    const bool all_hd = std::all_of(words.begin(), words.end(), [](const Word& w) { return is_half_duplex_word(w); });
    const bool local = hmsc_half_duplex(h).holds;
    // A violating label shows up in every word through its vertex; words
    // may be cut off by the length bound, so only one direction is exact.
    if (local) {
      EXPECT_TRUE(all_hd) << print_hmsc(h);
    }
  }
}

TEST(Restrictions, OneSynchronousLabelsAreHalfDuplex) {
  testing::Rng rng(testing::base_seed() + 32);
  for (int i = 0; i < 200; ++i) {
    const auto h = testing::random_hmsc(rng, 5, 6);
    if (hmsc_k_synchronisable(h, 1).holds) {
      EXPECT_TRUE(hmsc_half_duplex(h).holds) << print_hmsc(h);
    }
  }
}

TEST(TextFormat, RoundTrip) {
  for (const char* f : {"stream.hmsc", "h1.hmsc", "h6.hmsc", "h7.hmsc"}) {
    const auto h = fixture_hmsc(f);
    const auto again = parse_hmsc(print_hmsc(h));
    EXPECT_EQ(print_hmsc(again), print_hmsc(h)) << f;
    EXPECT_EQ(again.edges(), h.edges());
  }
  EXPECT_THROW(parse_hmsc("hmsc x { initial a ; }"), ParseError);
  EXPECT_THROW(parse_hmsc("hmsc x { initial a ; vertex a = bmsc { } ; edge a -> b ; }"), ParseError);
}

}  // namespace
}  // namespace chanres
