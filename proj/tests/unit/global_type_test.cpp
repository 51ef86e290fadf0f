#include <gtest/gtest.h>

#include "chanres/errors.hpp"
#include "chanres/global_type.hpp"
#include "common.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace chanres {
namespace {

using testing::W;

TEST(Parse, PrintRoundTrip) {
  const auto g = testing::fixture_type("stream.gt");
  EXPECT_EQ(*parse_global_type(print_global_type(*g)), *g);
  EXPECT_EQ(processes_of(*g), (std::set<ProcessId>{"P", "Q"}));
  testing::Rng rng(testing::base_seed() + 20);
  for (int i = 0; i < 100; ++i) {
    const auto r = testing::random_global_type(rng, {});
    EXPECT_EQ(well_formedness_error(*r), "");
    EXPECT_EQ(*parse_global_type(print_global_type(*r)), *r) << print_global_type(*r);
  }
}

TEST(Parse, WellFormednessErrors) {
  EXPECT_THROW(parse_global_type("rec t . t"), ParseError);
  EXPECT_THROW(parse_global_type("( P->Q:m . end + P->Q:m . end )"), ParseError);
  EXPECT_THROW(parse_global_type("( P->Q:m . end + R->Q:n . end )"), ParseError);
  EXPECT_THROW(parse_global_type("P->Q:m . t"), ParseError);
  EXPECT_THROW(parse_global_type("P->P:m . end"), ParseError);
  EXPECT_THROW(parse_global_type("rec t . P->Q:m . rec t . Q->P:n . t"), ParseError);
  EXPECT_THROW(parse_global_type("P->Q:m ."), ParseError);
  try {
    parse_global_type("P->Q:m .\n  Q-> P");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Subterms, Counts) {
  EXPECT_EQ(subterms(make_end()).size(), 1u);
  EXPECT_EQ(subterms(testing::fixture_type("stream.gt")).size(), 5u);
  EXPECT_EQ(subterms(parse_global_type("rec t . P->Q:m . t")).size(), 3u);
}

TEST(Language, Examples) {
  const auto stream = type_language(testing::fixture_type("stream.gt"), 8);
  EXPECT_TRUE(stream.finite.count(W("P>Q!nil P>Q?nil Q>P!ack Q>P?ack")));
  EXPECT_TRUE(stream.finite.count(W("P>Q!cons P>Q?cons P>Q!nil P>Q?nil Q>P!ack Q>P?ack")));
  EXPECT_EQ(stream.finite.size(), 3u);
  EXPECT_TRUE(stream.lassos.count(Lasso{{}, W("P>Q!cons P>Q?cons")}));

  const auto end = type_language(make_end(), 4);
  EXPECT_EQ(end.finite, (std::set<Word>{Word{}}));
  EXPECT_TRUE(end.lassos.empty());

  const auto ex = type_language(testing::fixture_type("two_pairs.gt"), 10);
  EXPECT_EQ(ex.finite, (std::set<Word>{W("P>Q!m1 P>Q?m1 R>S!m2 R>S?m2")}));
}

TEST(Language, AgreesWithUnfolding) {
  testing::Rng rng(testing::base_seed() + 21);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_global_type(rng, {4, 3, 3});
    EXPECT_EQ(type_language(g, 10).finite, testing::oracle_type_words(g, 10)) << print_global_type(*g);
  }
}

}  // namespace
}  // namespace chanres
