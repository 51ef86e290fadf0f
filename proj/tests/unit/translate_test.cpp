#include <gtest/gtest.h>

#include "chanres/errors.hpp"
#include "chanres/translate.hpp"
#include "common.hpp"
#include "generators.hpp"

namespace chanres {
namespace {

using testing::W;

std::size_t branch_count(const GlobalTypePtr& g) {
  std::size_t n = 0;
  for (const auto& s : subterms(g)) {
    if (const auto* c = std::get_if<Choice>(&s->node)) n += c->branches.size();
  }
  return n;
}

TEST(Translate, StreamStructure) {
  const auto g = testing::fixture_type("stream.gt");
  const auto out = translate(g);
  const auto& h = out.hmsc;
  EXPECT_EQ(h.size(), 8u);
  EXPECT_TRUE(validate_hmsc(h).ok());
  std::size_t labelled = 0;
  for (const auto& v : h.vertices()) labelled += !v.label.empty();
  // cons, nil and ack exchanges.
  EXPECT_EQ(labelled, 3u);
  ASSERT_EQ(out.origin.size(), h.size());
  EXPECT_EQ(*out.origin[*h.initial()].subterm, *g);
  ASSERT_EQ(h.terminals().size(), 1u);
  EXPECT_TRUE(std::holds_alternative<End>(out.origin[*h.terminals().begin()].subterm->node));
}

TEST(Translate, SmallTypes) {
  const auto end = translate(make_end()).hmsc;
  EXPECT_EQ(end.size(), 1u);
  EXPECT_TRUE(end.is_terminal(*end.initial()));

  const auto one = translate(parse_global_type("P->Q:m . end"));
  const auto& h = one.hmsc;
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
  EXPECT_EQ(one.origin[1].branch, 1u);
  EXPECT_TRUE(isomorphic(h.vertex(1).label, msc_of(W("P>Q!m P>Q?m"))));
}

TEST(Translate, VertexCountAndBranchShape) {
  testing::Rng rng(testing::base_seed() + 40);
  for (int i = 0; i < 100; ++i) {
    const auto g = testing::random_global_type(rng, {});
    const auto out = translate(g);
    const auto& h = out.hmsc;
    EXPECT_EQ(h.size(), subterms(g).size() + branch_count(g));
    for (std::size_t v = 0; v < h.size(); ++v) {
      if (!out.origin[v].branch) continue;
      std::size_t in = 0;
      for (const auto& [a, b] : h.edges()) in += b == v;
      EXPECT_EQ(in, 1u);
      EXPECT_EQ(h.successors(v).size(), 1u);
      EXPECT_EQ(h.vertex(v).label.size(), 2u);
    }
  }
}

TEST(Translate, RestrictionsOfTranslatedTypes) {
  testing::Rng rng(testing::base_seed() + 41);
  for (int i = 0; i < 100; ++i) {
    const auto h = translate(testing::random_global_type(rng, {})).hmsc;
    EXPECT_TRUE(hmsc_half_duplex(h).holds);
    EXPECT_LE(hmsc_existential_bound(h), 1u);
    EXPECT_TRUE(hmsc_k_synchronisable(h, 1).holds);
  }
}

TEST(Verify, Examples) {
  const auto stream = verify_translation(testing::fixture_type("stream.gt"), 10);
  EXPECT_TRUE(stream.ok());
  EXPECT_TRUE(stream.strict);
  const auto ex = verify_translation(testing::fixture_type("two_pairs.gt"), 10);
  EXPECT_TRUE(ex.ok());
  EXPECT_TRUE(ex.strict);
  EXPECT_EQ(ex.type_words, 1u);
  EXPECT_EQ(ex.hmsc_words, 6u);
  const auto end = verify_translation(make_end(), 4);
  EXPECT_TRUE(end.ok());
  EXPECT_FALSE(end.strict);
  EXPECT_EQ(end.hmsc_words, 1u);
}

TEST(Fuse, KeepsLanguage) {
  testing::Rng rng(testing::base_seed() + 42);
  for (int i = 0; i < 50; ++i) {
    const auto h = translate(testing::random_global_type(rng, {4, 3, 2})).hmsc;
    const auto fused = fuse_empty_vertices(h);
    EXPECT_LE(fused.size(), h.size());
    EXPECT_TRUE(validate_hmsc(fused).ok());
    EXPECT_EQ(hmsc_language(fused, 8, 0).words, hmsc_language(h, 8, 0).words);
  }
}

TEST(Translate, RejectsIllFormed) {
  EXPECT_THROW(translate(make_rec("t", make_var("t"))), InvalidModel);
}

}  // namespace
}  // namespace chanres
