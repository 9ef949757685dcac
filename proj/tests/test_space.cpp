#include <gtest/gtest.h>

#include <algorithm>

#include "shiftz/space.hpp"
#include "support.hpp"

using namespace shiftz;
using shiftz::testing::all_words;
using shiftz::testing::brute_in_language;
using shiftz::testing::Gen;
using shiftz::testing::scan_contains;

namespace {

BiPoint pt(const char* s) { return parse_point(s); }
ForbiddenSpec spec(const char* json) { return parse_spec_json(json); }
SpaceHandle space(const char* json) { return SpaceHandle(spec(json)); }

const char* kGolden = R"({"forbid_words": ["11"]})";
const char* kOnesTail = R"({"allow_tails": ["1"]})";
const char* kStarTwoNoOnes = R"({"forbid_words": ["*2"], "forbid_tails_containing": ["1"]})";

std::vector<Word> words(std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* w : ws) out.push_back(parse_word(w));
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Overflow;
}

}  // namespace

TEST(Spec, JsonRoundTrip) {
  const ForbiddenSpec s = spec(R"({"forbid_words": ["11", "*2"], "forbid_tails": ["(01)^- 1"]})");
  EXPECT_EQ(parse_spec_json(spec_to_json(spec(R"({"forbid_words": ["1"], "alphabet": [0, 1, 2]})"))),
            spec(R"({"forbid_words": ["1"], "alphabet": [0, 1, 2]})"));
  EXPECT_EQ(parse_spec_json(spec_to_json(s)), s);
  EXPECT_EQ(kind_of([] { spec(R"({"forbid": []})"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { spec(R"({"forbid_words": [""]})"); }), ErrorKind::Parse);
}

TEST(Space, ContainsExamples) {
  const SpaceHandle h = space(kGolden);
  EXPECT_FALSE(h.contains(pt("(0)^- . (1)^+")));
  EXPECT_TRUE(h.contains(pt("(01)^- . (01)^+")));
  EXPECT_TRUE(h.contains(pt("(0)^- 1 . #")));
  EXPECT_TRUE(h.contains(pt("@")));
}

TEST(Space, ContainsMatchesScanner) {
  Gen g(30);
  for (int i = 0; i < 200; ++i) {
    const ForbiddenSpec s = g.spec(3, 3);
    const SpaceHandle h(s);
    for (int j = 0; j < 40; ++j) {
      const BiPoint x = g.infinite_point(4);
      EXPECT_EQ(h.contains(x), scan_contains(s, x)) << spec_to_json(s) << format_point(x);
    }
  }
}

TEST(Space, ShiftInvariant) {
  Gen g(31);
  for (int i = 0; i < 100; ++i) {
    const SpaceHandle h(g.spec(3, 3));
    for (int j = 0; j < 20; ++j) {
      const BiPoint x = g.point(4);
      EXPECT_EQ(h.contains(x), h.contains(shift(x, 1)));
    }
  }
}

TEST(Space, BlocksExamples) {
  EXPECT_EQ(blocks(space(kGolden), 2, 3),
            words({"00", "01", "02", "10", "12", "20", "21", "22", "0_", "1_", "2_", "__"}));
  EXPECT_EQ(blocks(space("{}"), 1, 2), words({"0", "1", "_"}));
  EXPECT_EQ(blocks(space(R"({"forbid_words": ["*2"]})"), 1, 4), words({"0", "1", "3", "_"}));
}

TEST(Space, BlocksMatchBruteForce) {
  Gen g(32);
  for (int i = 0; i < 40; ++i) {
    const ForbiddenSpec s = g.word_spec(3, 3);
    const SpaceHandle h(s);
    for (int n = 1; n <= 3; ++n) {
      const auto got = blocks(h, n, 3);
      for (const auto& w : all_words(n, 3)) {
        const bool listed = std::binary_search(got.begin(), got.end(), w, block_less);
        EXPECT_EQ(listed, brute_in_language(s, w, 4, 1)) << spec_to_json(s) << format_word(w);
      }
    }
  }
}

TEST(Space, FollowerSets) {
  const SpaceHandle h = space(kGolden);
  const FollowerSet a = follower_set(h, parse_word("1"), 1, Direction::Forward, 4);
  EXPECT_EQ(a.words, words({"0", "2", "3"}));
  EXPECT_TRUE(a.infinite);
  const FollowerSet b = follower_set(h, parse_ray("(0)^- 1 @0"), 1, 4);
  EXPECT_EQ(b.words, words({"0", "2", "3"}));
  EXPECT_TRUE(b.infinite);
  EXPECT_EQ(kind_of([] { follower_set(space(kOnesTail), parse_ray("(0)^- @0"), 1, 3); }), ErrorKind::NotInLanguage);
  const FollowerSet c = follower_set(h, parse_word("1"), 1, Direction::Backward, 3);
  EXPECT_EQ(c.words, words({"0", "2"}));
}

TEST(Space, Iep) {
  EXPECT_TRUE(has_iep(space(kGolden), pt("(0)^- 1 . #")));
  EXPECT_TRUE(has_iep(space(kOnesTail), pt("(1)^- 0 . #")));
  EXPECT_FALSE(has_iep(space(R"({"forbid_words": ["11"], "alphabet": [0, 1]})"), pt("(0)^- 1 . #")));
}

TEST(Space, FinitePointsHaveIep) {
  Gen g(33);
  for (int i = 0; i < 100; ++i) {
    const SpaceHandle h(g.spec(3, 3));
    for (int j = 0; j < 10; ++j) {
      const BiPoint x = g.finite_point(3);
      if (h.contains(x)) EXPECT_TRUE(has_iep(h, x)) << format_point(x);
    }
  }
}

TEST(Space, Minimality) {
  const MinimalityReport d = is_minimal(spec(kStarTwoNoOnes));
  EXPECT_FALSE(d.minimal);
  EXPECT_EQ(d.witness, parse_word("2"));
  EXPECT_TRUE(is_minimal(spec(kGolden)).minimal);
  const MinimalityReport e = is_minimal(spec(R"({"forbid_words": ["11", "1"]})"));
  EXPECT_FALSE(e.minimal);
  EXPECT_EQ(e.witness, parse_word("1"));
}

TEST(Space, Minimalize) {
  EXPECT_EQ(minimalize(spec(kStarTwoNoOnes)), spec(R"({"forbid_words": ["1", "2"]})"));
  EXPECT_EQ(minimalize(spec(kGolden)), spec(kGolden));
  EXPECT_EQ(minimalize(spec(R"({"forbid_words": ["112", "11"]})")), spec(kGolden));
}

TEST(Space, MinimalizeIsEquivalentAndMinimal) {
  Gen g(34);
  for (int i = 0; i < 60; ++i) {
    const ForbiddenSpec s = g.spec(3, 3, false);
    const ForbiddenSpec m = minimalize(s);
    EXPECT_TRUE(is_minimal(m).minimal) << spec_to_json(s);
    const SpaceHandle a(s), b(m);
    for (int j = 0; j < 50; ++j) {
      const BiPoint x = g.point(4);
      EXPECT_EQ(a.contains(x), b.contains(x)) << spec_to_json(s) << format_point(x);
    }
  }
}

TEST(Space, RestrictionsDoNotChangeBlocksOfMinimalSpecs) {
  Gen g(35);
  int tested = 0;
  while (tested < 15) {
    const ForbiddenSpec s = g.spec(3, 3);
    if (!is_minimal(s).minimal || (s.tails.empty() && !s.allow_tails)) continue;
    ForbiddenSpec words_only;
    words_only.words = s.words;
    const SpaceHandle a(s), b(words_only);
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(blocks(a, n, 4), blocks(b, n, 4)) << spec_to_json(s);
    ++tested;
  }
}

TEST(Space, Classify) {
  const Classification a = classify(space(kGolden));
  EXPECT_FALSE(a.row_finite);
  EXPECT_EQ(a.m_step, 1);
  EXPECT_TRUE(a.finite_type);
  const Classification b = classify(space(R"({"forbid_words": ["*2"]})"));
  EXPECT_EQ(b.m_step, 1);
  EXPECT_FALSE(b.finite_type);
  EXPECT_FALSE(classify(space(kOnesTail)).m_step.has_value());
  const Classification c = classify(space(R"({"forbid_words": ["11"], "alphabet": [0, 1]})"));
  EXPECT_TRUE(c.row_finite);
  EXPECT_TRUE(c.column_finite);
}

TEST(Space, EqualSpaces) {
  EXPECT_TRUE(equal_spaces(space(kGolden), space(R"({"forbid_words": ["11", "112"]})"), 4, 4).equal);
  const EqualVerdict b = equal_spaces(space(kGolden), space(R"({"forbid_words": ["12"]})"), 4, 4);
  EXPECT_FALSE(b.equal);
  EXPECT_EQ(b.witness, "1 2");
  const EqualVerdict c = equal_spaces(space(kOnesTail), space("{}"), 3, 3);
  EXPECT_FALSE(c.equal);
  EXPECT_NE(c.witness.find(")^-"), std::string::npos);
}

TEST(Space, EmptyPointMembership) {
  EXPECT_TRUE(space("{}").contains(pt("@")));
  EXPECT_FALSE(space(R"({"forbid_words": ["*"]})").contains(pt("@")));
  EXPECT_FALSE(space(R"({"forbid_words": ["01", "10", "11"], "alphabet": [0, 1]})").contains(pt("@")));
  EXPECT_TRUE(space(R"({"forbid_words": ["11"], "alphabet": [0, 1]})").contains(pt("@")));
}
