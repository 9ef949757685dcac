#include <gtest/gtest.h>

#include "shiftz/words.hpp"
#include "support.hpp"

using namespace shiftz;
using shiftz::testing::Gen;

namespace {

LeftRay ray(const char* s) { return parse_ray(s); }

Word expand_ray(const LeftRay& r, std::int64_t depth) { return r.window(r.end - depth + 1, r.end); }

}  // namespace

TEST(Words, PrimitiveRoot) {
  EXPECT_EQ(primitive_root(parse_word("0101")), parse_word("01"));
  EXPECT_EQ(primitive_root(parse_word("010")), parse_word("010"));
  EXPECT_EQ(primitive_root(parse_word("111")), parse_word("1"));
  EXPECT_TRUE(is_conjugate(parse_word("01"), parse_word("10")));
  EXPECT_FALSE(is_conjugate(parse_word("011"), parse_word("010")));
}

TEST(Words, BlockLettersRoundTrip) {
  Gen g(1);
  for (int i = 0; i < 500; ++i) {
    const int m = static_cast<int>(g.range(1, 4));
    const Word t = g.word(static_cast<std::size_t>(m), static_cast<std::size_t>(m), 20);
    EXPECT_EQ(block_decode(block_encode(t), m), t);
  }
  EXPECT_EQ(format_letter(block_encode({0, 1}), 2), "[01]");
}

TEST(Words, PatternsNeverMatchEmpty) {
  const Pattern p = parse_pattern("*");
  EXPECT_TRUE(p.matches_at({3}, 0));
  EXPECT_FALSE(p.matches_at({kEmpty}, 0));
  const Pattern q = parse_pattern("~{1,2}");
  EXPECT_TRUE(q.matches_at({0}, 0));
  EXPECT_FALSE(q.matches_at({2}, 0));
}

TEST(Words, TextRoundTrip) {
  EXPECT_EQ(parse_word("1 2 <13> _"), (Word{1, 2, 13, kEmpty}));
  EXPECT_EQ(format_word({1, 13, kEmpty}), "1 <13> _");
  EXPECT_EQ(format_pattern(parse_pattern("*2")), "*2");
  EXPECT_EQ(format_ray(ray("(0)^- 1 @3")), "(0)^- 1 @3");
  EXPECT_THROW(parse_ray("()^- 1"), Error);
}

TEST(CanonicalizeRay, Examples) {
  EXPECT_EQ(canonicalize_ray({1, 1}, {1}, 0), (LeftRay{{1}, {}, 0}));
  EXPECT_EQ(canonicalize_ray({0, 1}, {0, 1}, 0), (LeftRay{{0, 1}, {}, 0}));
  EXPECT_EQ(canonicalize_ray({0, 1, 0, 1}, {}, 3), (LeftRay{{0, 1}, {}, 3}));
}

TEST(CanonicalizeRay, Errors) {
  try {
    canonicalize_ray({}, {1}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyPeriod);
  }
  try {
    canonicalize_ray({1}, {kEmpty}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyLetterInRay);
  }
}

TEST(CanonicalizeRay, IdempotentAndPreservesDenotation) {
  Gen g(2);
  for (int i = 0; i < 1000; ++i) {
    const Word p = g.word(1, 6, 3);
    const Word t = g.word(0, 6, 3);
    const std::int64_t k = g.range(-10, 10);
    const LeftRay c = canonicalize_ray(p, t, k);
    EXPECT_EQ(canonicalize_ray(c.period, c.transient, c.end), c);
    EXPECT_TRUE(is_primitive(c.period));
    const LeftRay raw{p, t, k};
    const auto depth = static_cast<std::int64_t>(3 * p.size() + t.size());
    EXPECT_EQ(expand_ray(c, depth), expand_ray(raw, depth));
  }
}

TEST(CanonicalizeRay, EqualityMatchesExpansion) {
  Gen g(3);
  for (int i = 0; i < 2000; ++i) {
    const LeftRay a = canonicalize_ray(g.word(1, 2, 2), g.word(0, 2, 2), 0);
    const LeftRay b = canonicalize_ray(g.word(1, 2, 2), g.word(0, 2, 2), 0);
    EXPECT_EQ(a == b, expand_ray(a, 100) == expand_ray(b, 100));
  }
}

TEST(RayOccurrences, Examples) {
  const Occurrences a = ray_subword_occurrences(ray("(1)^- @0"), parse_pattern("11"));
  ASSERT_TRUE(a.infinite());
  EXPECT_EQ(a.heads.front(), 0);
  EXPECT_EQ(a.stride, -1);

  EXPECT_TRUE(ray_subword_occurrences(ray("(0)^- 1 @0"), parse_pattern("11")).none());

  const Occurrences c = ray_subword_occurrences(ray("(01)^- @0"), parse_pattern("10"));
  ASSERT_TRUE(c.infinite());
  EXPECT_TRUE(c.contains(-1));
  EXPECT_TRUE(c.contains(-3));
  EXPECT_FALSE(c.contains(0));
  EXPECT_EQ(c.stride, -2);
}

TEST(RayOccurrences, AgreesWithNaiveScan) {
  Gen g(4);
  for (int i = 0; i < 1000; ++i) {
    const LeftRay r = g.ray(3);
    const Pattern p = g.pattern(4, 3);
    const Occurrences occ = ray_subword_occurrences(r, p);
    const auto depth = static_cast<std::int64_t>(p.size() + 2 * r.period.size() + r.transient.size()) + 20;
    const Word w = expand_ray(r, depth);
    for (std::int64_t j = r.end; j > r.end - depth + static_cast<std::int64_t>(p.size()) - 1; --j) {
      const auto at = static_cast<std::int64_t>(w.size()) - 1 - (r.end - j);
      EXPECT_EQ(occ.contains(j), p.matches_at(w, at)) << format_ray(r) << " " << format_pattern(p) << " " << j;
    }
  }
}

TEST(RayTail, Examples) {
  EXPECT_TRUE(ray_equals_pattern_tail(ray("(1)^- @0"), ray("(1)^- @0")));
  EXPECT_FALSE(ray_equals_pattern_tail(ray("(0)^- 1 @0"), ray("(1)^- @0")));
  EXPECT_TRUE(ray_equals_pattern_tail(ray("(01)^- @0"), ray("(10)^- @0")));
}

TEST(RayTail, AgreesWithShiftedComparison) {
  Gen g(5);
  for (int i = 0; i < 500; ++i) {
    const LeftRay r = canonicalize_ray(g.word(1, 2, 2), g.word(0, 3, 2), 0);
    const LeftRay f = canonicalize_ray(g.word(1, 2, 2), g.word(0, 2, 2), 0);
    bool found = false;
    for (std::int64_t k = -12; k <= 0 && !found; ++k) {
      bool all = true;
      for (std::int64_t j = 0; j < 30 && all; ++j) all = r.at(k - j) == f.at(-j);
      found = all;
    }
    EXPECT_EQ(ray_equals_pattern_tail(r, f), found) << format_ray(r) << " vs " << format_ray(f);
  }
}
