#include <gtest/gtest.h>

#include <algorithm>

#include "shiftz/higher_block.hpp"
#include "support.hpp"

using namespace shiftz;
using shiftz::testing::Gen;

namespace {

BiPoint pt(const char* s) { return parse_point(s); }
ForbiddenSpec spec(const char* json) { return parse_spec_json(json); }
Letter tup(const Word& w) { return block_encode(w); }

std::vector<Word> words(std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* w : ws) out.push_back(parse_word(w));
  return out;
}

// Edge letters of the blocks, as (M+1)-tuples.
std::vector<Word> edge_blocks_as_tuples(const std::vector<Word>& bs, int arity) {
  std::vector<Word> out;
  for (const auto& b : bs) {
    Word w;
    for (Letter a : b) {
      if (a == kEmpty) {
        w.push_back(kEmpty);
        continue;
      }
      const Word t = block_decode(a, arity);
      w.insert(w.end(), t.begin(), t.end());
    }
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(HigherBlock, Encode) {
  const BiPoint y = hb_encode(2, pt("(0)^- . (1)^+"));
  EXPECT_EQ(y, BiPoint::infinite({tup({0, 0})}, {tup({0, 1})}, {tup({1, 1})}, 1));
  EXPECT_EQ(format_point(y, 2), "([00])^- . [01] ([11])^+");
  EXPECT_EQ(hb_encode(3, pt("(4)^- . (4)^+")), BiPoint::infinite({tup({4, 4, 4})}, {}, {tup({4, 4, 4})}, 1));
  EXPECT_EQ(hb_encode(2, pt("@")), pt("@"));
}

TEST(HigherBlock, Decode) {
  const BiPoint x = pt("(01)^- . (01)^+");
  EXPECT_EQ(hb_decode(2, hb_encode(2, x)), x);
  EXPECT_EQ(hb_decode(2, pt("@")), pt("@"));
  const BiPoint bad = BiPoint::infinite({tup({0, 1})}, {}, {tup({0, 0})}, 1);
  try {
    hb_decode(2, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentOverlaps);
  }
}

TEST(HigherBlock, ConjugacyOnSamples) {
  Gen g(50);
  for (int m = 2; m <= 4; ++m) {
    for (int i = 0; i < 200; ++i) {
      const BiPoint x = g.point(4);
      const BiPoint y = hb_encode(m, x);
      EXPECT_EQ(hb_decode(m, y), x);
      EXPECT_EQ(hb_encode(m, shift(x, 1)), shift(y, 1));
    }
  }
}

TEST(HigherBlock, RecodedSpec) {
  const ForbiddenSpec a = hb_spec(2, spec(R"({"forbid_words": ["11"]})"));
  EXPECT_EQ(a.overlap_m, 2);
  const SpaceHandle ha(a);
  EXPECT_FALSE(ha.contains(hb_encode(2, pt("(0)^- . (1)^+"))));
  EXPECT_TRUE(ha.contains(hb_encode(2, pt("(01)^- . (01)^+"))));
  EXPECT_FALSE(ha.contains(BiPoint::infinite({tup({0, 1}), tup({0, 0})}, {}, {tup({0, 1}), tup({0, 0})}, 1)));

  const ForbiddenSpec b = hb_spec(2, spec("{}"));
  EXPECT_TRUE(b.words.empty());
  EXPECT_EQ(b.overlap_m, 2);

  const SpaceHandle hc(hb_spec(2, spec(R"({"forbid_words": ["*2"]})")));
  EXPECT_FALSE(hc.contains(hb_encode(2, pt("(0)^- 2 . (0)^+"))));
  EXPECT_TRUE(hc.contains(hb_encode(2, pt("(0)^- 3 . (0)^+"))));
}

TEST(HigherBlock, SpecMatchesMembership) {
  Gen g(51);
  for (int m = 2; m <= 3; ++m) {
    for (int i = 0; i < 40; ++i) {
      const ForbiddenSpec s = g.spec(3, 3);
      const SpaceHandle a(s), b(hb_spec(m, s));
      for (int j = 0; j < 30; ++j) {
        const BiPoint x = g.point(4);
        EXPECT_EQ(b.contains(hb_encode(m, x)), a.contains(x)) << spec_to_json(s) << format_point(x);
      }
    }
  }
}

TEST(HigherBlock, StepFormula) {
  Gen g(52);
  for (int k = 1; k <= 4; ++k) {
    for (int m = 1; m <= k + 1; ++m) {
      for (int i = 0; i < 3; ++i) {
        ForbiddenSpec s;
        s.words.push_back(exact_pattern(g.word(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 1), 3)));
        s.normalize();
        ASSERT_EQ(classify(SpaceHandle(s)).m_step, k);
        EXPECT_EQ(classify(SpaceHandle(hb_spec(m, s))).m_step, std::max(1, k - m + 1)) << k << " " << m;
      }
    }
  }
}

TEST(HigherBlock, NeverFiniteTypeOverInfiniteAlphabet) {
  const Classification c = classify(SpaceHandle(hb_spec(2, spec(R"({"forbid_words": ["11"]})"))));
  EXPECT_FALSE(c.finite_type);
  EXPECT_FALSE(c.row_finite);
}

TEST(EdgeShift, GoldenMean) {
  const EdgeShift es = to_edge_shift(SpaceHandle(spec(R"({"forbid_words": ["11"]})")), 1, 2);
  EXPECT_EQ(es.graph.vertices, words({"0", "1"}));
  EXPECT_EQ(es.graph.edges, words({"00", "01", "10"}));
  for (const auto& e : es.graph.edges) {
    EXPECT_LT(es.graph.vertex_index(es.graph.initial(e)), es.graph.vertices.size());
    EXPECT_LT(es.graph.vertex_index(es.graph.terminal(e)), es.graph.vertices.size());
  }
}

TEST(EdgeShift, FullShift) {
  const EdgeShift es = to_edge_shift(SpaceHandle(spec("{}")), 0, 3);
  EXPECT_EQ(es.graph.vertices.size(), 1u);
  EXPECT_EQ(es.graph.edges, words({"0", "1", "2"}));
}

TEST(EdgeShift, WildcardSpec) {
  const EdgeShift es = to_edge_shift(SpaceHandle(spec(R"({"forbid_words": ["*2"]})")), 1, 3);
  for (const auto& e : es.graph.edges) EXPECT_NE(e.back(), 2);
  EXPECT_EQ(es.graph.vertex_index({2}), es.graph.vertices.size());
}

TEST(EdgeShift, Errors) {
  try {
    to_edge_shift(SpaceHandle(spec(R"({"allow_tails": ["1"]})")), 1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFiniteStep);
  }
}

TEST(EdgeSpace, Membership) {
  const SpaceHandle h(spec(R"({"forbid_words": ["11"]})"));
  const EdgeSpace es = edge_space(h, 1);
  const Letter e00 = tup({0, 0}), e01 = tup({0, 1}), e10 = tup({1, 0});
  EXPECT_TRUE(es.contains(BiPoint::infinite({e00}, {}, {e00}, 1)));
  EXPECT_TRUE(es.contains(BiPoint::infinite({e01, e10}, {}, {e01, e10}, 1)));
  EXPECT_FALSE(es.contains(BiPoint::infinite({e01, e00}, {}, {e01, e00}, 1)));

  const SpaceHandle finite(spec(R"({"forbid_words": ["11"], "alphabet": [0, 1]})"));
  const EdgeSpace fs = edge_space(finite, 1);
  EXPECT_FALSE(fs.contains(BiPoint::finite(LeftRay{{e00}, {e01}, 0})));
  EXPECT_TRUE(es.contains(BiPoint::finite(LeftRay{{e00}, {e01}, 0})));
}

TEST(EdgeSpace, BlocksMatchRecodedSpec) {
  const SpaceHandle h(spec(R"({"forbid_words": ["11"]})"));
  const EdgeSpace es = edge_space(h, 1);
  const SpaceHandle recoded(hb_spec(2, h.spec()));
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(edge_blocks_as_tuples(es.blocks(n, 2), 2), edge_blocks_as_tuples(blocks(recoded, n, 2), 2)) << n;
  }
}

TEST(EdgeShift, Dot) {
  const EdgeShift es = to_edge_shift(SpaceHandle(spec(R"({"forbid_words": ["11"]})")), 1, 2);
  const std::string dot = graph_to_dot(es.graph);
  EXPECT_NE(dot.find("\"0\" -> \"1\" [label=\"01\"]"), std::string::npos);
  EXPECT_EQ(block_label({}), "ε");
  EXPECT_EQ(block_label({kStar}), "*");
}
