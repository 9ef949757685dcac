// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// usage: acceptance <cli> <data-dir> <golden-dir>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "shiftz/batch.hpp"
#include "shiftz/block_code.hpp"
#include "shiftz/bridge.hpp"
#include "shiftz/higher_block.hpp"
#include "shiftz/point.hpp"
#include "shiftz/space.hpp"
#include "shiftz/topology.hpp"
#include "support.hpp"

using namespace shiftz;
using namespace shiftz::testing;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string cli_path, data_dir, golden_dir;

// --- 1 ------------------------------------------------------------------------

Check point_algebra() {
  Check c;
  Gen g(1001);
  int equal_pairs = 0;
  for (int i = 0; i < 1000 && c.ok; ++i) {
    const BiPoint x = g.point(4);
    const std::int64_t n = g.range(-30, 30);
    const BiPoint y = shift(x, n);
    c.require(shift(y, -n) == x, "shift round trip on " + format_point(x));
    for (std::int64_t j = -50; j <= 50; ++j) c.require(y.at(j) == x.at(j + n), "index commutation on " + format_point(x));
    const BiPoint z = g.point(2, 1);
    const BiPoint w = g.coin() ? g.point(2, 1) : shift(shift(z, 7), -7);
    const bool same = expand(z, -40, 40) == expand(w, -40, 40);
    c.require((z == w) == same, "canonical equality on " + format_point(z) + " vs " + format_point(w));
    equal_pairs += same;
  }
  c.require(equal_pairs > 0, "no equal pairs sampled");
  return c;
}

// --- 2 ------------------------------------------------------------------------

Check cylinder_algebra() {
  Check c;
  Gen g(1002);
  std::array<int, 3> hits{};
  for (int i = 0; i < 100; ++i) {
    const Cylinder a = g.cylinder(3);
    Cylinder b = g.cylinder(3);
    // A third of the pairs share a base and a third are nested.
    const auto r = i % 3;
    if (r == 0) b = Cylinder::make(a.base, b.excluded);
    if (r == 1) b = Cylinder::make(append_ray(a.base, g.word(1, 2, 3)), b.excluded);
    const auto both = cyl_intersect(a, b);
    ++hits[static_cast<std::size_t>(intersect_case(a, b))];
    const BasicOpen co = BasicOpen::complement_of({Cylinder::make(a.base), Cylinder::make(b.base)});
    for (int j = 0; j < 100; ++j) {
      const BiPoint y = j % 2 == 0 ? g.point_in(j % 4 == 0 ? a : b, 3) : g.point(3);
      const bool in_a = cyl_contains(a, y), in_b = cyl_contains(b, y);
      c.require((both ? cyl_contains(*both, y) : false) == (in_a && in_b),
                "intersection of " + format_cylinder(a) + " and " + format_cylinder(b) + " at " + format_point(y));
      const bool in_any = cyl_contains(co.family[0], y) || (co.family.size() > 1 && cyl_contains(co.family[1], y));
      c.require(basic_contains(co, y) == !in_any, "complement duality at " + format_point(y));
    }
  }
  c.require(hits[0] > 0 && hits[1] > 0 && hits[2] > 0,
            "case coverage " + std::to_string(hits[0]) + "/" + std::to_string(hits[1]) + "/" + std::to_string(hits[2]));
  if (c.ok) {
    c.detail = "cases nested/same-base/disjoint = " + std::to_string(hits[0]) + "/" + std::to_string(hits[1]) + "/" +
               std::to_string(hits[2]);
  }
  return c;
}

// --- 3 ------------------------------------------------------------------------

// Every single-pattern spec with cells in {0..4, *} and length <= 4.
std::vector<ForbiddenSpec> small_specs() {
  std::vector<ForbiddenSpec> out;
  std::vector<Pattern> layer{Pattern{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Pattern> next;
    for (const auto& p : layer) {
      for (int a = 0; a <= 5; ++a) {
        Pattern q = p;
        q.cells.push_back(a == 5 ? Cell::wild() : Cell::exact(a));
        next.push_back(std::move(q));
      }
    }
    layer = std::move(next);
    for (const auto& p : layer) {
      ForbiddenSpec s;
      s.words.push_back(p);
      s.normalize();
      out.push_back(std::move(s));
    }
  }
  return out;
}

Check membership_oracle() {
  Check c;
  Gen g(1003);
  std::vector<BiPoint> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(g.infinite_point(6));
  const auto specs = small_specs();
  for (const auto& s : specs) {
    if (!c.ok) break;
    const auto got = contains_batch(SpaceHandle(s), xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      c.require((got[i] != 0) == scan_contains(s, xs[i]), "spec " + spec_to_json(s) + " at " + format_point(xs[i]));
    }
  }
  if (c.ok) c.detail = std::to_string(specs.size()) + " specs x 500 points";
  return c;
}

// --- 4 ------------------------------------------------------------------------

Check higher_block() {
  Check c;
  Gen g(1004);
  for (int m = 2; m <= 4; ++m) {
    const ForbiddenSpec s = g.spec(3, 3);
    const SpaceHandle base(s), recoded(hb_spec(m, s));
    for (int i = 0; i < 200; ++i) {
      const BiPoint x = g.point(4);
      const BiPoint y = hb_encode(m, x);
      c.require(hb_decode(m, y) == x, "decode(encode) at " + format_point(x));
      c.require(hb_encode(m, shift(x, 1)) == shift(y, 1), "encode commutes with shift at " + format_point(x));
      c.require(recoded.contains(y) == base.contains(x), "membership transfer for " + spec_to_json(s) + " at " + format_point(x));
    }
  }
  for (int k = 0; k <= 4; ++k) {
    for (int m = 1; m <= k + 1; ++m) {
      ForbiddenSpec s;
      s.words.push_back(exact_pattern(g.word(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 1), 3)));
      s.normalize();
      const auto step = classify(SpaceHandle(hb_spec(m, s))).m_step;
      c.require(step == std::max(1, k - m + 1), "step of " + spec_to_json(s) + " at M=" + std::to_string(m));
    }
  }
  return c;
}

// --- 5 ------------------------------------------------------------------------

Check edge_shift() {
  Check c;
  const SpaceHandle h(parse_spec_json(R"({"forbid_words": ["11"]})"));
  const EdgeShift es = to_edge_shift(h, 1, 2);
  c.require(es.graph.vertices == std::vector<Word>{{0}, {1}}, "vertices");
  c.require(es.graph.edges == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}}, "edges");
  const EdgeSpace space = edge_space(h, 1);
  const SpaceHandle recoded(hb_spec(2, h.spec()));
  for (int n = 1; n <= 5; ++n) {
    c.require(space.blocks(n, 2) == blocks(recoded, n, 2), "B_" + std::to_string(n));
  }
  return c;
}

// --- 6 ------------------------------------------------------------------------

Check minimality() {
  Check c;
  const ForbiddenSpec d = parse_spec_json(R"({"forbid_words": ["*2"], "forbid_tails_containing": ["1"]})");
  const ForbiddenSpec m = minimalize(d);
  c.require(m == parse_spec_json(R"({"forbid_words": ["1", "2"]})"), "minimalize gave " + spec_to_json(m));
  c.require(is_minimal(m).minimal, "output not minimal");
  Gen g(1006);
  int tested = 0;
  while (tested < 10 && c.ok) {
    const ForbiddenSpec s = g.spec(3, 4);
    if (!is_minimal(s).minimal || (s.tails.empty() && !s.allow_tails)) continue;
    ForbiddenSpec words_only;
    words_only.words = s.words;
    const SpaceHandle a(s), b(words_only);
    for (int n = 1; n <= 4; ++n) c.require(blocks(a, n, 6) == blocks(b, n, 6), "blocks of " + spec_to_json(s));
    ++tested;
  }
  return c;
}

// --- 7 ------------------------------------------------------------------------

Check block_codes() {
  Check c;
  Gen g(1007);
  const SlidingBlockCode sc = shift_code();
  for (int i = 0; i < 100; ++i) {
    const BiPoint x = g.point(5);
    c.require(sbc_apply(sc, x) == shift(x, 1), "shift code at " + format_point(x));
  }
  const std::vector<SlidingBlockCode> codes{identity_code(), shift_code(), halving_code(),
                                            sbc_build("memory 1\n1 2 -> 5\n* * -> $-1\ndefault -> _\n"),
                                            sbc_build("anticipation 2\n_ ? ? -> _\n* _ ? -> 9\ndefault -> half($0)\n")};
  for (const auto& code : codes) {
    for (int p = 1; p <= 6; ++p) {
      for (int i = 0; i < 20; ++i) {
        const Word w = g.word(static_cast<std::size_t>(p), static_cast<std::size_t>(p), 4);
        const BiPoint x = BiPoint::infinite(w, {}, w, 1);
        const BiPoint y = sbc_apply(code, x);
        c.require(shift(y, p) == y, "period " + std::to_string(p) + " lost by " + format_code(code));
      }
    }
    const BiPoint e = sbc_apply(code, BiPoint::empty());
    c.require(e == shift(e, 1) && (e.is_empty() || e.left_period().size() == 1), "image of the empty point not constant");
  }
  std::vector<BiPoint> family;
  for (std::int64_t i = 1; i <= 40; ++i) {
    family.push_back(point_from_sequence([i](std::int64_t j) { return j == -i ? 2 : 1; }, -i - 1, 1, -i + 1, 1));
  }
  std::vector<Cylinder> probe;
  for (std::int64_t k = 0; k < 5; ++k) probe.push_back(Cylinder::make(parse_ray("(1)^- @" + std::to_string(-k))));
  for (std::int64_t k = 0; k < 5; ++k) probe.push_back(Cylinder::make(tail_ray(family[static_cast<std::size_t>(k * 3)], 0)));
  const EscapeReport r = escapes_cylinders(family, probe);
  c.require(r.escapes, "family does not escape the probe");
  const BiPoint at_empty = sbc_apply(halving_code(), BiPoint::empty());
  const BiPoint constant = parse_point("(1)^- . (1)^+");
  for (const auto& x : family) c.require(sbc_apply(halving_code(), x) == constant, "image not constant");
  c.require(at_empty != constant, "image of the empty point equals the limit of the family");
  return c;
}

// --- 8 ------------------------------------------------------------------------

Check bridge() {
  Check c;
  Gen g(1008);
  for (int i = 0; i < 100; ++i) {
    const BiPoint x = g.point(4);
    c.require(p_map(p_inverse(x)) == x, "p(p^-1) at " + format_point(x));
  }
  const ForbiddenSpec a = parse_spec_json(R"({"allow_tails": ["1"]})");
  const auto lw = lift_strictness_witness(a, 3, 2);
  c.require(lw.has_value(), "no lift witness");
  if (lw) {
    c.require(!SpaceHandle(a).contains(*lw) && SpaceHandle(lift_space(project_space(a).one).two).contains(*lw),
              "lift witness " + format_point(*lw));
  }
  const ForbiddenSpec star = parse_spec_json(R"({"forbid_words": ["*1"]})");
  const auto pw = projection_strictness_witness(star, 3, 2);
  c.require(pw.has_value(), "no projection witness");
  if (pw) {
    c.require(pw->at(1) == 1 && OneSpace(star).contains(*pw) && !in_projection(SpaceHandle(lift_space(star).two), *pw),
              "projection witness " + format_one_point(*pw));
  }
  int tested = 0;
  while (tested < 10 && c.ok) {
    ForbiddenSpec s = g.spec(3, 4);
    if (!s.allow_tails) {
      s = minimalize(s);
    } else if (!is_minimal(s).minimal) {
      continue;
    }
    const OneSpace os(project_space(s).one);
    const SpaceHandle h(s);
    for (int n = 1; n <= 4; ++n) {
      for (const auto& w : all_words(n, 6)) {
        c.require(os.word_in_language(w) == h.word_in_language(w), "language of " + spec_to_json(s) + " at " + format_word(w));
      }
    }
    ++tested;
  }
  return c;
}

// --- 9 ------------------------------------------------------------------------

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "cd '" + data_dir + "' && '" + cli_path + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check cli_goldens() {
  Check c;
  struct Case {
    std::string args;
    std::string golden;
    int code;
  };
  const std::vector<Case> cases{
      {"space-check spec.json --point \"(01)^- . (01)^+\"", "space_check.out", 0},
      {"space-minimalize exampleD.json", "space_minimalize.out", 0},
      {"edge-build goldenmean.json -M 1 --cutoff 2 --dot", "edge_build.out", 0},
  };
  for (const auto& k : cases) {
    const Run first = run_cli(k.args);
    const Run second = run_cli(k.args);
    const std::string want = slurp(golden_dir + "/" + k.golden);
    c.require(!want.empty(), "missing golden " + k.golden);
    c.require(first.code == k.code, k.args + " exited " + std::to_string(first.code));
    c.require(first.out == want, k.args + " differs from " + k.golden);
    c.require(second.out == first.out, k.args + " is not deterministic");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <cli> <data-dir> <golden-dir>\n";
    return 2;
  }
  cli_path = std::filesystem::absolute(argv[1]).string();
  data_dir = std::filesystem::absolute(argv[2]).string();
  golden_dir = std::filesystem::absolute(argv[3]).string();

  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"point algebra", point_algebra},
      {"cylinder algebra", cylinder_algebra},
      {"membership oracle", membership_oracle},
      {"higher block", higher_block},
      {"edge shift", edge_shift},
      {"minimality", minimality},
      {"sliding block codes", block_codes},
      {"bridge", bridge},
      {"cli goldens", cli_goldens},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
