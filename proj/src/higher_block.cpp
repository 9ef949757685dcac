#include "shiftz/higher_block.hpp"

#include <algorithm>

namespace shiftz {

namespace {

void check_arity(int m) {
  if (m < 1) throw Error(ErrorKind::BadRange, "block length must be positive");
}

std::int64_t size_of(const Word& w) { return static_cast<std::int64_t>(w.size()); }

bool overlaps(Letter a, Letter b, int m) {
  Word u = block_decode(a, m);
  Word v = block_decode(b, m);
  return std::equal(u.begin() + 1, u.end(), v.begin());
}

// Positions whose letters and adjacent pairs cover every distinct feature.
std::pair<std::int64_t, std::int64_t> check_range(const BiPoint& y) {
  if (y.is_infinite()) {
    return {y.body_start() - size_of(y.left_period()) - 1, y.body_end() + size_of(y.right_period()) + 1};
  }
  const auto& r = y.ray();
  return {r.end - size_of(r.transient) - size_of(r.period) - 1, r.end + 1};
}

Word tuples(const LeftRay& r, std::int64_t from, std::int64_t to, int m) {
  Word out;
  for (std::int64_t i = from; i <= to; ++i) out.push_back(block_encode(r.window(i - m + 1, i)));
  return out;
}

Cell recode_cells(const std::vector<Cell>& cells) {
  if (std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.is_exact(); })) {
    Word w;
    for (const auto& c : cells) w.push_back(c.letter);
    return Cell::exact(block_encode(w));
  }
  return Cell::tuple(cells);
}

}  // namespace

BiPoint hb_encode(int m, const BiPoint& x) {
  check_arity(m);
  if (x.is_empty()) return x;
  auto f = [&](std::int64_t i) {
    if (x.at(i) == kEmpty) return kEmpty;
    return block_encode(window(x, i - m + 1, i));
  };
  if (x.is_infinite()) {
    return point_from_sequence(f, x.body_start() - 1, size_of(x.left_period()), x.body_end() + m,
                               size_of(x.right_period()));
  }
  const auto& r = x.ray();
  return point_from_sequence(f, r.end - size_of(r.transient), size_of(r.period), r.end + 1, 1);
}

BiPoint hb_decode(int m, const BiPoint& y) {
  check_arity(m);
  if (y.is_empty()) return y;
  const auto [lo, hi] = check_range(y);
  for (std::int64_t i = lo; i < hi; ++i) {
    const Letter a = y.at(i);
    const Letter b = y.at(i + 1);
    if (a == kEmpty || b == kEmpty) continue;
    if (!overlaps(a, b, m)) {
      throw Error(ErrorKind::InconsistentOverlaps, "letters at " + std::to_string(i) + " and " +
                                                       std::to_string(i + 1) + " do not overlap");
    }
  }
  auto f = [&](std::int64_t i) {
    const Letter a = y.at(i);
    return a == kEmpty ? kEmpty : block_decode(a, m).back();
  };
  if (y.is_infinite()) {
    return point_from_sequence(f, y.body_start() - 1, size_of(y.left_period()), y.body_end() + 1,
                               size_of(y.right_period()));
  }
  const auto& r = y.ray();
  return point_from_sequence(f, r.end - size_of(r.transient), size_of(r.period), r.end + 1, 1);
}

ForbiddenSpec hb_spec(int m, const ForbiddenSpec& input) {
  check_arity(m);
  ForbiddenSpec spec = input;
  spec.normalize();
  if (spec.overlap_m > 0) throw Error(ErrorKind::InvalidSpec, "specification is already over block letters");
  if (spec.alphabet) throw Error(ErrorKind::InvalidSpec, "alphabet restrictions are not recoded");
  ForbiddenSpec out;
  out.overlap_m = m;
  for (const auto& p : spec.words) {
    std::vector<Cell> cells = p.cells;
    if (cells.size() < static_cast<std::size_t>(m)) cells.insert(cells.begin(), m - cells.size(), Cell::wild());
    Pattern q;
    for (std::size_t i = 0; i + static_cast<std::size_t>(m) <= cells.size(); ++i) {
      q.cells.push_back(recode_cells(std::vector<Cell>(cells.begin() + static_cast<std::ptrdiff_t>(i),
                                                       cells.begin() + static_cast<std::ptrdiff_t>(i) + m)));
    }
    out.words.push_back(std::move(q));
  }
  for (const auto& r : spec.tails) {
    const std::int64_t t = size_of(r.transient);
    const std::int64_t p = size_of(r.period);
    out.tails.push_back(canonicalize_ray(tuples(r, r.end - t - p + 1, r.end - t, m),
                                         tuples(r, r.end - t + 1, r.end, m), 0));
  }
  if (spec.allow_tails) {
    out.allow_tails.emplace();
    for (const auto& p : *spec.allow_tails) {
      LeftRay r{p, {}, 0};
      out.allow_tails->push_back(tuples(r, 1 - size_of(p), 0, m));
    }
  }
  out.normalize();
  return out;
}

// --- edge shifts ----------------------------------------------------------------

namespace {

bool star_less(const Word& a, const Word& b) {
  auto key = [](Letter x) { return x == kStar ? INT64_MAX : x; };
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&](Letter x, Letter y) { return key(x) < key(y); });
}

void words_over(const std::vector<Letter>& domain, std::size_t len, Word& cur, std::vector<Word>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Letter a : domain) {
    cur.push_back(a);
    words_over(domain, len, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string block_label(const Word& w) {
  if (w.empty()) return "ε";
  std::string s;
  for (Letter a : w) s += a == kStar ? "*" : format_letter(a);
  return s;
}

std::size_t Graph::vertex_index(const Word& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v, star_less);
  if (it != vertices.end() && *it == v) return static_cast<std::size_t>(it - vertices.begin());
  return vertices.size();
}

EdgeShift to_edge_shift(const SpaceHandle& h, int m, Letter cutoff, bool star) {
  const ForbiddenSpec& spec = h.spec();
  if (spec.overlap_m > 0) throw Error(ErrorKind::InvalidSpec, "edge shifts are built from plain specifications");
  if (m < 0) throw Error(ErrorKind::BadRange, "step must be nonnegative");
  const Classification c = classify(h);
  if (!c.m_step) throw Error(ErrorKind::NotFiniteStep, "space is not of finite step");
  if (m < *c.m_step) throw Error(ErrorKind::NotFiniteStep, "M is below the step of the space");
  const auto letters = h.base_letters();
  if (cutoff <= 0 || (!letters.empty() && cutoff <= letters.back())) {
    throw Error(ErrorKind::CutoffTooSmall, "cutoff must exceed every mentioned letter");
  }

  std::vector<Letter> domain;
  for (Letter a = 0; a < cutoff; ++a) domain.push_back(a);
  if (star) domain.push_back(kStar);
  // `*` stands for the letter `cutoff`, which is fresh.
  auto concrete = [&](Word w) {
    for (auto& a : w) {
      if (a == kStar) a = cutoff;
    }
    return w;
  };
  auto legal = [&](const Word& w) { return w.empty() || h.word_in_language(concrete(w)); };

  EdgeShift out;
  Graph& g = out.graph;
  g.m = m;
  std::vector<Word> all;
  Word cur;
  words_over(domain, static_cast<std::size_t>(m), cur, all);
  for (auto& v : all) {
    if (legal(v)) g.vertices.push_back(std::move(v));
  }
  all.clear();
  words_over(domain, static_cast<std::size_t>(m) + 1, cur, all);
  for (auto& e : all) {
    if (legal(e)) g.edges.push_back(std::move(e));
  }
  std::sort(g.vertices.begin(), g.vertices.end(), star_less);
  std::sort(g.edges.begin(), g.edges.end(), star_less);
  for (const auto& v : g.vertices) {
    Word w = concrete(v);
    w.push_back(std::max(h.fresh_letter(), cutoff + 1));
    g.emitter.push_back(!h.restricted() && h.word_in_language(w));
  }

  std::vector<Letter> codes;
  for (const auto& e : g.edges) {
    if (std::find(e.begin(), e.end(), kStar) == e.end()) codes.push_back(block_encode(e));
  }
  out.spec.alphabet = codes;
  for (const auto& e : g.edges) {
    for (const auto& f : g.edges) {
      if (std::find(e.begin(), e.end(), kStar) != e.end() || std::find(f.begin(), f.end(), kStar) != f.end()) continue;
      if (g.terminal(e) != g.initial(f)) out.spec.words.push_back(exact_pattern({block_encode(e), block_encode(f)}));
    }
  }
  out.spec.normalize();
  return out;
}

std::string graph_to_dot(const Graph& g) {
  std::string s = "digraph edge_shift {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    s += "  \"" + block_label(g.vertices[i]) + "\" [shape=" + (g.emitter[i] ? "doublecircle" : "circle") + "];\n";
  }
  for (const auto& e : g.edges) {
    s += "  \"" + block_label(g.initial(e)) + "\" -> \"" + block_label(g.terminal(e)) + "\" [label=\"" + block_label(e) + "\"];\n";
  }
  return s + "}\n";
}

EdgeSpace::EdgeSpace(SpaceHandle base, int m) : base_(std::move(base)), m_(m) {
  if (m < 0) throw Error(ErrorKind::BadRange, "step must be nonnegative");
  if (base_.arity() != 1) throw Error(ErrorKind::InvalidSpec, "edge spaces are built from plain specifications");
}

EdgeSpace edge_space(const SpaceHandle& h, int m) { return EdgeSpace(h, m); }

bool EdgeSpace::is_edge(Letter e) const { return e >= 0 && base_.word_in_language(block_decode(e, m_ + 1)); }

bool EdgeSpace::is_emitter(const Word& v) const {
  if (base_.restricted()) return false;
  Word w = v;
  Letter f = base_.fresh_letter();
  for (Letter a : v) f = std::max(f, a + 1);
  w.push_back(f);
  return base_.word_in_language(w);
}

bool EdgeSpace::consecutive(Letter e, Letter f) const { return overlaps(e, f, m_ + 1); }

bool EdgeSpace::legal_window(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_edge(w[i])) return false;
    if (i + 1 < w.size() && !consecutive(w[i], w[i + 1])) return false;
  }
  return true;
}

bool EdgeSpace::contains(const BiPoint& x) const {
  if (x.is_empty()) return base_.empty_member();
  const auto [lo, hi] = check_range(x);
  if (x.is_infinite()) return legal_window(window(x, lo, hi));
  const auto& r = x.ray();
  if (!legal_window(window(x, lo, r.end))) return false;
  const Word last = block_decode(r.at(r.end), m_ + 1);
  return is_emitter(Word(last.begin() + 1, last.end()));
}

std::vector<Word> EdgeSpace::blocks(int n, Letter cutoff) const {
  if (n < 1) throw Error(ErrorKind::BadRange, "block length must be positive");
  std::vector<Letter> domain;
  for (Letter a = 0; a < cutoff; ++a) domain.push_back(a);
  std::vector<Word> tuples_all;
  Word cur;
  words_over(domain, static_cast<std::size_t>(m_) + 1, cur, tuples_all);
  std::vector<Letter> edges;
  for (const auto& t : tuples_all) {
    if (base_.word_in_language(t)) edges.push_back(block_encode(t));
  }
  std::sort(edges.begin(), edges.end());

  std::vector<Word> out;
  std::vector<Word> layer{{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Letter e : edges) {
        if (!w.empty() && !consecutive(w.back(), e)) continue;
        Word v = w;
        v.push_back(e);
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
    if (len == n) break;
    for (const auto& w : layer) {
      const Word last = block_decode(w.back(), m_ + 1);
      if (!is_emitter(Word(last.begin() + 1, last.end()))) continue;
      Word v = w;
      v.resize(static_cast<std::size_t>(n), kEmpty);
      out.push_back(std::move(v));
    }
  }
  out.insert(out.end(), layer.begin(), layer.end());
  if (base_.empty_member()) out.push_back(Word(static_cast<std::size_t>(n), kEmpty));
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

}  // namespace shiftz
