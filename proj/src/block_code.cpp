#include "shiftz/block_code.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "text.hpp"

namespace shiftz {

namespace {

std::vector<Letter> sorted_unique(std::vector<Letter> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Calls f on every ø-closed word of length n over `reps` (ø included last).
template <class F>
void for_each_window(const std::vector<Letter>& reps, int n, F&& f) {
  Word w;
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == n) {
      f(static_cast<const Word&>(w));
      return;
    }
    const bool closed = !w.empty() && w.back() == kEmpty;
    for (Letter a : reps) {
      if (closed && a != kEmpty) continue;
      w.push_back(a);
      rec();
      w.pop_back();
    }
  };
  rec();
}

std::string format_cell_letter(Letter a) { return a == kEmpty ? "_" : std::to_string(a); }

}  // namespace

// --- pseudo cylinders ----------------------------------------------------------

PseudoCylinder PseudoCylinder::of(const Word& b, std::int64_t k) {
  if (b.empty()) throw Error(ErrorKind::BadRange, "pseudo cylinder needs a nonempty word");
  PseudoCylinder p;
  p.start = k;
  for (Letter a : b) p.cells.push_back({false, a});
  return p;
}

bool PseudoCylinder::has_gap() const {
  return std::any_of(cells.begin(), cells.end(), [](const PCell& c) { return c.gap; });
}

bool pseudo_contains(const PseudoCylinder& p, const BiPoint& x) {
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (p.cells[i].gap) continue;
    if (x.at(p.start + static_cast<std::int64_t>(i)) != p.cells[i].letter) return false;
  }
  return true;
}

std::vector<PseudoCylinder> pseudo_intersect(const PseudoCylinder& a, const PseudoCylinder& b) {
  const std::int64_t lo = std::min(a.start, b.start);
  const std::int64_t hi = std::max(a.end(), b.end());
  PseudoCylinder r;
  r.start = lo;
  r.cells.assign(static_cast<std::size_t>(hi - lo + 1), {true, 0});
  for (const auto* p : {&a, &b}) {
    for (std::size_t i = 0; i < p->cells.size(); ++i) {
      const auto& c = p->cells[i];
      if (c.gap) continue;
      auto& slot = r.cells[static_cast<std::size_t>(p->start - lo) + i];
      if (!slot.gap && slot.letter != c.letter) return {};
      slot = c;
    }
  }
  // ø may only be followed by ø.
  bool seen_empty = false;
  for (const auto& c : r.cells) {
    if (c.gap) continue;
    if (c.letter == kEmpty) {
      seen_empty = true;
    } else if (seen_empty) {
      return {};
    }
  }
  return {r};
}

std::string format_pseudo(const PseudoCylinder& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (i) s += " ";
    s += p.cells[i].gap ? "*" : format_cell_letter(p.cells[i].letter);
  }
  return s + "]_" + std::to_string(p.start) + "^" + std::to_string(p.end());
}

PseudoCylinder parse_pseudo(std::string_view s) {
  detail::Lexer lx(s);
  lx.expect("[");
  PseudoCylinder p;
  while (!lx.consume("]")) {
    if (lx.consume("*")) {
      p.cells.push_back({true, 0});
    } else if (lx.consume("_")) {
      p.cells.push_back({false, kEmpty});
    } else {
      Letter a = lx.integer();
      if (a < 0) lx.fail("negative letter");
      p.cells.push_back({false, a});
    }
  }
  lx.expect("_");
  p.start = lx.integer();
  lx.expect("^");
  const std::int64_t end = lx.integer();
  lx.expect_end();
  if (p.cells.empty() || end != p.end()) lx.fail("window length does not match the range");
  return p;
}

// --- finitely defined sets --------------------------------------------------------

std::vector<Letter> FinitelyDefinedSet::abstract_reps() const {
  std::vector<Letter> reps = letters_;
  reps.push_back(letters_.empty() ? 0 : letters_.back() + 1);
  reps.push_back(kEmpty);
  return reps;
}

std::size_t FinitelyDefinedSet::index_of(const Word& window) const {
  const std::size_t radix = letters_.size() + 2;
  std::size_t idx = 0;
  for (Letter a : window) {
    std::size_t d = letters_.size() + 1;
    if (a != kEmpty) {
      auto it = std::lower_bound(letters_.begin(), letters_.end(), a);
      d = (it != letters_.end() && *it == a) ? static_cast<std::size_t>(it - letters_.begin()) : letters_.size();
    }
    idx = idx * radix + d;
  }
  return idx;
}

namespace {

// Tabulates `decide` over every abstract window of [lo, hi].
template <class F>
std::vector<char> tabulate(std::int64_t lo, std::int64_t hi, const std::vector<Letter>& reps, F&& decide) {
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= reps.size();
  std::vector<char> table(total, 0);
  Word w(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      w[i] = reps[rest % reps.size()];
      rest /= reps.size();
    }
    table[idx] = decide(w) ? 1 : 0;
  }
  return table;
}

}  // namespace

FinitelyDefinedSet FinitelyDefinedSet::everything() {
  FinitelyDefinedSet s;
  s.table_ = {1, 1};
  return s;
}

FinitelyDefinedSet FinitelyDefinedSet::from_union(const std::vector<PseudoCylinder>& cyls) {
  FinitelyDefinedSet s;
  if (cyls.empty()) {
    s.table_ = {0, 0};
    return s;
  }
  s.lo_ = cyls.front().start;
  s.hi_ = cyls.front().end();
  std::vector<Letter> letters;
  for (const auto& c : cyls) {
    s.lo_ = std::min(s.lo_, c.start);
    s.hi_ = std::max(s.hi_, c.end());
    for (const auto& cell : c.cells) {
      if (!cell.gap && cell.letter != kEmpty) letters.push_back(cell.letter);
    }
  }
  s.letters_ = sorted_unique(std::move(letters));
  s.table_ = tabulate(s.lo_, s.hi_, s.abstract_reps(), [&](const Word& w) {
    return std::any_of(cyls.begin(), cyls.end(), [&](const PseudoCylinder& c) {
      for (std::size_t i = 0; i < c.cells.size(); ++i) {
        if (c.cells[i].gap) continue;
        if (w[static_cast<std::size_t>(c.start - s.lo_) + i] != c.cells[i].letter) return false;
      }
      return true;
    });
  });
  return s;
}

bool FinitelyDefinedSet::decide(const Word& window) const {
  if (static_cast<std::int64_t>(window.size()) != hi_ - lo_ + 1) {
    throw Error(ErrorKind::BadRange, "window length does not match the set");
  }
  return table_[index_of(window)] != 0;
}

bool FinitelyDefinedSet::contains(const BiPoint& x) const { return decide(window(x, lo_, hi_)); }

FinitelyDefinedSet FinitelyDefinedSet::widen(std::int64_t lo, std::int64_t hi,
                                             const std::vector<Letter>& letters) const {
  FinitelyDefinedSet s;
  s.lo_ = std::min(lo, lo_);
  s.hi_ = std::max(hi, hi_);
  std::vector<Letter> all = letters;
  all.insert(all.end(), letters_.begin(), letters_.end());
  s.letters_ = sorted_unique(std::move(all));
  s.table_ = tabulate(s.lo_, s.hi_, s.abstract_reps(), [&](const Word& w) {
    return decide(Word(w.begin() + (lo_ - s.lo_), w.begin() + (hi_ - s.lo_) + 1));
  });
  return s;
}

namespace {

template <class Op>
FinitelyDefinedSet combine(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b, Op op) {
  const std::int64_t lo = std::min(a.lo(), b.lo());
  const std::int64_t hi = std::max(a.hi(), b.hi());
  std::vector<Letter> letters = a.letters();
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  FinitelyDefinedSet wa = a.widen(lo, hi, letters);
  FinitelyDefinedSet wb = b.widen(lo, hi, letters);
  return op(wa, wb);
}

}  // namespace

FinitelyDefinedSet fds_union(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b) {
  return combine(a, b, [](FinitelyDefinedSet x, const FinitelyDefinedSet& y) {
    for (std::size_t i = 0; i < x.table_.size(); ++i) x.table_[i] = x.table_[i] || y.table_[i];
    return x;
  });
}

FinitelyDefinedSet fds_intersection(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b) {
  return combine(a, b, [](FinitelyDefinedSet x, const FinitelyDefinedSet& y) {
    for (std::size_t i = 0; i < x.table_.size(); ++i) x.table_[i] = x.table_[i] && y.table_[i];
    return x;
  });
}

FinitelyDefinedSet fds_complement(const FinitelyDefinedSet& a) {
  FinitelyDefinedSet s = a;
  for (auto& v : s.table_) v = v ? 0 : 1;
  return s;
}

// --- sliding block codes -----------------------------------------------------------

bool WindowCell::matches(Letter a) const {
  switch (kind) {
    case Kind::Letter: return a == letter;
    case Kind::NonEmpty: return a != kEmpty;
    case Kind::Empty: return a == kEmpty;
    case Kind::Any: return true;
  }
  return false;
}

namespace {

Letter half(Letter a) { return a == kEmpty ? kEmpty : (a % 2 == 1 ? (a + 1) / 2 : a / 2); }

Letter run_output(const Output& o, const Word& w, int memory) {
  switch (o.kind) {
    case Output::Kind::Letter: return o.letter;
    case Output::Kind::Empty: return kEmpty;
    case Output::Kind::Copy: return w[static_cast<std::size_t>(o.pos + memory)];
    case Output::Kind::Half: return half(w[static_cast<std::size_t>(o.pos + memory)]);
  }
  return kEmpty;
}

// Abstract letters for a code: mentioned letters, two fresh letters that
// halve to the same value, and ø.
std::vector<Letter> window_reps(const SlidingBlockCode& c) {
  std::vector<Letter> reps = c.mentioned();
  const Letter t = reps.empty() ? 1 : reps.back() + 2;
  reps.push_back(2 * t + 1);
  reps.push_back(2 * t + 2);
  reps.push_back(kEmpty);
  return reps;
}

}  // namespace

SlidingBlockCode::SlidingBlockCode(int memory, int anticipation, std::vector<Clause> clauses, Output fallback,
                                   int in_arity, int out_arity)
    : memory_(memory),
      anticipation_(anticipation),
      in_arity_(in_arity),
      out_arity_(out_arity),
      clauses_(std::move(clauses)),
      fallback_(fallback) {
  if (memory < 0 || anticipation < 0) throw Error(ErrorKind::BadRange, "memory and anticipation must be nonnegative");
  auto check_out = [&](const Output& o) {
    if ((o.kind == Output::Kind::Copy || o.kind == Output::Kind::Half) && (o.pos < -memory || o.pos > anticipation)) {
      throw Error(ErrorKind::BadRange, "copied position outside the window");
    }
  };
  for (const auto& cl : clauses_) {
    if (static_cast<int>(cl.cells.size()) != width()) throw Error(ErrorKind::BadRange, "clause width mismatch");
    check_out(cl.out);
  }
  check_out(fallback_);
  validate();
}

Letter SlidingBlockCode::eval(const Word& w) const {
  if (outer_) {
    const int kf = outer_->memory_;
    const int lf = outer_->anticipation_;
    const int kg = inner_->memory_;
    const int lg = inner_->anticipation_;
    Word mid;
    for (int m = -kf; m <= lf; ++m) {
      const auto from = w.begin() + (m - kg + memory_);
      mid.push_back(inner_->eval(Word(from, from + kg + lg + 1)));
    }
    return outer_->eval(mid);
  }
  for (const auto& cl : clauses_) {
    bool ok = true;
    for (std::size_t i = 0; i < cl.cells.size() && ok; ++i) ok = cl.cells[i].matches(w[i]);
    if (ok) return run_output(cl.out, w, memory_);
  }
  return run_output(fallback_, w, memory_);
}

std::vector<Letter> SlidingBlockCode::mentioned() const {
  std::vector<Letter> out;
  if (outer_) {
    out = inner_->mentioned();
    auto f = outer_->mentioned();
    out.insert(out.end(), f.begin(), f.end());
    if (inner_->has_half()) {
      for (Letter m : f) {
        if (m > 0) out.push_back(2 * m - 1);
        out.push_back(2 * m);
      }
    }
    return sorted_unique(std::move(out));
  }
  for (const auto& cl : clauses_) {
    for (const auto& c : cl.cells) {
      if (c.kind == WindowCell::Kind::Letter) out.push_back(c.letter);
    }
    if (cl.out.kind == Output::Kind::Letter) out.push_back(cl.out.letter);
  }
  if (fallback_.kind == Output::Kind::Letter) out.push_back(fallback_.letter);
  return sorted_unique(std::move(out));
}

bool SlidingBlockCode::has_half() const {
  if (outer_) return outer_->has_half() || inner_->has_half();
  auto is_half = [](const Output& o) { return o.kind == Output::Kind::Half; };
  return is_half(fallback_) ||
         std::any_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return is_half(c.out); });
}

void SlidingBlockCode::validate() const {
  // σ(C_ø) ⊆ C_ø over abstract windows.
  const auto reps = window_reps(*this);
  for_each_window(reps, width(), [&](const Word& w) {
    if (eval(w) != kEmpty) return;
    for (Letter a : reps) {
      if (w.back() == kEmpty && a != kEmpty) continue;
      Word next(w.begin() + 1, w.end());
      next.push_back(a);
      if (eval(next) != kEmpty) {
        throw Error(ErrorKind::NotShiftInvariantEmptyClass,
                    "window " + format_word(w) + " maps to ø but its successor " + format_word(next) + " does not");
      }
    }
  });
}

SlidingBlockCode sbc_compose(const SlidingBlockCode& f, const SlidingBlockCode& g) {
  if (g.out_arity() != f.in_arity()) {
    throw Error(ErrorKind::AlphabetMismatch, "output alphabet of the inner code does not feed the outer code");
  }
  SlidingBlockCode c;
  c.memory_ = f.memory_ + g.memory_;
  c.anticipation_ = f.anticipation_ + g.anticipation_;
  c.in_arity_ = g.in_arity_;
  c.out_arity_ = f.out_arity_;
  c.outer_ = std::make_shared<const SlidingBlockCode>(f);
  c.inner_ = std::make_shared<const SlidingBlockCode>(g);
  c.validate();
  return c;
}

namespace {

Output parse_output(detail::Lexer& lx) {
  Output o;
  if (lx.consume("_")) return o;
  if (lx.consume("half(")) {
    lx.expect("$");
    o.kind = Output::Kind::Half;
    o.pos = static_cast<int>(lx.integer());
    lx.expect(")");
    return o;
  }
  if (lx.consume("$")) {
    o.kind = Output::Kind::Copy;
    o.pos = static_cast<int>(lx.integer());
    return o;
  }
  o.kind = Output::Kind::Letter;
  o.letter = lx.integer();
  if (o.letter < 0) lx.fail("negative letter");
  return o;
}

WindowCell parse_window_cell(detail::Lexer& lx) {
  WindowCell c;
  if (lx.consume("*")) {
    c.kind = WindowCell::Kind::NonEmpty;
  } else if (lx.consume("_")) {
    c.kind = WindowCell::Kind::Empty;
  } else if (lx.consume("?")) {
    c.kind = WindowCell::Kind::Any;
  } else {
    c.kind = WindowCell::Kind::Letter;
    c.letter = lx.integer();
    if (c.letter < 0) lx.fail("negative letter");
  }
  return c;
}

std::string format_output(const Output& o) {
  switch (o.kind) {
    case Output::Kind::Letter: return std::to_string(o.letter);
    case Output::Kind::Empty: return "_";
    case Output::Kind::Copy: return "$" + std::to_string(o.pos);
    case Output::Kind::Half: return "half($" + std::to_string(o.pos) + ")";
  }
  return "_";
}

std::string format_window_cell(const WindowCell& c) {
  switch (c.kind) {
    case WindowCell::Kind::Letter: return std::to_string(c.letter);
    case WindowCell::Kind::NonEmpty: return "*";
    case WindowCell::Kind::Empty: return "_";
    case WindowCell::Kind::Any: return "?";
  }
  return "?";
}

}  // namespace

SlidingBlockCode sbc_build(std::string_view text) {
  int memory = 0, anticipation = 0, in_arity = 1, out_arity = 1;
  std::vector<Clause> clauses;
  std::optional<Output> fallback;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    detail::Lexer lx(line);
    if (lx.done()) continue;
    if (fallback) lx.fail("clause after the default clause");
    if (lx.consume("memory")) {
      memory = static_cast<int>(lx.integer());
    } else if (lx.consume("anticipation")) {
      anticipation = static_cast<int>(lx.integer());
    } else if (lx.consume("arity")) {
      in_arity = static_cast<int>(lx.integer());
      out_arity = static_cast<int>(lx.integer());
    } else if (lx.consume("default")) {
      lx.expect("->");
      fallback = parse_output(lx);
    } else {
      Clause cl;
      while (!lx.consume("->")) {
        if (lx.done()) lx.fail("expected '->'");
        cl.cells.push_back(parse_window_cell(lx));
      }
      cl.out = parse_output(lx);
      clauses.push_back(std::move(cl));
    }
    lx.expect_end();
  }
  if (!fallback) throw Error(ErrorKind::Parse, "rule has no default clause");
  if (in_arity < 1 || out_arity < 1) throw Error(ErrorKind::Parse, "arity must be positive");
  return SlidingBlockCode(memory, anticipation, std::move(clauses), *fallback, in_arity, out_arity);
}

std::string format_code(const SlidingBlockCode& c) {
  if (c.composite()) throw Error(ErrorKind::InvalidSpec, "composite codes have no rule text");
  std::string s = "memory " + std::to_string(c.memory()) + "\nanticipation " + std::to_string(c.anticipation()) + "\n";
  if (c.in_arity() != 1 || c.out_arity() != 1) {
    s += "arity " + std::to_string(c.in_arity()) + " " + std::to_string(c.out_arity()) + "\n";
  }
  for (const auto& cl : c.clauses()) {
    for (const auto& cell : cl.cells) s += format_window_cell(cell) + " ";
    s += "-> " + format_output(cl.out) + "\n";
  }
  return s + "default -> " + format_output(c.fallback()) + "\n";
}

SlidingBlockCode identity_code() { return SlidingBlockCode(0, 0, {}, Output{Output::Kind::Copy, 0, 0}); }

SlidingBlockCode shift_code() { return SlidingBlockCode(0, 1, {}, Output{Output::Kind::Copy, 0, 1}); }

SlidingBlockCode halving_code() { return SlidingBlockCode(0, 0, {}, Output{Output::Kind::Half, 0, 0}); }

BiPoint sbc_apply(const SlidingBlockCode& c, const BiPoint& x) {
  const int k = c.memory();
  const int l = c.anticipation();
  if (x.is_empty()) {
    const Letter a = c.eval(Word(static_cast<std::size_t>(c.width()), kEmpty));
    if (a == kEmpty) return BiPoint::empty();
    return BiPoint::infinite({a}, {}, {a}, 1);
  }
  auto f = [&](std::int64_t n) { return c.eval(window(x, n - k, n + l)); };
  if (x.is_infinite()) {
    return point_from_sequence(f, x.body_start() - 1 - l, static_cast<std::int64_t>(x.left_period().size()),
                               x.body_end() + 1 + k, static_cast<std::int64_t>(x.right_period().size()));
  }
  const auto& r = x.ray();
  return point_from_sequence(f, r.end - static_cast<std::int64_t>(r.transient.size()) - l,
                             static_cast<std::int64_t>(r.period.size()), r.end + 1 + k, 1);
}

// --- continuity --------------------------------------------------------------------

ContinuityReport check_continuity_sufficient(const SlidingBlockCode& c) {
  ContinuityReport rep;
  const int n = c.width();
  if (c.eval(Word(static_cast<std::size_t>(n), kEmpty)) != kEmpty) {
    rep.reason = "Φ(Ø) is not Ø";
    return rep;
  }
  const auto reps = window_reps(c);
  std::vector<Word> all;
  std::map<Letter, std::vector<std::size_t>> groups;
  for_each_window(reps, n, [&](const Word& w) {
    const Letter a = c.eval(w);
    if (a != kEmpty) groups[a].push_back(all.size());
    all.push_back(w);
  });
  std::optional<int> right;
  for (const auto& [a, members] : groups) {
    const Word& first = all[members.front()];
    std::vector<int> fixed;
    for (int i = 0; i < n; ++i) {
      const bool same = std::all_of(members.begin(), members.end(),
                                    [&](std::size_t m) { return all[m][static_cast<std::size_t>(i)] == first[static_cast<std::size_t>(i)]; });
      if (same) fixed.push_back(i);
    }
    const std::string name = "C_" + std::to_string(a);
    const bool contiguous = !fixed.empty() && fixed.back() - fixed.front() + 1 == static_cast<int>(fixed.size());
    std::size_t agreeing = 0;
    if (contiguous) {
      for (const auto& w : all) {
        const bool agrees = std::all_of(fixed.begin(), fixed.end(), [&](int i) {
          return w[static_cast<std::size_t>(i)] == first[static_cast<std::size_t>(i)];
        });
        if (agrees) ++agreeing;
      }
    }
    if (!contiguous || agreeing != members.size()) {
      rep.reason = name + " not a single pseudo cylinder";
      rep.cylinders.clear();
      return rep;
    }
    if (right && *right != fixed.back()) {
      rep.reason = "no uniform right end L";
      rep.cylinders.clear();
      return rep;
    }
    right = fixed.back();
    if (first[static_cast<std::size_t>(fixed.back())] == kEmpty) {
      rep.reason = "last cell of " + name + " is ø";
      rep.cylinders.clear();
      return rep;
    }
    Word b(first.begin() + fixed.front(), first.begin() + fixed.back() + 1);
    rep.cylinders.push_back(name + " = " + format_pseudo(PseudoCylinder::of(b, fixed.front() - c.memory())));
  }
  rep.passes = true;
  if (!right) {
    rep.homeomorphism_hypothesis = true;
    return rep;
  }
  rep.right_end = *right - c.memory();
  rep.homeomorphism_hypothesis = std::all_of(all.begin(), all.end(), [&](const Word& w) {
    return (c.eval(w) == kEmpty) == (w[static_cast<std::size_t>(*right)] == kEmpty);
  });
  return rep;
}

}  // namespace shiftz
