#include "shiftz/point.hpp"

#include <algorithm>
#include <tuple>

#include "text.hpp"

namespace shiftz {

namespace {

std::int64_t size_of(const Word& w) { return static_cast<std::int64_t>(w.size()); }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Letter of ...ppp·body·qqq... before canonicalization.
struct RawInfinite {
  const Word& p;
  const Word& body;
  const Word& q;
  std::int64_t s;

  std::int64_t e() const { return s + size_of(body) - 1; }
  Letter at(std::int64_t i) const {
    if (i < s) return p[static_cast<std::size_t>(size_of(p) - 1 - floor_mod(s - 1 - i, size_of(p)))];
    if (i <= e()) return body[static_cast<std::size_t>(i - s)];
    return q[static_cast<std::size_t>(floor_mod(i - e() - 1, size_of(q)))];
  }
};

Word collect(const std::function<Letter(std::int64_t)>& f, std::int64_t i, std::int64_t j) {
  Word w;
  for (std::int64_t k = i; k <= j; ++k) w.push_back(f(k));
  return w;
}

}  // namespace

std::string format_length(const Length& l) {
  switch (l.kind) {
    case Length::Kind::NegInf: return "-inf";
    case Length::Kind::PosInf: return "+inf";
    case Length::Kind::Finite: return std::to_string(l.value);
  }
  return "?";
}

BiPoint BiPoint::empty() { return BiPoint{}; }

BiPoint BiPoint::finite(const LeftRay& ray) {
  BiPoint x;
  x.kind_ = Kind::Finite;
  x.ray_ = canonicalize_ray(ray.period, ray.transient, ray.end);
  return x;
}

BiPoint BiPoint::infinite(Word left_period, Word body, Word right_period, std::int64_t body_start) {
  if (left_period.empty() || right_period.empty()) {
    throw Error(ErrorKind::EmptyPeriod, "infinite point needs nonempty periods");
  }
  if (has_empty(left_period) || has_empty(body) || has_empty(right_period)) {
    throw Error(ErrorKind::EmptyLetterInRay, "ø inside an infinite point");
  }
  Word p = primitive_root(left_period);
  Word q = primitive_root(right_period);
  RawInfinite raw{p, body, q, body_start};
  const std::int64_t np = size_of(p), nq = size_of(q);
  const std::int64_t e = raw.e();

  // Largest a with x_i = x_{i-|p|} for all i <= a.
  std::int64_t a = body_start - 1;
  const std::int64_t bound = e + np + nq;
  while (a < bound && raw.at(a + 1) == raw.at(a + 1 - np)) ++a;

  BiPoint x;
  x.kind_ = Kind::Infinite;
  if (a >= bound) {
    // Fully periodic; by Fine-Wilf p and q are conjugate.
    Word per;
    for (std::int64_t i = 1; i <= np; ++i) per.push_back(raw.at(i));
    x.left_ = per;
    x.right_ = per;
    x.body_start_ = 1;
    return x;
  }
  // Smallest b > a with x_i = x_{i+|q|} for all i >= b.
  std::int64_t b = std::max(e + 1, a + 1);
  while (b - 1 >= a + 1 && raw.at(b - 1) == raw.at(b - 1 + nq)) --b;
  for (std::int64_t i = a - np + 1; i <= a; ++i) x.left_.push_back(raw.at(i));
  for (std::int64_t i = a + 1; i < b; ++i) x.body_.push_back(raw.at(i));
  for (std::int64_t i = b; i < b + nq; ++i) x.right_.push_back(raw.at(i));
  x.body_start_ = a + 1;
  return x;
}

Letter BiPoint::at(std::int64_t i) const {
  switch (kind_) {
    case Kind::Empty: return kEmpty;
    case Kind::Finite: return i <= ray_.end ? ray_.at(i) : kEmpty;
    case Kind::Infinite: return RawInfinite{left_, body_, right_, body_start_}.at(i);
  }
  return kEmpty;
}

Length BiPoint::length() const {
  switch (kind_) {
    case Kind::Empty: return {Length::Kind::NegInf, 0};
    case Kind::Finite: return {Length::Kind::Finite, ray_.end};
    case Kind::Infinite: return {Length::Kind::PosInf, 0};
  }
  return {};
}

bool operator<(const BiPoint& a, const BiPoint& b) {
  return std::tie(a.kind_, a.ray_, a.left_, a.body_, a.right_, a.body_start_) <
         std::tie(b.kind_, b.ray_, b.left_, b.body_, b.right_, b.body_start_);
}

BiPoint shift(const BiPoint& x, std::int64_t n) {
  switch (x.kind()) {
    case BiPoint::Kind::Empty: return x;
    case BiPoint::Kind::Finite: {
      LeftRay r = x.ray();
      r.end -= n;
      return BiPoint::finite(r);
    }
    case BiPoint::Kind::Infinite:
      return BiPoint::infinite(x.left_period(), x.body(), x.right_period(), x.body_start() - n);
  }
  return x;
}

Length length(const BiPoint& x) { return x.length(); }

Word window(const BiPoint& x, std::int64_t i, std::int64_t j) {
  if (i > j) throw Error(ErrorKind::BadRange, "window start after end");
  Word w;
  w.reserve(static_cast<std::size_t>(j - i + 1));
  for (std::int64_t k = i; k <= j; ++k) w.push_back(x.at(k));
  return w;
}

LeftRay tail_ray(const BiPoint& x, std::int64_t k) {
  switch (x.kind()) {
    case BiPoint::Kind::Empty: throw Error(ErrorKind::NoRay, "the empty point has no ray");
    case BiPoint::Kind::Finite:
      if (k > x.ray().end) throw Error(ErrorKind::NoRay, "index beyond l(x)");
      return truncate_ray(x.ray(), k);
    case BiPoint::Kind::Infinite: {
      const std::int64_t s = x.body_start();
      LeftRay left = canonicalize_ray(x.left_period(), {}, s - 1);
      if (k < s) return truncate_ray(left, k);
      Word t;
      for (std::int64_t i = s; i <= k; ++i) t.push_back(x.at(i));
      return canonicalize_ray(x.left_period(), std::move(t), k);
    }
  }
  throw Error(ErrorKind::NoRay, "unreachable");
}

BiPoint point_from_sequence(const std::function<Letter(std::int64_t)>& f, std::int64_t lo,
                            std::int64_t left_period, std::int64_t hi, std::int64_t right_period) {
  if (hi <= lo) hi = lo + 1;
  Word lp = collect(f, lo - left_period + 1, lo);
  if (has_empty(lp)) {
    // ø arbitrarily far to the left forces the empty point.
    for (std::int64_t i = lo + 1; i < hi + right_period; ++i) {
      if (f(i) != kEmpty) throw Error(ErrorKind::InvalidSpec, "ø followed by a letter");
    }
    if (std::any_of(lp.begin(), lp.end(), [](Letter a) { return a != kEmpty; })) {
      throw Error(ErrorKind::InvalidSpec, "ø followed by a letter");
    }
    return BiPoint::empty();
  }
  Word mid = collect(f, lo + 1, hi + right_period - 1);
  auto z = std::find(mid.begin(), mid.end(), kEmpty);
  if (z == mid.end()) {
    Word body(mid.begin(), mid.begin() + (hi - lo - 1));
    Word rp(mid.begin() + (hi - lo - 1), mid.end());
    return BiPoint::infinite(std::move(lp), std::move(body), std::move(rp), lo + 1);
  }
  if (!std::all_of(z, mid.end(), [](Letter a) { return a == kEmpty; })) {
    throw Error(ErrorKind::InvalidSpec, "ø followed by a letter");
  }
  Word t(mid.begin(), z);
  const std::int64_t end = lo + size_of(t);
  return BiPoint::finite(canonicalize_ray(std::move(lp), std::move(t), end));
}

Span support_span(const BiPoint& x) {
  switch (x.kind()) {
    case BiPoint::Kind::Empty: return {0, 1};
    case BiPoint::Kind::Finite: {
      const auto& r = x.ray();
      return {r.end - size_of(r.transient) - size_of(r.period) + 1, r.end + 1};
    }
    case BiPoint::Kind::Infinite:
      return {x.body_start() - size_of(x.left_period()), x.body_end() + size_of(x.right_period())};
  }
  return {};
}

std::string format_point(const BiPoint& x, int arity) {
  if (x.is_empty()) return "@";
  std::int64_t start = 0, stop = 0;
  std::int64_t np = 0;
  if (x.is_finite()) {
    const auto& r = x.ray();
    start = std::min<std::int64_t>(r.end - size_of(r.transient) + 1, 1);
    stop = std::max<std::int64_t>(r.end, 0);
    np = size_of(r.period);
  } else {
    start = std::min<std::int64_t>(x.body_start(), 1);
    stop = std::max<std::int64_t>(x.body_end(), 0);
    np = size_of(x.left_period());
  }
  std::string s = "(" + format_compact(window(x, start - np, start - 1), arity) + ")^-";
  for (std::int64_t i = start; i <= 0; ++i) s += " " + format_letter(x.at(i), arity);
  s += " .";
  for (std::int64_t i = 1; i <= stop; ++i) s += " " + format_letter(x.at(i), arity);
  if (x.is_finite()) return s + " #";
  return s + " (" + format_compact(window(x, stop + 1, stop + size_of(x.right_period())), arity) + ")^+";
}

BiPoint parse_point(std::string_view s) {
  detail::Lexer lx(s);
  if (lx.consume("@")) {
    lx.expect_end();
    return BiPoint::empty();
  }
  lx.expect("(");
  Word p;
  while (!lx.consume(")")) {
    if (lx.done()) lx.fail("unterminated period");
    p.push_back(lx.letter_or_empty());
  }
  lx.expect("^-");
  Word u;
  while (lx.at_cell()) u.push_back(lx.letter_or_empty());
  if (lx.consume("@")) {
    std::int64_t k = lx.integer();
    lx.expect_end();
    if (has_empty(u)) lx.fail("ø inside a ray");
    return BiPoint::finite(canonicalize_ray(std::move(p), std::move(u), k));
  }
  lx.expect(".");
  Word v;
  while (lx.at_cell()) v.push_back(lx.letter_or_empty());
  const std::int64_t start = 1 - size_of(u);
  Word all = u;
  all.insert(all.end(), v.begin(), v.end());
  if (!is_empty_closed(all)) lx.fail("ø followed by a letter");
  if (lx.consume("#")) {
    lx.expect_end();
    auto z = std::find(all.begin(), all.end(), kEmpty);
    Word t(all.begin(), z);
    const std::int64_t end = start + size_of(t) - 1;
    return BiPoint::finite(canonicalize_ray(std::move(p), std::move(t), end));
  }
  lx.expect("(");
  Word q;
  while (!lx.consume(")")) {
    if (lx.done()) lx.fail("unterminated period");
    q.push_back(lx.letter_or_empty());
  }
  lx.expect("^+");
  lx.expect_end();
  if (has_empty(all)) lx.fail("ø inside an infinite point");
  return BiPoint::infinite(std::move(p), std::move(all), std::move(q), start);
}

// --- one-sided ------------------------------------------------------------------

OnePoint OnePoint::empty() { return OnePoint{}; }

OnePoint OnePoint::finite(Word w) {
  if (has_empty(w)) {
    if (!is_empty_closed(w)) throw Error(ErrorKind::InvalidSpec, "ø followed by a letter");
    w.erase(std::find(w.begin(), w.end(), kEmpty), w.end());
  }
  if (w.empty()) return empty();
  OnePoint z;
  z.kind_ = Kind::Finite;
  z.word_ = std::move(w);
  return z;
}

OnePoint OnePoint::infinite(Word transient, Word period) {
  if (period.empty()) throw Error(ErrorKind::EmptyPeriod, "one-sided period is empty");
  if (has_empty(transient) || has_empty(period)) {
    throw Error(ErrorKind::EmptyLetterInRay, "ø inside an infinite point");
  }
  Word p = primitive_root(period);
  // Absorb trailing transient letters into the period.
  while (!transient.empty() && transient.back() == p.back()) {
    transient.pop_back();
    std::rotate(p.rbegin(), p.rbegin() + 1, p.rend());
  }
  OnePoint z;
  z.kind_ = Kind::Infinite;
  z.word_ = std::move(transient);
  z.period_ = std::move(p);
  return z;
}

Letter OnePoint::at(std::int64_t i) const {
  if (i < 1) throw Error(ErrorKind::BadRange, "one-sided points start at index 1");
  const std::int64_t n = size_of(word_);
  if (kind_ == Kind::Empty) return kEmpty;
  if (i <= n) return word_[static_cast<std::size_t>(i - 1)];
  if (kind_ == Kind::Finite) return kEmpty;
  return period_[static_cast<std::size_t>((i - n - 1) % size_of(period_))];
}

Length OnePoint::length() const {
  switch (kind_) {
    case Kind::Empty: return {Length::Kind::NegInf, 0};
    case Kind::Finite: return {Length::Kind::Finite, size_of(word_)};
    case Kind::Infinite: return {Length::Kind::PosInf, 0};
  }
  return {};
}

bool operator<(const OnePoint& a, const OnePoint& b) {
  return std::tie(a.kind_, a.word_, a.period_) < std::tie(b.kind_, b.word_, b.period_);
}

OnePoint one_shift(const OnePoint& z) {
  switch (z.kind()) {
    case OnePoint::Kind::Empty: return z;
    case OnePoint::Kind::Finite: return OnePoint::finite(Word(z.word().begin() + 1, z.word().end()));
    case OnePoint::Kind::Infinite:
      if (z.word().empty()) return OnePoint::infinite({}, rotate_left(z.period(), 1));
      return OnePoint::infinite(Word(z.word().begin() + 1, z.word().end()), z.period());
  }
  return z;
}

std::string format_one_point(const OnePoint& z, int arity) {
  switch (z.kind()) {
    case OnePoint::Kind::Empty: return "@";
    case OnePoint::Kind::Finite: return format_word(z.word(), arity) + " #";
    case OnePoint::Kind::Infinite: {
      std::string s = format_word(z.word(), arity);
      if (!s.empty()) s += " ";
      return s + ". (" + format_compact(z.period(), arity) + ")^+";
    }
  }
  return "?";
}

OnePoint parse_one_point(std::string_view s) {
  detail::Lexer lx(s);
  if (lx.consume("@")) {
    lx.expect_end();
    return OnePoint::empty();
  }
  Word u;
  while (lx.at_cell()) u.push_back(lx.letter_or_empty());
  if (lx.consume("#")) {
    lx.expect_end();
    return OnePoint::finite(std::move(u));
  }
  lx.consume(".");
  lx.expect("(");
  Word p;
  while (!lx.consume(")")) {
    if (lx.done()) lx.fail("unterminated period");
    p.push_back(lx.letter_or_empty());
  }
  lx.expect("^+");
  lx.expect_end();
  return OnePoint::infinite(std::move(u), std::move(p));
}

}  // namespace shiftz
