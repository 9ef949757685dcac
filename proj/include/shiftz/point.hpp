#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "shiftz/words.hpp"

namespace shiftz {

// l(x) as an extended integer.
struct Length {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::NegInf;
  std::int64_t value = 0;

  bool finite() const { return kind == Kind::Finite; }
  friend bool operator==(const Length&, const Length&) = default;
};

std::string format_length(const Length& l);

// A point of the compactified two-sided full shift, kept in canonical form.
//   Empty     the all-ø point
//   Finite    (x_i)_{i<=l} followed by ø; `ray` ends at l(x)
//   Infinite  ...ppp·body·qqq... with body at [body_start, body_start+|body|-1]
// Periodic points have an empty body starting at 1 and p = q = x_1..x_|p|.
class BiPoint {
 public:
  enum class Kind { Empty, Finite, Infinite };

  static BiPoint empty();
  static BiPoint finite(const LeftRay& ray);
  static BiPoint infinite(Word left_period, Word body, Word right_period, std::int64_t body_start);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }

  const LeftRay& ray() const { return ray_; }
  const Word& left_period() const { return left_; }
  const Word& body() const { return body_; }
  const Word& right_period() const { return right_; }
  std::int64_t body_start() const { return body_start_; }
  std::int64_t body_end() const { return body_start_ + static_cast<std::int64_t>(body_.size()) - 1; }

  Letter at(std::int64_t i) const;
  Length length() const;

  friend bool operator==(const BiPoint&, const BiPoint&) = default;
  friend bool operator<(const BiPoint& a, const BiPoint& b);

 private:
  Kind kind_ = Kind::Empty;
  LeftRay ray_;
  Word left_, body_, right_;
  std::int64_t body_start_ = 0;
};

BiPoint shift(const BiPoint& x, std::int64_t n);
Length length(const BiPoint& x);
Word window(const BiPoint& x, std::int64_t i, std::int64_t j);
LeftRay tail_ray(const BiPoint& x, std::int64_t k);

// Builds a point from a letter function that is periodic with `left_period`
// on (-inf, lo] and with `right_period` on [hi, +inf). ø may only appear as a
// suffix; an InvalidSpec error is raised otherwise.
BiPoint point_from_sequence(const std::function<Letter(std::int64_t)>& f, std::int64_t lo,
                            std::int64_t left_period, std::int64_t hi, std::int64_t right_period);

// Positions that cover every non-periodic feature of x: the body (or the
// transient of a finite point) plus one period on each side.
struct Span {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
Span support_span(const BiPoint& x);

std::string format_point(const BiPoint& x, int arity = 1);
// `@`, `(p)^- u . v #`, `(p)^- u . v (q)^+`, or the ray form `(p)^- t @k`.
BiPoint parse_point(std::string_view s);

// --- one-sided points, indexed from 1 ----------------------------------------

class OnePoint {
 public:
  enum class Kind { Empty, Finite, Infinite };

  static OnePoint empty();
  static OnePoint finite(Word w);
  static OnePoint infinite(Word transient, Word period);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  // Finite: the word; Infinite: the transient.
  const Word& word() const { return word_; }
  const Word& period() const { return period_; }

  Letter at(std::int64_t i) const;
  Length length() const;

  friend bool operator==(const OnePoint&, const OnePoint&) = default;
  friend bool operator<(const OnePoint& a, const OnePoint& b);

 private:
  Kind kind_ = Kind::Empty;
  Word word_, period_;
};

OnePoint one_shift(const OnePoint& z);
std::string format_one_point(const OnePoint& z, int arity = 1);
// `@`, `u #`, `u . (p)^+`.
OnePoint parse_one_point(std::string_view s);

}  // namespace shiftz
