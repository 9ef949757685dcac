#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftz/point.hpp"
#include "shiftz/space.hpp"

namespace shiftz {

struct Projection {
  OnePoint point;
  bool continuous = false;  // π is continuous at x iff l(x) >= 0
};

// (x_i)_{i>=1}; Ø when l(x) <= 0.
Projection project(const BiPoint& x);

// One-sided space of a word specification (patterns and an optional
// alphabet only), indexed from 1.
class OneSpace {
 public:
  explicit OneSpace(ForbiddenSpec spec);

  const ForbiddenSpec& spec() const { return h_.spec(); }
  bool contains(const OnePoint& z) const;
  // w occurs in an infinite one-sided point.
  bool word_in_language(const Word& w) const;
  bool letters_infinite() const;
  bool is_finite() const;

 private:
  SpaceHandle h_;
};

// Every proper subblock of every pattern lies in the one-sided language.
MinimalityReport one_is_minimal(const ForbiddenSpec& spec);

enum class BridgeCase { DenseInClosure, Standard };

struct ProjectedSpace {
  ForbiddenSpec one;  // F'
  // DenseInClosure: |L_Λ| = ∞ and π(Λ) is dense in X̂_{F'}.
  // Standard: finite letter set, π(Λ) = X̂_{F'}.
  BridgeCase kind = BridgeCase::DenseInClosure;
};

// Requires a minimal plain specification; throws NotMinimal.
ProjectedSpace project_space(const ForbiddenSpec& spec);

struct LiftedSpace {
  ForbiddenSpec two;
  // true when Λ = X_F; false when Λ ∪ {Ø} = X_F.
  bool equal = true;
  bool empty_adjoined = false;
};

// Requires a one-sided minimal specification; throws NotMinimal.
LiftedSpace lift_space(const ForbiddenSpec& one);

// z ∈ π(X_F) for a plain specification.
bool in_projection(const SpaceHandle& h, const OnePoint& z);

// p^{-1}(x) = (X_i) with X_i = (x_{i+j-1})_{j>=1}.
class InverseOrbit {
 public:
  explicit InverseOrbit(BiPoint x) : x_(std::move(x)) {}

  OnePoint at(std::int64_t i) const;
  // Indices outside this range repeat with the periods of x.
  Span support() const { return support_span(x_); }
  std::int64_t left_period() const;
  std::int64_t right_period() const;

 private:
  BiPoint x_;
};

InverseOrbit p_inverse(const BiPoint& x);
// Rebuilds the point from the first letters of the family.
BiPoint p_map(const InverseOrbit& orbit);

// f_x(z): x up to l(x), then z shifted to start at l(x)+1.
BiPoint embed_in_cylinder(const BiPoint& base, const OnePoint& z);
// Inverse of f_x on Z(x).
OnePoint cylinder_coordinate(const BiPoint& base, const BiPoint& y);

// Counterexample witnesses for the two round trips.
// A point of the lift of the projection of `spec` that `spec` rejects.
std::optional<BiPoint> lift_strictness_witness(const ForbiddenSpec& spec, Letter cutoff, int max_period);
// A point of X̂_one outside π(lift(one)).
std::optional<OnePoint> projection_strictness_witness(const ForbiddenSpec& one, Letter cutoff, int max_len);

}  // namespace shiftz
