#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftz/point.hpp"

namespace shiftz {

// Z(x, F): points agreeing with the ray x up to its end k whose letter at
// k+1 is not in F.
struct Cylinder {
  LeftRay base;
  std::vector<Letter> excluded;  // sorted, unique

  static Cylinder make(LeftRay base, std::vector<Letter> excluded = {});
  std::int64_t end() const { return base.end; }

  friend bool operator==(const Cylinder&, const Cylinder&) = default;
  friend bool operator<(const Cylinder& a, const Cylinder& b);
};

// Either a cylinder or the complement of a finite union of plain cylinders.
struct BasicOpen {
  bool co_union = false;
  Cylinder cyl;                  // when !co_union
  std::vector<Cylinder> family;  // when co_union; sorted, unique, no exclusions

  static BasicOpen of(Cylinder c);
  static BasicOpen complement_of(std::vector<Cylinder> family);
};

bool cyl_contains(const Cylinder& c, const BiPoint& y);

// Which rule of the intersection formula applied, after ordering by end.
enum class IntersectCase { Nested, SameBase, Disjoint };

std::optional<Cylinder> cyl_intersect(const Cylinder& a, const Cylinder& b);
IntersectCase intersect_case(const Cylinder& a, const Cylinder& b);

bool basic_contains(const BasicOpen& u, const BiPoint& y);
// The intersection of two complements is the complement of the union.
BasicOpen co_union_intersect(const BasicOpen& a, const BasicOpen& b);

// Neighbourhoods of x. Infinite x: Z(tail at n) for n = 0, -1, ...
// Finite x: Z(x, {0..j-1}) for j = 1..budget. Ø: complements of the first
// j cylinders over `context` (default: the constant rays (a)^- @0).
std::vector<BasicOpen> nbhd_basis(const BiPoint& x, int budget,
                                  const std::vector<LeftRay>& context = {});

struct EscapeReport {
  bool escapes = false;
  // Per cylinder, the largest family index it contains (-1 if none).
  std::vector<std::int64_t> last_member;
  // Every member from this index on lies outside all cylinders.
  std::int64_t prefix = 0;
};

EscapeReport escapes_cylinders(const std::vector<BiPoint>& family, const std::vector<Cylinder>& cyls);

std::string format_cylinder(const Cylinder& c);
std::string format_basic(const BasicOpen& u);
// `Z( (p)^- t @k ; {f1,f2} )` and `!{ Z(...), Z(...) }`.
Cylinder parse_cylinder(std::string_view s);
BasicOpen parse_basic(std::string_view s);

}  // namespace shiftz
