#include "shiftz/topology.hpp"

#include <algorithm>
#include <tuple>

#include "text.hpp"

namespace shiftz {

namespace {

std::vector<Letter> sorted_unique(std::vector<Letter> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Cylinder Cylinder::make(LeftRay base, std::vector<Letter> excluded) {
  Cylinder c;
  c.base = canonicalize_ray(std::move(base.period), std::move(base.transient), base.end);
  c.excluded = sorted_unique(std::move(excluded));
  return c;
}

bool operator<(const Cylinder& a, const Cylinder& b) {
  return std::tie(a.base, a.excluded) < std::tie(b.base, b.excluded);
}

BasicOpen BasicOpen::of(Cylinder c) {
  BasicOpen u;
  u.cyl = std::move(c);
  return u;
}

BasicOpen BasicOpen::complement_of(std::vector<Cylinder> family) {
  if (family.empty()) throw Error(ErrorKind::InvalidSpec, "complement of an empty union");
  for (auto& c : family) c.excluded.clear();
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  BasicOpen u;
  u.co_union = true;
  u.family = std::move(family);
  return u;
}

bool cyl_contains(const Cylinder& c, const BiPoint& y) {
  if (y.is_empty()) return false;
  const std::int64_t k = c.end();
  if (y.is_finite() && y.ray().end < k) return false;
  if (!(tail_ray(y, k) == c.base)) return false;
  return !std::binary_search(c.excluded.begin(), c.excluded.end(), y.at(k + 1));
}

IntersectCase intersect_case(const Cylinder& a, const Cylinder& b) {
  const Cylinder& x = a.end() <= b.end() ? a : b;
  const Cylinder& y = a.end() <= b.end() ? b : a;
  if (x.end() < y.end()) return cyl_contains(x, BiPoint::finite(y.base)) ? IntersectCase::Nested : IntersectCase::Disjoint;
  if (x.base == y.base) return IntersectCase::SameBase;
  return IntersectCase::Disjoint;
}

std::optional<Cylinder> cyl_intersect(const Cylinder& a, const Cylinder& b) {
  const Cylinder& x = a.end() <= b.end() ? a : b;
  const Cylinder& y = a.end() <= b.end() ? b : a;
  switch (intersect_case(a, b)) {
    case IntersectCase::Nested: return y;
    case IntersectCase::SameBase: {
      std::vector<Letter> f = x.excluded;
      f.insert(f.end(), y.excluded.begin(), y.excluded.end());
      return Cylinder::make(x.base, std::move(f));
    }
    case IntersectCase::Disjoint: return std::nullopt;
  }
  return std::nullopt;
}

bool basic_contains(const BasicOpen& u, const BiPoint& y) {
  if (!u.co_union) return cyl_contains(u.cyl, y);
  return std::none_of(u.family.begin(), u.family.end(),
                      [&](const Cylinder& c) { return cyl_contains(c, y); });
}

BasicOpen co_union_intersect(const BasicOpen& a, const BasicOpen& b) {
  if (!a.co_union || !b.co_union) throw Error(ErrorKind::InvalidSpec, "expected complements");
  std::vector<Cylinder> f = a.family;
  f.insert(f.end(), b.family.begin(), b.family.end());
  return BasicOpen::complement_of(std::move(f));
}

std::vector<BasicOpen> nbhd_basis(const BiPoint& x, int budget, const std::vector<LeftRay>& context) {
  std::vector<BasicOpen> out;
  if (x.is_infinite()) {
    for (int n = 0; n < budget; ++n) out.push_back(BasicOpen::of(Cylinder::make(tail_ray(x, -n))));
  } else if (x.is_finite()) {
    std::vector<Letter> f;
    for (int j = 0; j < budget; ++j) {
      f.push_back(j);
      out.push_back(BasicOpen::of(Cylinder::make(x.ray(), f)));
    }
  } else {
    std::vector<LeftRay> rays = context;
    for (Letter a = 0; static_cast<int>(rays.size()) < budget; ++a) {
      rays.push_back(canonicalize_ray({a}, {}, 0));
    }
    std::vector<Cylinder> family;
    for (int j = 0; j < budget; ++j) {
      family.push_back(Cylinder::make(rays[static_cast<std::size_t>(j)]));
      out.push_back(BasicOpen::complement_of(family));
    }
  }
  return out;
}

EscapeReport escapes_cylinders(const std::vector<BiPoint>& family, const std::vector<Cylinder>& cyls) {
  EscapeReport r;
  r.last_member.assign(cyls.size(), -1);
  for (std::size_t c = 0; c < cyls.size(); ++c) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (cyl_contains(cyls[c], family[j])) r.last_member[c] = static_cast<std::int64_t>(j);
    }
    r.prefix = std::max(r.prefix, r.last_member[c] + 1);
  }
  r.escapes = r.prefix < static_cast<std::int64_t>(family.size());
  return r;
}

std::string format_cylinder(const Cylinder& c) {
  std::string s = "Z( " + format_ray(c.base) + " ; {";
  for (std::size_t i = 0; i < c.excluded.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.excluded[i]);
  }
  return s + "} )";
}

std::string format_basic(const BasicOpen& u) {
  if (!u.co_union) return format_cylinder(u.cyl);
  std::string s = "!{ ";
  for (std::size_t i = 0; i < u.family.size(); ++i) {
    if (i) s += ", ";
    s += format_cylinder(u.family[i]);
  }
  return s + " }";
}

namespace {

Cylinder cylinder_from(detail::Lexer& lx) {
  lx.expect("Z(");
  // The ray runs up to ';' or the closing parenthesis of Z.
  std::size_t depth = 0;
  std::string ray_text;
  std::vector<Letter> excluded;
  while (true) {
    if (lx.done()) lx.fail("unterminated cylinder");
    char c = lx.peek();
    if (depth == 0 && (c == ';' || c == ')')) break;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    lx.consume(std::string_view(&c, 1));
    ray_text += c;
  }
  LeftRay base = parse_ray(ray_text);
  if (lx.consume(";")) {
    lx.expect("{");
    if (!lx.consume("}")) {
      do {
        excluded.push_back(lx.integer());
      } while (lx.consume(","));
      lx.expect("}");
    }
  }
  lx.expect(")");
  return Cylinder::make(std::move(base), std::move(excluded));
}

}  // namespace

Cylinder parse_cylinder(std::string_view s) {
  detail::Lexer lx(s);
  Cylinder c = cylinder_from(lx);
  lx.expect_end();
  return c;
}

BasicOpen parse_basic(std::string_view s) {
  detail::Lexer lx(s);
  if (lx.consume("!{")) {
    std::vector<Cylinder> family;
    do {
      family.push_back(cylinder_from(lx));
    } while (lx.consume(","));
    lx.expect("}");
    lx.expect_end();
    return BasicOpen::complement_of(std::move(family));
  }
  Cylinder c = cylinder_from(lx);
  lx.expect_end();
  return BasicOpen::of(std::move(c));
}

}  // namespace shiftz
