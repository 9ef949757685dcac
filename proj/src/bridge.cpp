#include "shiftz/bridge.hpp"

#include <algorithm>

#include "engine.hpp"
#include "shiftz/topology.hpp"

namespace shiftz {

namespace {

std::int64_t size_of(const Word& w) { return static_cast<std::int64_t>(w.size()); }

void require_words_only(const ForbiddenSpec& spec) {
  if (spec.overlap_m > 0 || !spec.tails.empty() || spec.allow_tails) {
    throw Error(ErrorKind::InvalidSpec, "one-sided specifications hold patterns only");
  }
}

Letter fresh_for(const detail::Engine& e, const Word& w) { return e.fresh_avoiding(w); }

// Primitive words over [0, cutoff) by length, then lexicographically.
std::vector<Word> primitive_words(Letter cutoff, int max_len) {
  std::vector<Word> out;
  std::vector<Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Letter a = 0; a < cutoff; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
    for (const auto& w : layer) {
      if (is_primitive(w)) out.push_back(w);
    }
  }
  return out;
}

std::vector<Word> all_words(Letter cutoff, int max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Letter a = 0; a < cutoff; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace

Projection project(const BiPoint& x) {
  Projection p;
  switch (x.kind()) {
    case BiPoint::Kind::Empty: return p;
    case BiPoint::Kind::Finite: {
      const std::int64_t l = x.ray().end;
      p.continuous = l >= 0;
      if (l >= 1) p.point = OnePoint::finite(window(x, 1, l));
      return p;
    }
    case BiPoint::Kind::Infinite: {
      const std::int64_t n = std::max<std::int64_t>(x.body_end(), 0);
      Word t = n >= 1 ? window(x, 1, n) : Word{};
      p.point = OnePoint::infinite(std::move(t), window(x, n + 1, n + size_of(x.right_period())));
      p.continuous = true;
      return p;
    }
  }
  return p;
}

// --- one-sided spaces -----------------------------------------------------------

OneSpace::OneSpace(ForbiddenSpec spec) : h_((require_words_only(spec), std::move(spec))) {}

bool OneSpace::contains(const OnePoint& z) const {
  const auto& e = h_.engine();
  switch (z.kind()) {
    case OnePoint::Kind::Empty: return e.one_empty_member();
    case OnePoint::Kind::Finite: {
      if (e.restricted()) return false;
      Word w = z.word();
      w.push_back(fresh_for(e, w));
      return e.one_word_extends(w);
    }
    case OnePoint::Kind::Infinite: {
      const auto n = static_cast<std::int64_t>(z.word().size() + 2 * z.period().size() + h_.spec().max_pattern_length());
      Word w;
      for (std::int64_t i = 1; i <= n; ++i) w.push_back(z.at(i));
      return e.word_clean(w);
    }
  }
  return false;
}

bool OneSpace::word_in_language(const Word& w) const {
  return !w.empty() && !has_empty(w) && h_.engine().one_word_extends(w);
}

bool OneSpace::letters_infinite() const { return !h_.restricted() && word_in_language({h_.fresh_letter()}); }

bool OneSpace::is_finite() const { return !letters_infinite() && !h_.engine().inf_infinite(); }

MinimalityReport one_is_minimal(const ForbiddenSpec& input) {
  ForbiddenSpec spec = input;
  spec.normalize();
  require_words_only(spec);
  OneSpace space(spec);
  SpaceHandle h(spec);
  const auto& e = h.engine();
  MinimalityReport rep;
  for (const auto& p : spec.words) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) {
        if (j - i + 1 == p.size()) continue;
        std::vector<Word> words{{}};
        for (std::size_t k = i; k <= j; ++k) {
          std::vector<Word> next;
          for (const auto& w : words) {
            for (int c = 0; c < e.classes(); ++c) {
              if (!p.cells[k].matches(e.rep(c))) continue;
              Word v = w;
              v.push_back(e.rep(c));
              next.push_back(std::move(v));
            }
          }
          words = std::move(next);
        }
        for (const auto& w : words) {
          if (!space.word_in_language(w)) {
            rep.minimal = false;
            rep.witness = w;
            rep.parent = format_pattern(p);
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

ProjectedSpace project_space(const ForbiddenSpec& input) {
  ForbiddenSpec spec = input;
  spec.normalize();
  if (spec.overlap_m > 0) throw Error(ErrorKind::InvalidSpec, "projection needs a plain specification");
  const MinimalityReport m = is_minimal(spec);
  if (!m.minimal) {
    throw Error(ErrorKind::NotMinimal, "subblock " + format_word(m.witness) + " of " + m.parent + " is not in the language");
  }
  ProjectedSpace out;
  out.one.words = spec.words;
  out.one.alphabet = spec.alphabet;
  out.one.normalize();
  SpaceHandle h(spec);
  const bool infinite = !h.restricted() && h.word_in_language({h.fresh_letter()});
  out.kind = infinite ? BridgeCase::DenseInClosure : BridgeCase::Standard;
  return out;
}

LiftedSpace lift_space(const ForbiddenSpec& one) {
  const MinimalityReport m = one_is_minimal(one);
  if (!m.minimal) {
    throw Error(ErrorKind::NotMinimal, "subblock " + format_word(m.witness) + " of " + m.parent + " is not in the language");
  }
  LiftedSpace out;
  out.two = one;
  out.two.normalize();
  OneSpace space(out.two);
  out.equal = space.letters_infinite() || space.is_finite();
  out.empty_adjoined = !out.equal;
  return out;
}

bool in_projection(const SpaceHandle& h, const OnePoint& z) {
  if (h.arity() != 1) throw Error(ErrorKind::InvalidSpec, "projection needs a plain specification");
  const auto& e = h.engine();
  switch (z.kind()) {
    case OnePoint::Kind::Empty:
      return h.empty_member() || (!h.restricted() && h.word_in_language({h.fresh_letter()}));
    case OnePoint::Kind::Finite: return h.ends_language(z.word());
    case OnePoint::Kind::Infinite: {
      std::int64_t reach = 0;
      for (const auto& r : h.spec().tails) reach = std::max(reach, size_of(r.period) + size_of(r.transient));
      const auto n = static_cast<std::int64_t>(z.word().size() + 2 * z.period().size() +
                                               h.spec().max_pattern_length()) + reach;
      Word w;
      for (std::int64_t i = 1; i <= n; ++i) w.push_back(z.at(i));
      return e.word_clean(w) && e.fixed_right(w);
    }
  }
  return false;
}

// --- inverse limit ------------------------------------------------------------------

OnePoint InverseOrbit::at(std::int64_t i) const { return project(shift(x_, i - 1)).point; }

std::int64_t InverseOrbit::left_period() const {
  if (x_.is_infinite()) return size_of(x_.left_period());
  if (x_.is_finite()) return size_of(x_.ray().period);
  return 1;
}

std::int64_t InverseOrbit::right_period() const {
  return x_.is_infinite() ? size_of(x_.right_period()) : 1;
}

InverseOrbit p_inverse(const BiPoint& x) { return InverseOrbit(x); }

BiPoint p_map(const InverseOrbit& orbit) {
  const Span s = orbit.support();
  auto f = [&](std::int64_t i) { return orbit.at(i).at(1); };
  return point_from_sequence(f, s.lo, orbit.left_period(), s.hi, orbit.right_period());
}

BiPoint embed_in_cylinder(const BiPoint& base, const OnePoint& z) {
  if (!base.is_finite()) throw Error(ErrorKind::BadRange, "the cylinder base must be a finite point");
  const auto& r = base.ray();
  const std::int64_t l = r.end;
  auto f = [&](std::int64_t i) { return i <= l ? base.at(i) : z.at(i - l); };
  const std::int64_t hi = l + 1 + size_of(z.word());
  const std::int64_t right = z.is_infinite() ? size_of(z.period()) : 1;
  return point_from_sequence(f, l - size_of(r.transient), size_of(r.period), hi, right);
}

OnePoint cylinder_coordinate(const BiPoint& base, const BiPoint& y) {
  if (!base.is_finite()) throw Error(ErrorKind::BadRange, "the cylinder base must be a finite point");
  if (!cyl_contains(Cylinder::make(base.ray()), y)) throw Error(ErrorKind::BadRange, "point outside the cylinder");
  return project(shift(y, base.ray().end)).point;
}

// --- round trip witnesses ------------------------------------------------------------------------

std::optional<BiPoint> lift_strictness_witness(const ForbiddenSpec& spec, Letter cutoff, int max_period) {
  SpaceHandle original(spec);
  SpaceHandle lifted(lift_space(project_space(spec).one).two);
  const auto periods = primitive_words(cutoff, max_period);
  for (const auto& p : periods) {
    for (const auto& q : periods) {
      BiPoint x = BiPoint::infinite(p, {}, q, 1);
      if (lifted.contains(x) && !original.contains(x)) return x;
    }
  }
  return std::nullopt;
}

std::optional<OnePoint> projection_strictness_witness(const ForbiddenSpec& one, Letter cutoff, int max_len) {
  OneSpace space(one);
  SpaceHandle lifted(lift_space(one).two);
  const auto prefixes = all_words(cutoff, max_len);
  const auto periods = primitive_words(cutoff, max_len);
  for (const auto& u : prefixes) {
    for (const auto& p : periods) {
      OnePoint z = OnePoint::infinite(u, p);
      if (space.contains(z) && !in_projection(lifted, z)) return z;
    }
  }
  return std::nullopt;
}

}  // namespace shiftz
