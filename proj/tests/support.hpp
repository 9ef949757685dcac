#pragma once

// Random generators and brute-force oracles shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "shiftz/point.hpp"
#include "shiftz/space.hpp"
#include "shiftz/topology.hpp"
#include "shiftz/words.hpp"

namespace shiftz::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Word word(std::size_t lo, std::size_t hi, Letter letters) {
    Word w(static_cast<std::size_t>(range(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi))));
    for (auto& a : w) a = range(0, letters - 1);
    return w;
  }

  LeftRay ray(Letter letters, std::int64_t span = 6) {
    return canonicalize_ray(word(1, 3, letters), word(0, 4, letters), range(-span, span));
  }

  BiPoint infinite_point(Letter letters, std::int64_t span = 6) {
    return BiPoint::infinite(word(1, 3, letters), word(0, 5, letters), word(1, 3, letters), range(-span, span));
  }

  BiPoint finite_point(Letter letters, std::int64_t span = 6) { return BiPoint::finite(ray(letters, span)); }

  // Empty, finite and infinite points in roughly 1:3:6 proportion.
  BiPoint point(Letter letters, std::int64_t span = 6) {
    const auto r = range(0, 9);
    if (r == 0) return BiPoint::empty();
    if (r <= 3) return finite_point(letters, span);
    return infinite_point(letters, span);
  }

  // A point of the cylinder: its base, then random letters or ø.
  BiPoint point_in(const Cylinder& c, Letter letters) {
    const LeftRay& b = c.base;
    const Word tail = word(1, 4, letters);
    Word head = word(0, 3, letters);
    const bool finite = coin(0.3);
    auto f = [&](std::int64_t i) -> Letter {
      if (i <= b.end) return b.at(i);
      const auto j = i - b.end - 1;
      if (j < static_cast<std::int64_t>(head.size())) return head[static_cast<std::size_t>(j)];
      if (finite) return kEmpty;
      return tail[static_cast<std::size_t>(j - static_cast<std::int64_t>(head.size())) % tail.size()];
    };
    const auto lo = b.end - static_cast<std::int64_t>(b.transient.size());
    const auto hi = b.end + 1 + static_cast<std::int64_t>(head.size());
    return point_from_sequence(f, lo, static_cast<std::int64_t>(b.period.size()), hi,
                               finite ? 1 : static_cast<std::int64_t>(tail.size()));
  }

  Cylinder cylinder(Letter letters) {
    std::vector<Letter> ex;
    for (Letter a = 0; a < letters; ++a) {
      if (coin(0.25)) ex.push_back(a);
    }
    return Cylinder::make(ray(letters, 3), ex);
  }

  Pattern pattern(std::size_t max_len, Letter letters, double wild = 0.2) {
    Pattern p;
    const auto n = static_cast<std::size_t>(range(1, static_cast<std::int64_t>(max_len)));
    for (std::size_t i = 0; i < n; ++i) {
      p.cells.push_back(coin(wild) ? Cell::wild() : Cell::exact(range(0, letters - 1)));
    }
    return p;
  }

  // Word patterns only.
  ForbiddenSpec word_spec(std::size_t max_len, Letter letters, double wild = 0.2) {
    ForbiddenSpec s;
    const auto n = range(1, 3);
    for (std::int64_t i = 0; i < n; ++i) s.words.push_back(pattern(max_len, letters, wild));
    s.normalize();
    return s;
  }

  // Word patterns plus forbidden tails, or an allowlist alone.
  ForbiddenSpec spec(std::size_t max_len, Letter letters, bool allow = true) {
    ForbiddenSpec s;
    if (allow && coin(0.2)) {
      std::vector<Word> allow;
      const auto k = range(1, 2);
      for (std::int64_t i = 0; i < k; ++i) allow.push_back(word(1, 2, letters));
      s.allow_tails = allow;
    } else {
      const auto n = range(0, 2);
      for (std::int64_t i = 0; i < n; ++i) s.words.push_back(pattern(max_len, letters));
      const auto k = range(0, 2);
      for (std::int64_t i = 0; i < k; ++i) s.tails.push_back(canonicalize_ray(word(1, 2, letters), word(0, 2, letters), 0));
    }
    s.normalize();
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// --- oracles --------------------------------------------------------------------

inline constexpr std::int64_t kRadius = 60;

inline Word expand(const BiPoint& x, std::int64_t lo, std::int64_t hi) {
  Word w;
  for (std::int64_t i = lo; i <= hi; ++i) w.push_back(x.at(i));
  return w;
}

// Left tail of x is the ray `f` up to a shift: some k has x_{k-j} = f_{-j}
// for every j that reaches down to -radius.
inline bool scan_tail(const BiPoint& x, const LeftRay& f, std::int64_t radius) {
  for (std::int64_t k = -radius / 2; k <= radius; ++k) {
    bool all = true;
    for (std::int64_t j = 0; j <= k + radius && all; ++j) all = x.at(k - j) == f.at(-j);
    if (all) return true;
  }
  return false;
}

// Left tail of x is eventually periodic with a rotation of `a` on [-radius, -radius/2].
inline bool scan_allowed(const BiPoint& x, const Word& a, std::int64_t radius) {
  const auto n = static_cast<std::int64_t>(a.size());
  for (std::int64_t r = 0; r < n; ++r) {
    bool all = true;
    for (std::int64_t i = -radius; i <= -radius / 2 && all; ++i) {
      all = x.at(i) == a[static_cast<std::size_t>(((i - r) % n + n) % n)];
    }
    if (all) return true;
  }
  return false;
}

// Membership of an infinite point by scanning the window [-radius, radius].
inline bool scan_contains(const ForbiddenSpec& s, const BiPoint& x, std::int64_t radius = kRadius) {
  const Word w = expand(x, -radius, radius);
  if (s.alphabet) {
    for (Letter a : w) {
      if (!std::binary_search(s.alphabet->begin(), s.alphabet->end(), a)) return false;
    }
  }
  for (const auto& p : s.words) {
    if (p.occurs_in(w)) return false;
  }
  for (const auto& f : s.tails) {
    if (scan_tail(x, f, radius)) return false;
  }
  if (s.allow_tails) {
    bool ok = false;
    for (const auto& a : *s.allow_tails) ok = ok || scan_allowed(x, a, radius);
    if (!ok) return false;
  }
  return true;
}

// Words of length n over [0, cutoff).
inline std::vector<Word> all_words(int n, Letter cutoff) {
  std::vector<Word> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      for (Letter a = 0; a < cutoff; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

// u extends to an infinite point, searched among points (l)^- u (r)^+ with
// |l|, |r| <= extra + 1. Sound; complete for the short patterns used in tests.
inline bool brute_in_language(const ForbiddenSpec& s, const Word& u, Letter letters, int extra) {
  for (int a = 0; a <= extra; ++a) {
    for (int b = 0; b <= extra; ++b) {
      for (const auto& l : all_words(a + 1, letters)) {
        for (const auto& r : all_words(b + 1, letters)) {
          BiPoint x = BiPoint::infinite(l, u, r, 1);
          if (scan_contains(s, x, 30)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace shiftz::testing
