#include "shiftz/words.hpp"

#include <algorithm>
#include <tuple>

#include "text.hpp"

namespace shiftz {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::EmptyPeriod: return "EmptyPeriod";
    case ErrorKind::EmptyLetterInRay: return "EmptyLetterInRay";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::NoRay: return "NoRay";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::NotInLanguage: return "NotInLanguage";
    case ErrorKind::AllowlistUnsupported: return "AllowlistUnsupported";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotShiftInvariantEmptyClass: return "NotShiftInvariantEmptyClass";
    case ErrorKind::NonConstantOnEmpty: return "NonConstantOnEmpty";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InconsistentOverlaps: return "InconsistentOverlaps";
    case ErrorKind::NotFiniteStep: return "NotFiniteStep";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

bool has_empty(const Word& w) {
  return std::find(w.begin(), w.end(), kEmpty) != w.end();
}

bool is_empty_closed(const Word& w) {
  bool seen = false;
  for (Letter a : w) {
    if (a == kEmpty) {
      seen = true;
    } else if (a < 0 || seen) {
      return false;
    }
  }
  return true;
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

bool is_primitive(const Word& w) { return !w.empty() && primitive_root(w).size() == w.size(); }

Word rotate_left(const Word& w, std::size_t n) {
  Word r(w);
  if (!r.empty()) std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n % r.size()), r.end());
  return r;
}

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r = rotate_left(w, i);
    if (r < best) best = std::move(r);
  }
  return best;
}

bool is_conjugate(const Word& a, const Word& b) {
  return a.size() == b.size() && least_rotation(a) == least_rotation(b);
}

// --- block letters ----------------------------------------------------------

namespace {

Letter cantor_pair(Letter a, Letter b) {
  using u128 = unsigned __int128;
  u128 s = static_cast<u128>(a) + static_cast<u128>(b);
  u128 v = s * (s + 1) / 2 + static_cast<u128>(b);
  if (v > static_cast<u128>(INT64_MAX)) throw Error(ErrorKind::Overflow, "block letter too large");
  return static_cast<Letter>(v);
}

std::pair<Letter, Letter> cantor_unpair(Letter z) {
  using u128 = unsigned __int128;
  // Largest w with w(w+1)/2 <= z.
  std::uint64_t lo = 0, hi = 1ULL << 32;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (static_cast<u128>(mid) * (mid + 1) / 2 <= static_cast<u128>(z)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  auto t = static_cast<Letter>(static_cast<u128>(lo) * (lo + 1) / 2);
  Letter b = z - t;
  Letter a = static_cast<Letter>(lo) - b;
  return {a, b};
}

}  // namespace

Letter block_encode(const Word& tuple) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidSpec, "empty block tuple");
  Letter code = tuple[0];
  for (std::size_t i = 1; i < tuple.size(); ++i) code = cantor_pair(code, tuple[i]);
  if (code < 0) throw Error(ErrorKind::InvalidSpec, "ø inside a block letter");
  return code;
}

Word block_decode(Letter code, int arity) {
  if (arity < 1 || code < 0) throw Error(ErrorKind::InvalidSpec, "bad block letter");
  Word t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 1; --i) {
    auto [a, b] = cantor_unpair(code);
    t[static_cast<std::size_t>(i)] = b;
    code = a;
  }
  t[0] = code;
  return t;
}

// --- cells and patterns --------------------------------------------------------

Cell Cell::exact(Letter a) {
  Cell c;
  c.kind = Kind::Exact;
  c.letter = a;
  return c;
}

Cell Cell::wild() { return Cell{}; }

Cell Cell::except(std::vector<Letter> excluded) {
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  if (excluded.empty()) return wild();
  Cell c;
  c.kind = Kind::Except;
  c.excluded = std::move(excluded);
  return c;
}

Cell Cell::tuple(std::vector<Cell> parts) {
  Cell c;
  c.kind = Kind::Tuple;
  c.parts = std::move(parts);
  return c;
}

bool Cell::matches(Letter a) const {
  if (a < 0) return false;
  switch (kind) {
    case Kind::Exact: return a == letter;
    case Kind::Wild: return true;
    case Kind::Except: return !std::binary_search(excluded.begin(), excluded.end(), a);
    case Kind::Tuple: {
      Word t = block_decode(a, static_cast<int>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].matches(t[i])) return false;
      }
      return true;
    }
  }
  return false;
}

bool operator==(const Cell& a, const Cell& b) {
  return a.kind == b.kind && a.letter == b.letter && a.excluded == b.excluded && a.parts == b.parts;
}

bool operator<(const Cell& a, const Cell& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.letter != b.letter) return a.letter < b.letter;
  if (a.excluded != b.excluded) return a.excluded < b.excluded;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
}

bool operator<(const Pattern& a, const Pattern& b) {
  if (a.cells.size() != b.cells.size()) return a.cells.size() < b.cells.size();
  return std::lexicographical_compare(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end());
}

bool Pattern::wildcard_free() const {
  return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.is_exact(); });
}

bool Pattern::matches_at(const Word& w, std::int64_t end) const {
  auto n = static_cast<std::int64_t>(cells.size());
  if (end >= static_cast<std::int64_t>(w.size()) || end - n + 1 < 0) return false;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!cells[static_cast<std::size_t>(i)].matches(w[static_cast<std::size_t>(end - n + 1 + i)])) {
      return false;
    }
  }
  return true;
}

bool Pattern::occurs_in(const Word& w) const {
  for (std::int64_t j = static_cast<std::int64_t>(cells.size()) - 1; j < static_cast<std::int64_t>(w.size()); ++j) {
    if (matches_at(w, j)) return true;
  }
  return false;
}

Pattern exact_pattern(const Word& w) {
  Pattern p;
  for (Letter a : w) p.cells.push_back(Cell::exact(a));
  return p;
}

// --- rays -----------------------------------------------------------------------

Letter LeftRay::at(std::int64_t i) const {
  const auto t = static_cast<std::int64_t>(transient.size());
  const auto p = static_cast<std::int64_t>(period.size());
  std::int64_t d = end - i;
  if (d < 0) throw Error(ErrorKind::BadRange, "index beyond the end of a ray");
  if (d < t) return transient[static_cast<std::size_t>(t - 1 - d)];
  return period[static_cast<std::size_t>(p - 1 - (d - t) % p)];
}

Word LeftRay::window(std::int64_t i, std::int64_t j) const {
  if (i > j) throw Error(ErrorKind::BadRange, "window start after end");
  Word w;
  w.reserve(static_cast<std::size_t>(j - i + 1));
  for (std::int64_t k = i; k <= j; ++k) w.push_back(k <= end ? at(k) : kEmpty);
  return w;
}

bool operator<(const LeftRay& a, const LeftRay& b) {
  return std::tie(a.period, a.transient, a.end) < std::tie(b.period, b.transient, b.end);
}

LeftRay canonicalize_ray(Word period, Word transient, std::int64_t end) {
  if (period.empty()) throw Error(ErrorKind::EmptyPeriod, "ray period is empty");
  if (has_empty(period) || has_empty(transient)) {
    throw Error(ErrorKind::EmptyLetterInRay, "ø inside a ray");
  }
  for (Letter a : period) {
    if (a < 0) throw Error(ErrorKind::EmptyLetterInRay, "negative letter");
  }
  Word p = primitive_root(period);
  // Absorb leading transient letters that continue the period.
  std::size_t drop = 0;
  std::size_t phase = 0;
  while (drop < transient.size() && transient[drop] == p[phase]) {
    ++drop;
    phase = (phase + 1) % p.size();
  }
  LeftRay r;
  r.period = rotate_left(p, phase);
  r.transient.assign(transient.begin() + static_cast<std::ptrdiff_t>(drop), transient.end());
  r.end = end;
  return r;
}

LeftRay truncate_ray(const LeftRay& r, std::int64_t k) {
  if (k > r.end) throw Error(ErrorKind::BadRange, "truncation beyond the ray end");
  const auto t = static_cast<std::int64_t>(r.transient.size());
  const auto p = static_cast<std::int64_t>(r.period.size());
  std::int64_t d = r.end - k;
  if (d < t) {
    Word tr(r.transient.begin(), r.transient.end() - d);
    return canonicalize_ray(r.period, std::move(tr), k);
  }
  // Inside the periodic part: rotate so that the period ends at k.
  std::int64_t back = (d - t) % p;
  return canonicalize_ray(rotate_left(r.period, static_cast<std::size_t>(p - back)), {}, k);
}

LeftRay append_ray(const LeftRay& r, const Word& w) {
  Word t = r.transient;
  t.insert(t.end(), w.begin(), w.end());
  return canonicalize_ray(r.period, std::move(t), r.end + static_cast<std::int64_t>(w.size()));
}

bool Occurrences::contains(std::int64_t j) const {
  if (std::find(ends.begin(), ends.end(), j) != ends.end()) return true;
  for (std::int64_t h : heads) {
    if (j <= h && (h - j) % (-stride) == 0) return true;
  }
  return false;
}

Occurrences ray_subword_occurrences(const LeftRay& ray, const Pattern& pat) {
  Occurrences occ;
  const auto t = static_cast<std::int64_t>(ray.transient.size());
  const auto p = static_cast<std::int64_t>(ray.period.size());
  const auto n = static_cast<std::int64_t>(pat.size());
  occ.stride = -p;
  if (n == 0) return occ;
  const std::int64_t lo = ray.end - t - p + 1;
  Word w = ray.window(lo - n + 1, ray.end);
  const std::int64_t base = lo - n + 1;
  for (std::int64_t j = ray.end; j >= lo; --j) {
    if (!pat.matches_at(w, j - base)) continue;
    if (j > ray.end - t) {
      occ.ends.push_back(j);
    } else {
      occ.heads.push_back(j);
    }
  }
  return occ;
}

bool ray_equals_pattern_tail(const LeftRay& ray, const LeftRay& forbidden) {
  if (!is_conjugate(ray.period, forbidden.period)) return false;
  if (forbidden.transient.empty()) return true;
  if (forbidden.transient.size() > ray.transient.size()) return false;
  // Only truncations ending inside the transient can carry a transient.
  for (std::size_t m = 1; m <= ray.transient.size(); ++m) {
    Word tr(ray.transient.begin(), ray.transient.begin() + static_cast<std::ptrdiff_t>(m));
    LeftRay c = canonicalize_ray(ray.period, std::move(tr), 0);
    if (c.period == forbidden.period && c.transient == forbidden.transient) return true;
  }
  return false;
}

// --- text ---------------------------------------------------------------------

std::string format_letter(Letter a, int arity) {
  if (a == kEmpty) return "_";
  if (arity > 1) {
    std::string s = "[";
    for (Letter b : block_decode(a, arity)) s += format_letter(b);
    return s + "]";
  }
  if (a >= 0 && a <= 9) return std::string(1, static_cast<char>('0' + a));
  return "<" + std::to_string(a) + ">";
}

std::string format_word(const Word& w, int arity) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += format_letter(w[i], arity);
  }
  return s;
}

std::string format_compact(const Word& w, int arity) {
  std::string s;
  for (Letter a : w) s += format_letter(a, arity);
  return s;
}

std::string format_cell(const Cell& c, int arity) {
  switch (c.kind) {
    case Cell::Kind::Exact: return format_letter(c.letter, arity);
    case Cell::Kind::Wild: return "*";
    case Cell::Kind::Except: {
      std::string s = "~{";
      for (std::size_t i = 0; i < c.excluded.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c.excluded[i]);
      }
      return s + "}";
    }
    case Cell::Kind::Tuple: {
      std::string s = "[";
      for (const auto& p : c.parts) s += format_cell(p);
      return s + "]";
    }
  }
  return "?";
}

std::string format_pattern(const Pattern& p, int arity) {
  std::string s;
  for (const auto& c : p.cells) s += format_cell(c, arity);
  return s;
}

std::string format_tail(const LeftRay& r, int arity) {
  std::string s = "(" + format_compact(r.period, arity) + ")^-";
  if (!r.transient.empty()) s += " " + format_word(r.transient, arity);
  return s;
}

std::string format_ray(const LeftRay& r, int arity) {
  return format_tail(r, arity) + " @" + std::to_string(r.end);
}

Word parse_word(std::string_view s) {
  detail::Lexer lx(s);
  Word w;
  while (!lx.done()) w.push_back(lx.letter_or_empty());
  if (w.empty()) lx.fail("empty word");
  if (!is_empty_closed(w)) lx.fail("ø followed by a letter");
  return w;
}

Pattern parse_pattern(std::string_view s) {
  detail::Lexer lx(s);
  Pattern p;
  while (!lx.done()) p.cells.push_back(lx.cell());
  if (p.cells.empty()) lx.fail("empty pattern");
  return p;
}

LeftRay parse_ray(std::string_view s) {
  detail::Lexer lx(s);
  lx.expect("(");
  Word period;
  while (!lx.consume(")")) {
    if (lx.done()) lx.fail("unterminated period");
    period.push_back(lx.letter_or_empty());
  }
  lx.expect("^-");
  Word transient;
  while (lx.at_cell()) transient.push_back(lx.letter_or_empty());
  std::int64_t end = 0;
  if (lx.consume("@")) end = lx.integer();
  lx.expect_end();
  return canonicalize_ray(std::move(period), std::move(transient), end);
}

}  // namespace shiftz
