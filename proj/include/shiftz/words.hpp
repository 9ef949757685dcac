#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shiftz {

using Letter = std::int64_t;
using Word = std::vector<Letter>;

// The empty letter. Never a member of an alphabet; only appears in windows.
inline constexpr Letter kEmpty = -1;

enum class ErrorKind {
  Parse,
  EmptyPeriod,
  EmptyLetterInRay,
  BadRange,
  NoRay,
  CutoffTooSmall,
  NotInLanguage,
  AllowlistUnsupported,
  InvalidSpec,
  NotShiftInvariantEmptyClass,
  NonConstantOnEmpty,
  AlphabetMismatch,
  InconsistentOverlaps,
  NotFiniteStep,
  NotMinimal,
  Overflow,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// --- word combinatorics -----------------------------------------------------

bool has_empty(const Word& w);
// ø may only be followed by ø.
bool is_empty_closed(const Word& w);
Word primitive_root(const Word& w);
bool is_primitive(const Word& w);
Word rotate_left(const Word& w, std::size_t n);
// Lexicographically least rotation; conjugate words share it.
Word least_rotation(const Word& w);
bool is_conjugate(const Word& a, const Word& b);

// --- block letters ------------------------------------------------------------
// Iterated Cantor pairing: a bijection between M-tuples of letters and letters.

Letter block_encode(const Word& tuple);
Word block_decode(Letter code, int arity);

// --- patterns -----------------------------------------------------------------

struct Cell {
  enum class Kind : std::uint8_t { Exact, Wild, Except, Tuple };

  Kind kind = Kind::Wild;
  Letter letter = 0;
  std::vector<Letter> excluded;  // sorted, Except only
  std::vector<Cell> parts;       // Tuple only

  static Cell exact(Letter a);
  static Cell wild();
  static Cell except(std::vector<Letter> excluded);
  static Cell tuple(std::vector<Cell> parts);

  // Patterns never match ø.
  bool matches(Letter a) const;
  bool is_exact() const { return kind == Kind::Exact; }

  friend bool operator==(const Cell& a, const Cell& b);
  friend bool operator<(const Cell& a, const Cell& b);
};

struct Pattern {
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  bool wildcard_free() const;
  // Matches w[end-|p|+1 .. end]; false when the window does not fit.
  bool matches_at(const Word& w, std::int64_t end) const;
  bool occurs_in(const Word& w) const;

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.cells == b.cells; }
  friend bool operator<(const Pattern& a, const Pattern& b);
};

Pattern exact_pattern(const Word& w);

// --- left rays ----------------------------------------------------------------

// ...ppp·t with the last letter of t at index `end`.
struct LeftRay {
  Word period;
  Word transient;
  std::int64_t end = 0;

  Letter at(std::int64_t i) const;  // requires i <= end
  Word window(std::int64_t i, std::int64_t j) const;

  friend bool operator==(const LeftRay& a, const LeftRay& b) = default;
  friend bool operator<(const LeftRay& a, const LeftRay& b);
};

LeftRay canonicalize_ray(Word period, Word transient, std::int64_t end);

// Canonical ray of the truncation (x_i)_{i<=k}, k <= r.end.
LeftRay truncate_ray(const LeftRay& r, std::int64_t k);

// Ray extended by letters on the right.
LeftRay append_ray(const LeftRay& r, const Word& w);

struct Occurrences {
  std::vector<std::int64_t> ends;   // isolated match ends, descending
  std::vector<std::int64_t> heads;  // family heads, descending
  std::int64_t stride = 0;          // families continue at head + m*stride, m >= 0

  bool none() const { return ends.empty() && heads.empty(); }
  bool infinite() const { return !heads.empty(); }
  bool contains(std::int64_t j) const;
};

Occurrences ray_subword_occurrences(const LeftRay& ray, const Pattern& p);

// True iff `forbidden` is a left-infinite subblock of `ray`, up to shift.
bool ray_equals_pattern_tail(const LeftRay& ray, const LeftRay& forbidden);

// --- text ---------------------------------------------------------------------

std::string format_letter(Letter a, int arity = 1);
std::string format_word(const Word& w, int arity = 1);     // space separated
std::string format_compact(const Word& w, int arity = 1);  // concatenated
std::string format_cell(const Cell& c, int arity = 1);
std::string format_pattern(const Pattern& p, int arity = 1);
std::string format_ray(const LeftRay& r, int arity = 1);
// Ray without its end index, as used in forbidden tails.
std::string format_tail(const LeftRay& r, int arity = 1);

Word parse_word(std::string_view s);
Pattern parse_pattern(std::string_view s);
// `(p)^- t @k`; the `@k` part defaults to 0.
LeftRay parse_ray(std::string_view s);

}  // namespace shiftz
