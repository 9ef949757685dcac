#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "shiftz/point.hpp"

namespace shiftz {

// --- pseudo cylinders ----------------------------------------------------------

// [b]_k^l: points whose window [k, l] equals b. Gap cells stand for any
// block that keeps the point valid.
struct PseudoCylinder {
  struct PCell {
    bool gap = false;
    Letter letter = 0;  // may be ø

    friend bool operator==(const PCell&, const PCell&) = default;
  };

  std::vector<PCell> cells;
  std::int64_t start = 0;

  static PseudoCylinder of(const Word& b, std::int64_t k);
  std::int64_t end() const { return start + static_cast<std::int64_t>(cells.size()) - 1; }
  std::int64_t memory() const { return std::max<std::int64_t>(0, -start); }
  std::int64_t anticipation() const { return std::max<std::int64_t>(0, end()); }
  bool has_gap() const;

  friend bool operator==(const PseudoCylinder&, const PseudoCylinder&) = default;
};

bool pseudo_contains(const PseudoCylinder& p, const BiPoint& x);
// Overlapping, adjacent or separated by a gap; empty when inconsistent.
std::vector<PseudoCylinder> pseudo_intersect(const PseudoCylinder& a, const PseudoCylinder& b);

std::string format_pseudo(const PseudoCylinder& p);
// `[2 3]_1^2`, `[_]_5^5`, `[2 * 3]_0^2` with `*` for a gap cell.
PseudoCylinder parse_pseudo(std::string_view s);

// --- finitely defined sets --------------------------------------------------------

// A set decided by the window [lo, hi]. Window cells are abstracted to a
// mentioned letter, the fresh class or ø; `table` holds one verdict per
// abstract window in mixed radix (letters..., fresh, ø).
class FinitelyDefinedSet {
 public:
  static FinitelyDefinedSet everything();
  static FinitelyDefinedSet from_union(const std::vector<PseudoCylinder>& cyls);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const std::vector<Letter>& letters() const { return letters_; }

  bool decide(const Word& window) const;  // window over [lo, hi]
  bool contains(const BiPoint& x) const;

  // Same set, re-tabulated over a wider window and more letters.
  FinitelyDefinedSet widen(std::int64_t lo, std::int64_t hi, const std::vector<Letter>& letters) const;

  friend bool operator==(const FinitelyDefinedSet&, const FinitelyDefinedSet&) = default;
  friend FinitelyDefinedSet fds_union(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b);
  friend FinitelyDefinedSet fds_intersection(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b);
  friend FinitelyDefinedSet fds_complement(const FinitelyDefinedSet& a);

 private:
  std::size_t index_of(const Word& window) const;
  std::vector<Letter> abstract_reps() const;

  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::vector<Letter> letters_;
  std::vector<char> table_;
};

FinitelyDefinedSet fds_union(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b);
FinitelyDefinedSet fds_intersection(const FinitelyDefinedSet& a, const FinitelyDefinedSet& b);
FinitelyDefinedSet fds_complement(const FinitelyDefinedSet& a);

// --- sliding block codes -----------------------------------------------------------

struct WindowCell {
  enum class Kind : std::uint8_t { Letter, NonEmpty, Empty, Any };
  Kind kind = Kind::Any;
  Letter letter = 0;

  bool matches(Letter a) const;
  friend bool operator==(const WindowCell&, const WindowCell&) = default;
};

struct Output {
  enum class Kind : std::uint8_t { Letter, Empty, Copy, Half };
  Kind kind = Kind::Empty;
  Letter letter = 0;
  int pos = 0;  // relative position for Copy and Half

  friend bool operator==(const Output&, const Output&) = default;
};

struct Clause {
  std::vector<WindowCell> cells;  // positions -memory .. anticipation
  Output out;
};

class SlidingBlockCode {
 public:
  // Validates; throws NotShiftInvariantEmptyClass.
  SlidingBlockCode(int memory, int anticipation, std::vector<Clause> clauses, Output fallback,
                   int in_arity = 1, int out_arity = 1);

  int memory() const { return memory_; }
  int anticipation() const { return anticipation_; }
  int width() const { return memory_ + anticipation_ + 1; }
  int in_arity() const { return in_arity_; }
  int out_arity() const { return out_arity_; }
  bool composite() const { return static_cast<bool>(outer_); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Output& fallback() const { return fallback_; }

  // Output letter for a window over positions -memory .. anticipation.
  Letter eval(const Word& window) const;
  // Letters the rule distinguishes from fresh ones.
  std::vector<Letter> mentioned() const;
  bool has_half() const;

  friend SlidingBlockCode sbc_compose(const SlidingBlockCode& f, const SlidingBlockCode& g);

 private:
  SlidingBlockCode() = default;
  void validate() const;

  int memory_ = 0;
  int anticipation_ = 0;
  int in_arity_ = 1;
  int out_arity_ = 1;
  std::vector<Clause> clauses_;
  Output fallback_;
  std::shared_ptr<const SlidingBlockCode> outer_, inner_;
};

// Rule text: `memory K`, `anticipation L`, optional `arity IN OUT`, then
// first-match clauses `cells -> out` and a final `default -> out`. Cells are
// letters, `*` (any letter), `_` (ø) or `?` (anything). Outputs are a
// letter, `_`, `$j` (copy position j) or `half($j)`. `#` starts a comment.
SlidingBlockCode sbc_build(std::string_view rule_text);
std::string format_code(const SlidingBlockCode& c);

SlidingBlockCode identity_code();
SlidingBlockCode shift_code();
// x -> (x+1)/2 for odd x and x/2 for even x, ø -> ø.
SlidingBlockCode halving_code();

BiPoint sbc_apply(const SlidingBlockCode& c, const BiPoint& x);
// (f ∘ g)(x) = f(g(x)); throws AlphabetMismatch.
SlidingBlockCode sbc_compose(const SlidingBlockCode& f, const SlidingBlockCode& g);

struct ContinuityReport {
  bool passes = false;
  std::string reason;                  // first failed hypothesis
  std::int64_t right_end = 0;          // the uniform L when it exists
  std::vector<std::string> cylinders;  // C_a per output class when passing
  // C_ø is the union of windows with ø at L.
  bool homeomorphism_hypothesis = false;
};

// Checks the sufficient hypotheses for continuity over abstract windows:
// Φ(Ø) = Ø and every C_a a single pseudo cylinder [c^a]_{k_a}^L with a
// non-ø last cell. A failure does not assert discontinuity.
ContinuityReport check_continuity_sufficient(const SlidingBlockCode& c);

}  // namespace shiftz
