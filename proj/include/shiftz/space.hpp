#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftz/point.hpp"
#include "shiftz/words.hpp"

namespace shiftz {

// Finite description of F = F' ∪ F''.
//   words        F': patterns with wildcards
//   tails        F'': forbidden left tails, stored with end index 0
//   allow_tails  when present, a left tail is legal iff it is eventually one
//                of these periods (stored primitive, least rotation)
//   alphabet     when present, only these letters may occur (plain word
//                specs only)
//   overlap_m    M > 0 for a derived space over M-block letters: consecutive
//                letters must overlap consistently
struct ForbiddenSpec {
  std::vector<Pattern> words;
  std::vector<LeftRay> tails;
  std::optional<std::vector<Word>> allow_tails;
  std::optional<std::vector<Letter>> alphabet;
  int overlap_m = 0;

  // Sorts, deduplicates and canonicalizes; throws InvalidSpec on bad input.
  void normalize();
  std::vector<Letter> mentioned_letters() const;
  std::size_t max_pattern_length() const;
  int arity() const { return overlap_m > 0 ? overlap_m : 1; }

  friend bool operator==(const ForbiddenSpec&, const ForbiddenSpec&) = default;
};

// JSON keys: forbid_words, forbid_tails, forbid_tails_containing,
// allow_tails, alphabet, overlap_m. `forbid_tails_containing` entries are
// folded into forbid_words: every occurrence of a word lies in some tail.
ForbiddenSpec parse_spec_json(std::string_view text);
std::string spec_to_json(const ForbiddenSpec& spec);

namespace detail {
class Engine;
}

class SpaceHandle {
 public:
  explicit SpaceHandle(ForbiddenSpec spec);

  const ForbiddenSpec& spec() const;
  int arity() const;

  bool contains(const BiPoint& x) const;
  bool contains_infinite(const BiPoint& x) const;
  bool empty_member() const;  // Ø ∈ X, i.e. X^inf is infinite
  bool inf_nonempty() const;
  bool inf_infinite() const;

  bool word_in_language(const Word& w) const;  // ø-free words of B(X^inf)
  bool ray_in_language(const LeftRay& r) const;
  bool follower_infinite(const LeftRay& r) const;
  // Some finite point of X has a window u·ø.
  bool ends_language(const Word& u) const;
  // Concrete letter not used by the specification.
  Letter fresh_letter() const;
  // Letters of the specification, decoded to base letters for derived spaces.
  std::vector<Letter> base_letters() const;
  bool restricted() const;

  // The engine over base letters (the translated spec for derived spaces).
  const detail::Engine& engine() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Orders words with ø after every letter.
bool block_less(const Word& a, const Word& b);

// B_n(X) restricted to letters below `cutoff` (base letters for derived
// spaces), including the ø-terminated windows of finite points.
std::vector<Word> blocks(const SpaceHandle& h, int n, Letter cutoff);

enum class Direction { Forward, Backward };

struct FollowerSet {
  std::vector<Word> words;  // ø-free members over letters < cutoff
  bool infinite = false;
};

FollowerSet follower_set(const SpaceHandle& h, const Word& left, int k, Direction dir, Letter cutoff);
FollowerSet follower_set(const SpaceHandle& h, const LeftRay& left, int k, Letter cutoff);

bool has_iep(const SpaceHandle& h, const BiPoint& x);

struct MinimalityReport {
  bool minimal = true;
  Word witness;        // a proper subblock outside the language
  std::string parent;  // the forbidden pattern or tail it came from
};

MinimalityReport is_minimal(const ForbiddenSpec& spec);
ForbiddenSpec minimalize(const ForbiddenSpec& spec);

struct Classification {
  bool row_finite = false;
  bool column_finite = false;
  std::optional<int> m_step;
  bool finite_type = false;
};

Classification classify(const SpaceHandle& h);

struct EqualVerdict {
  bool equal = true;
  std::string witness;  // a word or a ray in exactly one of the spaces
};

EqualVerdict equal_spaces(const SpaceHandle& a, const SpaceHandle& b, int n_budget, Letter cutoff);

}  // namespace shiftz
