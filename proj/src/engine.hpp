#pragma once

// Exact existence questions for a plain forbidden specification (no overlap
// constraint, cells Exact/Wild/Except only).
//
// Letters are abstracted into classes: each mentioned letter is its own
// class and every other letter falls into one fresh class φ (absent when the
// alphabet is restricted). Patterns cannot tell fresh letters apart, so every
// question below is answered exactly on class words.
//
// Bi-infinite existence is a search over a product of the de Bruijn graph of
// class words of length K = max(L-1, 1) with a tracker for forbidden rays.
// Left tails are seeded from finitely many periodic candidates: allowed
// periods when an allowlist is present, otherwise one period per cyclic
// strongly connected component (a constructed period avoiding every forbidden
// ray period when the component has more than one cycle).

#include <cstdint>
#include <optional>
#include <vector>

#include "shiftz/point.hpp"
#include "shiftz/space.hpp"

namespace shiftz::detail {

class Engine {
 public:
  explicit Engine(const ForbiddenSpec& base);

  const std::vector<Letter>& mentioned() const { return letters_; }
  bool restricted() const { return restricted_; }
  // Concrete letter standing for the fresh class.
  Letter fresh_letter() const { return fresh_; }
  // A fresh letter that also avoids `w`.
  Letter fresh_avoiding(const Word& w) const;

  // Concrete scans.
  bool word_clean(const Word& w) const;  // no pattern occurs, letters allowed
  bool ray_legal(const LeftRay& r) const;
  bool infinite_point_legal(const BiPoint& x) const;

  // Existence in X^inf.
  bool inf_nonempty() const;
  bool inf_infinite() const;
  bool word_in_language(const Word& w) const;  // ø-free words
  bool ray_extends(const LeftRay& r) const;    // r in B_linf(X^inf)
  bool follower_infinite(const LeftRay& r) const;
  // u·ø... is a window of a finite point of X.
  bool ends_language(const Word& u) const;

  // One-sided questions over positions 1, 2, ...
  bool one_word_extends(const Word& w) const;  // w starts an infinite one-sided point
  bool one_empty_member() const;               // Ø of the one-sided space
  // Some left-infinite legal sequence ends with w (no right extension needed).
  bool fixed_right(const Word& w) const;

  int classes() const { return ncls_; }
  // Class index per letter; nullopt when a letter is outside the alphabet.
  std::optional<std::vector<int>> classes_of(const Word& w) const;
  // Representative letter of a class.
  Letter rep(int cls) const;

 private:
  struct Tail {
    std::vector<int> period;
    bool ray_dead = true;
  };
  struct Node {
    std::uint64_t state = 0;
    std::int32_t tail = -1;
    std::int32_t phase = 0;
    bool pure = false;
    bool ray_dead = true;
    std::int32_t wp = 0;
    std::vector<int> trans;
  };
  struct Query {
    std::vector<Tail> tails;
    std::vector<Node> starts;
    std::vector<int> target;
    bool need_alive = true;
    bool accept_deviated = false;
  };

  int class_of(Letter a) const;  // -1 when outside a restricted alphabet
  bool cell_ok(std::size_t pat, std::size_t pos, int cls) const;
  bool ends_with_pattern(const std::vector<int>& window) const;
  bool clean_classes(const std::vector<int>& w) const;
  std::uint64_t encode_state(const std::vector<int>& s) const;
  std::vector<int> decode_state(std::uint64_t key) const;
  bool conj_to_forbidden(const std::vector<int>& period) const;
  bool pure_forbidden(const std::vector<int>& period) const;

  void build_tails();
  std::vector<Node> tail_starts(const std::vector<Tail>& tails) const;
  void successors(const Query& q, const Node& n, std::vector<Node>& out) const;
  bool run(const Query& q) const;
  std::optional<Node> ray_node(const LeftRay& r, std::vector<Tail>& tails) const;

  ForbiddenSpec spec_;
  std::vector<Letter> letters_;  // mentioned letters or the restricted alphabet
  bool restricted_ = false;
  Letter fresh_ = 0;
  int ncls_ = 0;
  int phi_ = -1;
  std::size_t max_len_ = 0;
  std::size_t k_ = 1;
  std::size_t max_trans_ = 0;
  // ok_[p][i][c]: cell i of pattern p accepts class c.
  std::vector<std::vector<std::vector<char>>> ok_;
  struct ClassRay {
    std::vector<int> period;
    std::vector<int> transient;
  };
  std::vector<ClassRay> rays_;
  std::vector<Tail> tails_;
  bool rich_ = false;
};

}  // namespace shiftz::detail
