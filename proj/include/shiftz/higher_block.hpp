#pragma once

#include <string>
#include <vector>

#include "shiftz/point.hpp"
#include "shiftz/space.hpp"

namespace shiftz {

// (Ξx)_i = [x_{i-M+1} .. x_i] as a block letter when x_i ≠ ø, else ø.
BiPoint hb_encode(int m, const BiPoint& x);
// Last coordinate of every letter; throws InconsistentOverlaps.
BiPoint hb_decode(int m, const BiPoint& y);

// Specification over M-block letters whose space is the image of X_F.
// Patterns shorter than M are padded on the left with wildcards.
ForbiddenSpec hb_spec(int m, const ForbiddenSpec& spec);

// Marks the abstract vertex standing for letters at or above the cutoff.
inline constexpr Letter kStar = -2;

// Vertices are M-blocks and edges (M+1)-blocks with prefix and suffix
// incidence. `emitter[v]` is set when v emits infinitely many edges.
struct Graph {
  int m = 0;
  std::vector<Word> vertices;  // sorted
  std::vector<Word> edges;     // sorted
  std::vector<bool> emitter;

  Word initial(const Word& e) const { return Word(e.begin(), e.end() - 1); }
  Word terminal(const Word& e) const { return Word(e.begin() + 1, e.end()); }
  std::size_t vertex_index(const Word& v) const;  // vertices.size() when absent
};

struct EdgeShift {
  Graph graph;
  // F = {ef : t(e) ≠ i(f)} over the edge letters of the graph.
  ForbiddenSpec spec;
};

// Requires an M-step space with M >= its step; throws NotFiniteStep.
// With `star`, letters at or above the cutoff are summarized by `*`.
EdgeShift to_edge_shift(const SpaceHandle& h, int m, Letter cutoff, bool star = false);

// Vertex and edge labels: `ε` for the empty block, `*` for the abstract letter.
std::string block_label(const Word& w);
std::string graph_to_dot(const Graph& g);

// Points over edge letters (block codes of (M+1)-blocks) of the full graph
// behind an edge shift.
class EdgeSpace {
 public:
  EdgeSpace(SpaceHandle base, int m);

  int m() const { return m_; }
  bool is_edge(Letter e) const;
  bool is_emitter(const Word& v) const;
  bool contains(const BiPoint& x) const;
  // B_n at the cutoff, from walks in the finite subgraph.
  std::vector<Word> blocks(int n, Letter cutoff) const;

 private:
  bool consecutive(Letter e, Letter f) const;
  bool legal_window(const Word& w) const;

  SpaceHandle base_;
  int m_;
};

EdgeSpace edge_space(const SpaceHandle& h, int m);

}  // namespace shiftz
