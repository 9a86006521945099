#pragma once

// Quivers whose vertices are index sets. Every edge carries a pair of
// arrows: u from the smaller set to the larger one and v back.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "pervq/geometry.hpp"

namespace pervq {

struct ArrowPair {
  std::size_t low;   // vertex position of J
  std::size_t high;  // vertex position of J with one more index
  int index;         // the added index

  friend bool operator==(const ArrowPair&, const ArrowPair&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  /// Canonicalises: vertices in graded order, arrows by (low, high), loop
  /// labels ascending. Throws InvalidArgument on duplicate vertices, arrows
  /// between sets not differing by exactly one index, unknown endpoints, or
  /// repeated loop labels.
  Quiver(std::vector<IndexSet> vertices,
         std::vector<std::pair<IndexSet, IndexSet>> arrows,
         std::map<IndexSet, std::vector<int>> loops = {});

  const std::vector<IndexSet>& vertices() const noexcept { return vertices_; }
  const std::vector<ArrowPair>& arrows() const noexcept { return arrows_; }
  const std::vector<int>& loops(std::size_t vertex) const {
    return loops_.at(vertex);
  }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t loop_count() const;

  std::optional<std::size_t> find_vertex(const IndexSet& set) const;
  std::size_t vertex(const IndexSet& set) const;
  std::optional<std::size_t> find_arrow(const IndexSet& low,
                                        const IndexSet& high) const;
  std::optional<std::size_t> find_loop(std::size_t vertex, int label) const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<IndexSet> vertices_;
  std::vector<ArrowPair> arrows_;
  std::vector<std::vector<int>> loops_;
};

/// Q_n: subsets of {1..n}, one arrow pair per hypercube edge, no loops.
Quiver hypercube_quiver(int n);

/// Quiver of n lines in general position in C^2.
Quiver arrangement_quiver(int lines);

/// One vertex per cone, an arrow pair per codimension-one face relation, and
/// n - j loops at each vertex labelled by the completion columns of the
/// vertex's reference chart. Throws InvalidFan for an invalid fan.
Quiver fan_quiver(const Fan& fan);

/// Quiver of the affine chart of a maximal cone (hypercube on the cone with
/// the chart's completion labels as loops at every vertex).
Quiver chart_quiver(const Fan& fan, const IndexSet& cone);

}  // namespace pervq
