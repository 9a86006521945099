#pragma once

// Smooth rational polyhedral cones and fans. Rays carry 1-based labels; a
// cone is the sorted set of labels of its rays, the empty set being {0}.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pervq/exactnum.hpp"

namespace pervq {

using IndexSet = std::vector<int>;
using IntVector = std::vector<BigInt>;

/// "{1,2}" for display, "{}" for the empty set.
std::string format_index_set(const IndexSet& set);
/// "1,2" as used for JSON object keys; "" for the empty set.
std::string index_set_key(const IndexSet& set);
IndexSet parse_index_set_key(std::string_view key);

bool is_subset(const IndexSet& small, const IndexSet& big);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
/// All subsets, ordered by cardinality then lexicographically.
std::vector<IndexSet> all_subsets(const IndexSet& set);
/// Graded order: cardinality first, then lexicographic.
bool graded_less(const IndexSet& a, const IndexSet& b);

class Fan {
 public:
  /// Normalises the cone list (sorted index sets, sorted, deduplicated).
  /// Throws InvalidFan for structural defects: wrong ray length, labels out
  /// of range, repeated labels inside a cone, or a basis override for a set
  /// that is not a cone.
  Fan(std::size_t dim, std::vector<IntVector> rays,
      std::vector<IndexSet> cones,
      std::map<IndexSet, IntMatrix> basis_overrides = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t ray_count() const noexcept { return rays_.size(); }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const IntVector& ray(int label) const;
  const std::vector<IndexSet>& cones() const noexcept { return cones_; }
  const std::map<IndexSet, IntMatrix>& basis_overrides() const noexcept {
    return overrides_;
  }
  bool contains(const IndexSet& cone) const;

  /// The fan of all faces of `cone`, keeping every ray label of this fan.
  Fan restricted_to(const IndexSet& cone) const;

  friend bool operator==(const Fan& a, const Fan& b) = default;

 private:
  std::size_t dim_;
  std::vector<IntVector> rays_;
  std::vector<IndexSet> cones_;
  std::map<IndexSet, IntMatrix> overrides_;
};

struct FanViolation {
  std::string axiom;  // primitive, distinct, independent, face-closure, intersection
  std::vector<IndexSet> cones;
  std::string message;
};

std::optional<FanViolation> validate_fan(const Fan& fan);

/// True iff the cone's rays extend to a basis of Z^n.
bool is_smooth(const Fan& fan, const IndexSet& cone);

/// G = (M^T)^{-1}; column i is the inward normal g_i with <g_i, v_j> = delta_ij.
IntMatrix dual_cone_smooth(const IntMatrix& generators);

/// Cones not strictly contained in another cone, in lexicographic order.
std::vector<IndexSet> maximal_cones(const Fan& fan);

/// Lattice basis attached to a maximal cone. Columns are labelled: first the
/// cone's rays (ascending), then completion columns with fresh labels
/// k+1, ..., k+n-|K| where k is the number of rays of the fan.
struct ChartBasis {
  IndexSet cone;
  std::vector<int> labels;
  IntMatrix basis;
  IntMatrix inverse;

  IntVector column_of(int label) const;
  bool has_label(int label) const;
  std::size_t position_of(int label) const;
  /// Coordinates of w against this basis, in label order.
  IntVector coordinates(const IntVector& w) const;
  /// Labels of completion columns (those that are not rays of the cone).
  std::vector<int> completion_labels() const;
};

/// Completion labels a chart on `cone` receives in `fan`.
std::vector<int> completion_labels_for(const Fan& fan, const IndexSet& cone);

ChartBasis chart_basis(const Fan& fan, const IndexSet& cone,
                       const std::optional<IntMatrix>& override_basis = {});

/// Chart bases for every maximal cone, honouring the fan's overrides.
std::vector<ChartBasis> chart_bases(const Fan& fan);

const ChartBasis& find_chart(std::span<const ChartBasis> bases,
                             const IndexSet& cone);

/// Lexicographically smallest maximal cone of maximal cardinality that
/// contains `cone`.
IndexSet reference_chart(const Fan& fan, const IndexSet& cone);

}  // namespace pervq
