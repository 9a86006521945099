#pragma once

// Descent data over the affine charts of a smooth toric variety and the
// gluing functor Lambda with its quasi-inverse.

#include <map>
#include <tuple>
#include <vector>

#include "pervq/reps.hpp"

namespace pervq {

/// (K, K', J) with K < K' maximal cones and J a face of both.
using DeltaKey = std::tuple<IndexSet, IndexSet, IndexSet>;

class DescentDatum {
 public:
  /// `charts` has exactly one representation per maximal cone K, over
  /// chart_quiver(fan, K). delta^{KK'}_J : E^K_J -> E^{K'}_J is stored for
  /// K < K'; an absent entry is the identity. Throws InvalidArgument for
  /// misplaced entries, Shape and NotInvertible for bad deltas, Missing when
  /// an absent delta joins spaces of different dimension.
  DescentDatum(Fan fan, std::map<IndexSet, Representation> charts,
               std::map<DeltaKey, RatMatrix> deltas = {});

  const Fan& fan() const noexcept { return fan_; }
  const std::vector<ChartBasis>& bases() const noexcept { return bases_; }
  const std::vector<IndexSet>& maximal() const noexcept { return maximal_; }
  const Representation& chart(const IndexSet& cone) const;
  const std::map<IndexSet, Representation>& charts() const noexcept {
    return charts_;
  }
  const std::map<DeltaKey, RatMatrix>& deltas() const noexcept {
    return deltas_;
  }

  /// delta^{KK'}_J for any ordered pair; the identity when K = K'.
  RatMatrix delta(const IndexSet& from, const IndexSet& to,
                  const IndexSet& stratum) const;

  friend bool operator==(const DescentDatum& a, const DescentDatum& b) {
    return a.fan_ == b.fan_ && a.charts_ == b.charts_ && a.deltas_ == b.deltas_;
  }

 private:
  Fan fan_;
  std::vector<ChartBasis> bases_;
  std::vector<IndexSet> maximal_;
  std::map<IndexSet, Representation> charts_;
  std::map<DeltaKey, RatMatrix> deltas_;
};

/// Chart validity, conjugation of shared u and v, monodromy transport, and
/// the cocycle condition on triple overlaps.
std::vector<Violation> validate_descent(const DescentDatum& datum);

/// The global representation over fan_quiver. Each vertex takes its space
/// from the first maximal cone containing it. Throws ValidationFailed when a
/// required operator is singular.
Representation glue(const DescentDatum& datum);

/// Restrictions of `rep` to the charts, with every delta the identity.
/// Throws ValidationFailed when `rep` violates the conditions of C_Delta.
DescentDatum section(const Representation& rep, const Fan& fan);

/// Per-chart morphisms.
using DescentMorphism = std::map<IndexSet, Morphism>;

/// Chart components are morphisms and intertwine the deltas of both data.
bool is_descent_morphism(const DescentDatum& a, const DescentDatum& b,
                         const DescentMorphism& phi);

/// Lambda on morphisms: the component at J is taken from J's owning chart.
Morphism glue_morphism(const DescentDatum& a, const DescentDatum& b,
                       const DescentMorphism& phi);

/// The first maximal cone, in lexicographic order, containing `cone`.
IndexSet owning_chart(const Fan& fan, const IndexSet& cone);

}  // namespace pervq
