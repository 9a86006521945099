#pragma once

// Toric chart transitions as integer exponent matrices. Row i of the matrix
// is the exponent vector of output coordinate i:
//   y_i = prod_j x_j^{A(i, j)}.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pervq/geometry.hpp"

namespace pervq {

struct MonomialMap {
  IntMatrix exponents;

  /// Throws NonUnimodular unless exponents is square with |det| = 1.
  explicit MonomialMap(IntMatrix a);
  static MonomialMap identity(std::size_t n);

  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;
};

/// h_{KK'}: chart-K coordinates to chart-K' coordinates, A = B_{K'}^{-1} B_K.
MonomialMap gluing_map(const ChartBasis& from, const ChartBasis& to);

/// Apply m2, then m1.
MonomialMap compose(const MonomialMap& m1, const MonomialMap& m2);

struct CocycleError {
  std::vector<IndexSet> charts;  // pair or triple
  std::string message;
};

/// Checks h_{K'K} h_{KK'} = id for every pair and that going K -> K' -> K''
/// equals K -> K'' for every triple of maximal cones.
std::optional<CocycleError> check_cocycle(const Fan& fan,
                                          std::span<const ChartBasis> bases);

struct LabeledExponent {
  int label;
  long exponent;

  friend bool operator==(const LabeledExponent&,
                         const LabeledExponent&) = default;
};

/// Coordinates of `vector` against the chart basis, restricted to labels
/// outside `stratum`. Throws IllPosed when `stratum` is not a face of the
/// chart's cone or the vector has the wrong length.
std::vector<LabeledExponent> stratum_loop_exponents(const ChartBasis& chart,
                                                    const IndexSet& stratum,
                                                    const IntVector& vector);

}  // namespace pervq
