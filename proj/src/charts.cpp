#include "pervq/charts.hpp"

#include <algorithm>
#include <limits>

namespace pervq {

MonomialMap::MonomialMap(IntMatrix a) : exponents(std::move(a)) {
  if (!exponents.is_square()) {
    throw Error(ErrorKind::NonUnimodular,
                "exponent matrix " +
                    shape_string(exponents.rows(), exponents.cols()) +
                    " is not square");
  }
  const BigInt det = determinant(exponents);
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::NonUnimodular,
                "exponent matrix has determinant " + det.str());
  }
}

MonomialMap MonomialMap::identity(std::size_t n) {
  return MonomialMap(IntMatrix::identity(n));
}

MonomialMap gluing_map(const ChartBasis& from, const ChartBasis& to) {
  if (from.basis.rows() != to.basis.rows()) {
    throw Error(ErrorKind::Shape, "charts live in different dimensions");
  }
  return MonomialMap(to.inverse * from.basis);
}

MonomialMap compose(const MonomialMap& m1, const MonomialMap& m2) {
  if (m1.exponents.rows() != m2.exponents.rows()) {
    throw Error(ErrorKind::Shape,
                "cannot compose monomial maps of dimensions " +
                    std::to_string(m1.exponents.rows()) + " and " +
                    std::to_string(m2.exponents.rows()));
  }
  return MonomialMap(m1.exponents * m2.exponents);
}

std::optional<CocycleError> check_cocycle(const Fan& fan,
                                          std::span<const ChartBasis> bases) {
  const auto charts = maximal_cones(fan);
  const std::size_t n = fan.dim();
  for (const auto& k1 : charts) {
    for (const auto& k2 : charts) {
      const auto& b1 = find_chart(bases, k1);
      const auto& b2 = find_chart(bases, k2);
      if (compose(gluing_map(b2, b1), gluing_map(b1, b2)) !=
          MonomialMap::identity(n)) {
        return CocycleError{{k1, k2},
                            "h" + format_index_set(k2) + format_index_set(k1) +
                                " does not invert h" + format_index_set(k1) +
                                format_index_set(k2)};
      }
      for (const auto& k3 : charts) {
        const auto& b3 = find_chart(bases, k3);
        const auto via = compose(gluing_map(b2, b3), gluing_map(b1, b2));
        if (via != gluing_map(b1, b3)) {
          return CocycleError{{k1, k2, k3},
                              "transition " + format_index_set(k1) + " -> " +
                                  format_index_set(k2) + " -> " +
                                  format_index_set(k3) +
                                  " differs from the direct one"};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<LabeledExponent> stratum_loop_exponents(const ChartBasis& chart,
                                                    const IndexSet& stratum,
                                                    const IntVector& vector) {
  if (!is_subset(stratum, chart.cone)) {
    throw Error(ErrorKind::IllPosed, "stratum " + format_index_set(stratum) +
                                         " is not a face of chart " +
                                         format_index_set(chart.cone));
  }
  if (vector.size() != chart.basis.rows()) {
    throw Error(ErrorKind::IllPosed,
                "vector of length " + std::to_string(vector.size()) +
                    " in a chart of Z^" + std::to_string(chart.basis.rows()));
  }
  const IntVector coords = chart.coordinates(vector);
  std::vector<LabeledExponent> out;
  for (std::size_t i = 0; i < chart.labels.size(); ++i) {
    const int label = chart.labels[i];
    if (std::binary_search(stratum.begin(), stratum.end(), label)) continue;
    if (coords[i] > std::numeric_limits<long>::max() ||
        coords[i] < std::numeric_limits<long>::min()) {
      throw Error(ErrorKind::IllPosed, "exponent out of range");
    }
    out.push_back({label, coords[i].convert_to<long>()});
  }
  return out;
}

}  // namespace pervq
