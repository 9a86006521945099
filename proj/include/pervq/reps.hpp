#pragma once

// Representations of the quivers in quivers.hpp, the validators for the
// categories C_n, C_Sigma and C_Delta, and Hom spaces between them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pervq/charts.hpp"
#include "pervq/quivers.hpp"

namespace pervq {

class Representation {
 public:
  /// u[a] : E(low) -> E(high), v[a] : E(high) -> E(low) for arrow a;
  /// loops[x][l] acts on E(x) for the l-th loop label of vertex x.
  /// Throws Shape naming the offending map, NotInvertible for a singular loop.
  Representation(Quiver quiver, std::vector<std::size_t> dims,
                 std::vector<RatMatrix> u, std::vector<RatMatrix> v,
                 std::vector<std::vector<RatMatrix>> loops);

  /// Every space zero-dimensional.
  static Representation zero(Quiver quiver);

  const Quiver& quiver() const noexcept { return quiver_; }
  std::size_t dim(std::size_t vertex) const { return dims_.at(vertex); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t total_dim() const;
  const RatMatrix& u(std::size_t arrow) const { return u_.at(arrow); }
  const RatMatrix& v(std::size_t arrow) const { return v_.at(arrow); }
  const RatMatrix& loop(std::size_t vertex, std::size_t index) const {
    return loops_.at(vertex).at(index);
  }
  const std::vector<RatMatrix>& u_maps() const noexcept { return u_; }
  const std::vector<RatMatrix>& v_maps() const noexcept { return v_; }
  const std::vector<std::vector<RatMatrix>>& loop_maps() const noexcept {
    return loops_;
  }

  friend bool operator==(const Representation&,
                         const Representation&) = default;

 private:
  Quiver quiver_;
  std::vector<std::size_t> dims_;
  std::vector<RatMatrix> u_;
  std::vector<RatMatrix> v_;
  std::vector<std::vector<RatMatrix>> loops_;
};

/// Assembles a representation from maps keyed by index sets. Unset u and v
/// maps are zero, unset loops are the identity.
class RepBuilder {
 public:
  explicit RepBuilder(Quiver quiver);

  RepBuilder& dim(const IndexSet& vertex, std::size_t d);
  RepBuilder& u(const IndexSet& low, const IndexSet& high, RatMatrix m);
  RepBuilder& v(const IndexSet& low, const IndexSet& high, RatMatrix m);
  RepBuilder& loop(const IndexSet& vertex, int label, RatMatrix m);

  bool has_u(std::size_t arrow) const { return u_[arrow].has_value(); }
  bool has_v(std::size_t arrow) const { return v_[arrow].has_value(); }
  bool has_loop(std::size_t vertex, std::size_t index) const {
    return loops_[vertex][index].has_value();
  }
  const Quiver& quiver() const noexcept { return quiver_; }

  Representation build() const;

 private:
  std::size_t arrow_index(const IndexSet& low, const IndexSet& high) const;

  Quiver quiver_;
  std::vector<std::size_t> dims_;
  std::vector<std::optional<RatMatrix>> u_;
  std::vector<std::optional<RatMatrix>> v_;
  std::vector<std::vector<std::optional<RatMatrix>>> loops_;
};

enum class ArrowEnd { Low, High };

/// v u + Id on the low space, or u v + Id on the high space.
RatMatrix monodromy(const Representation& rep, std::size_t arrow,
                    ArrowEnd end = ArrowEnd::Low);

struct Violation {
  std::string condition;
  std::string location;
  RatMatrix difference;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Sorted by (condition, location).
void sort_violations(std::vector<Violation>& violations);

/// Conditions (i) and (ii) of C_n. Throws InvalidArgument unless the quiver
/// is a hypercube without loops.
std::vector<Violation> validate_Cn(const Representation& rep);

/// Conditions of C_Sigma, including commutation of the M_{0i}. Throws
/// InvalidArgument unless the quiver is an arrangement quiver.
std::vector<Violation> validate_CSigma(const Representation& rep);

/// Conditions of C_Delta. Throws InvalidArgument unless the quiver equals
/// fan_quiver(fan) and `bases` has one chart for each maximal cone.
std::vector<Violation> validate_CDelta(const Representation& rep,
                                       const Fan& fan,
                                       std::span<const ChartBasis> bases);
std::vector<Violation> validate_CDelta(const Representation& rep,
                                       const Fan& fan);

/// The operators M_{J,*} of a fan-quiver representation. At a vertex J the
/// generators are the arrow monodromies toward the rays of the reference
/// chart R(J) and the loops, labelled by R(J)'s completion columns. A lattice
/// vector w acts through its coordinates in R(J)'s basis, coordinates on J
/// omitted.
class MonodromyTable {
 public:
  MonodromyTable(const Representation& rep, const Fan& fan,
                 std::span<const ChartBasis> bases);

  const IndexSet& reference(const IndexSet& stratum) const;
  /// Generator of label `label` of R(J); nullopt if it names nothing at J.
  std::optional<RatMatrix> generator(const IndexSet& stratum, int label) const;
  /// Product of generators raised to the given exponents, ascending labels.
  /// nullopt when a negative power of a singular generator is required.
  std::optional<RatMatrix> product(
      const IndexSet& stratum,
      std::span<const LabeledExponent> exponents) const;
  std::optional<RatMatrix> along(const IndexSet& stratum,
                                 const IntVector& w) const;
  /// Column `label` of `chart` acting at J: the arrow monodromy for one of
  /// the chart's rays, the loop when the chart is R(J), else along().
  std::optional<RatMatrix> in_chart(const ChartBasis& chart,
                                    const IndexSet& stratum, int label) const;

 private:
  const Representation& rep_;
  const Fan& fan_;
  std::span<const ChartBasis> bases_;
  std::map<IndexSet, IndexSet> reference_;
};

struct Morphism {
  std::vector<RatMatrix> components;  // one per vertex, E_A(x) -> E_B(x)

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

bool is_morphism(const Representation& a, const Representation& b,
                 const Morphism& phi);

/// Echelon basis of Hom(a, b). Throws InvalidArgument for distinct quivers.
std::vector<Morphism> hom_basis(const Representation& a,
                                const Representation& b);

Morphism identity_morphism(const Representation& rep);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undecided };

struct IsoOptions {
  std::uint64_t seed = 0;
  std::size_t max_attempts = 2000;
};

struct IsoResult {
  IsoVerdict verdict;
  std::optional<Morphism> witness;
  std::string reason;
};

IsoResult are_isomorphic(const Representation& a, const Representation& b,
                         const IsoOptions& options = {});

/// Block diagonal on every space and map.
Representation direct_sum(const Representation& a, const Representation& b);

/// The representation transported along per-vertex isomorphisms P_x:
/// maps become P f P^{-1}. Throws NotInvertible for a singular P_x.
Representation change_of_basis(const Representation& rep,
                               std::span<const RatMatrix> per_vertex);

std::string_view to_string(IsoVerdict verdict);

}  // namespace pervq
