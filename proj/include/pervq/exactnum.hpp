#pragma once

// Exact scalars and dense matrices over Q and Z.
//
// Matrices act on column vectors: "apply a, then b" is the product b * a.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pervq/error.hpp"

namespace pervq {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q" or "p" (optional leading '-'); the result is reduced.
Rational parse_rational(std::string_view text);
/// Canonical "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

/// Dense row-major matrix. A 0 x k or k x 0 matrix is a valid map to or from
/// the zero space.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::span<const std::vector<T>> columns,
                             std::size_t height);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const;
  std::vector<T> row(std::size_t r) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<BigInt>;

/// Exact product; mat_mul(a, b) means "apply b, then a".
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& a);

RatMatrix to_rational(const IntMatrix& a);
/// Throws Shape when some entry is not an integer.
IntMatrix to_integer(const RatMatrix& a);

/// Exact inverse by fraction-free Gauss-Jordan elimination.
/// Throws NotInvertible when the matrix is singular.
RatMatrix invert(const RatMatrix& a);
std::optional<RatMatrix> try_invert(const RatMatrix& a);
bool is_invertible(const RatMatrix& a);

/// a^e for any integer e; negative exponents go through invert.
RatMatrix power(const RatMatrix& a, long exponent);

std::size_t rank(const RatMatrix& a);
RatMatrix rref(const RatMatrix& a);

/// Basis of {x : a x = 0} as column vectors. The basis is the reduced row
/// echelon form of the kernel: every vector has a leading 1 in a distinct
/// position, ordered by that position.
std::vector<RatMatrix> solve_nullspace(const RatMatrix& a);

BigInt determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);

/// Block diagonal [a 0; 0 b].
RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b);

struct SmithForm {
  IntMatrix left;      // U, unimodular
  IntMatrix diagonal;  // D = U a V
  IntMatrix right;     // V, unimodular
};

/// U a V = D with D diagonal, non-negative, d_i | d_{i+1}.
SmithForm smith_normal_form(const IntMatrix& a);

/// Row Hermite normal form: row echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// n x n matrix of determinant +-1 whose first k columns are `vectors`.
/// Throws NotCompletable when the vectors do not span a saturated rank-k
/// sublattice of Z^n.
IntMatrix complete_to_unimodular(std::span<const std::vector<BigInt>> vectors,
                                 std::size_t n);

std::string shape_string(std::size_t rows, std::size_t cols);

extern template class Matrix<Rational>;
extern template class Matrix<BigInt>;

}  // namespace pervq
