#include "pervq/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace pervq {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

void require_mul_shape(std::size_t acols, std::size_t brows, std::size_t arows,
                       std::size_t bcols) {
  if (acols != brows) {
    throw Error(ErrorKind::Shape, "cannot multiply " +
                                      shape_string(arows, acols) + " by " +
                                      shape_string(brows, bcols));
  }
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  require_mul_shape(a.cols(), b.rows(), a.rows(), b.cols());
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

template <class T>
void swap_cols(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row_dst += factor * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src,
             const BigInt& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += factor * m(src, c);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src,
             const BigInt& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += factor * m(r, src);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"}
                                      : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::Parse,
                "malformed rational '" + std::string(text) + "'");
  }
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) {
    throw Error(ErrorKind::Parse,
                "zero denominator in '" + std::string(text) + "'");
  }
  if (negative) n = -n;
  return Rational(n, d);
}

std::string to_string(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string shape_string(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorKind::Shape, "ragged matrix literal");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

template <class T>
Matrix<T> Matrix<T>::from_columns(std::span<const std::vector<T>> columns,
                                  std::size_t height) {
  Matrix out(height, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != height) {
      throw Error(ErrorKind::Shape, "column " + std::to_string(c) +
                                        " has length " +
                                        std::to_string(columns[c].size()) +
                                        ", expected " + std::to_string(height));
    }
    for (std::size_t r = 0; r < height; ++r) out(r, c) = columns[c][r];
  }
  return out;
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t c) const {
  std::vector<T> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t r) const {
  return std::vector<T>(data_.begin() + r * cols_,
                        data_.begin() + (r + 1) * cols_);
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

template <class T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const T& x) { return x == 0; });
}

template <class T>
bool Matrix<T>::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

template class Matrix<Rational>;
template class Matrix<BigInt>;

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  return multiply(a, b);
}
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  return multiply(a, b);
}
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  return multiply(a, b);
}
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  return multiply(a, b);
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::Shape, "cannot add " +
                                      shape_string(a.rows(), a.cols()) +
                                      " and " +
                                      shape_string(b.rows(), b.cols()));
  }
  RatMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  return a + Rational(-1) * b;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Rational(a(r, c));
  return out;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (boost::multiprecision::denominator(a(r, c)) != 1) {
        throw Error(ErrorKind::Shape, "entry (" + std::to_string(r) + "," +
                                          std::to_string(c) +
                                          ") is not an integer");
      }
      out(r, c) = boost::multiprecision::numerator(a(r, c));
    }
  }
  return out;
}

std::optional<RatMatrix> try_invert(const RatMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorKind::Shape,
                "cannot invert " + shape_string(a.rows(), a.cols()));
  }
  const std::size_t n = a.rows();
  // Clear denominators row by row: b = diag(scale) * a is integral.
  std::vector<BigInt> scale(n, BigInt(1));
  IntMatrix work(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < n; ++c)
      l = boost::multiprecision::lcm(l,
                                     boost::multiprecision::denominator(a(r, c)));
    scale[r] = l;
    for (std::size_t c = 0; c < n; ++c) {
      work(r, c) = boost::multiprecision::numerator(a(r, c)) *
                   (l / boost::multiprecision::denominator(a(r, c)));
    }
    work(r, n + r) = 1;
  }

  BigInt previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && work(pivot, k) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    swap_rows(work, pivot, k);
    const BigInt p = work(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const BigInt f = work(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        work(i, j) = (p * work(i, j) - f * work(k, j)) / previous;
      }
    }
    previous = p;
  }

  // work = [d I | d b^{-1}]; a^{-1} = b^{-1} diag(scale).
  RatMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = Rational(work(r, n + c) * scale[c], work(r, r));
    }
  }
  return out;
}

RatMatrix invert(const RatMatrix& a) {
  auto inv = try_invert(a);
  if (!inv) {
    throw Error(ErrorKind::NotInvertible,
                "matrix " + shape_string(a.rows(), a.cols()) +
                    " is not invertible");
  }
  return *std::move(inv);
}

bool is_invertible(const RatMatrix& a) {
  return a.is_square() && rank(a) == a.rows();
}

RatMatrix power(const RatMatrix& a, long exponent) {
  if (!a.is_square()) {
    throw Error(ErrorKind::Shape,
                "cannot raise " + shape_string(a.rows(), a.cols()) +
                    " to a power");
  }
  RatMatrix base = exponent < 0 ? invert(a) : a;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1
                                 : static_cast<unsigned long>(exponent);
  RatMatrix result = RatMatrix::identity(a.rows());
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

RatMatrix rref(const RatMatrix& a) {
  RatMatrix m = a;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    swap_rows(m, pivot, row);
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    ++row;
  }
  return m;
}

std::size_t rank(const RatMatrix& a) {
  const RatMatrix r = rref(a);
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t c = 0; c < r.cols() && !nonzero; ++c)
      nonzero = r(i, c) != 0;
    if (nonzero) ++count;
  }
  return count;
}

std::vector<RatMatrix> solve_nullspace(const RatMatrix& a) {
  const RatMatrix r = rref(a);
  const std::size_t n = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r(i, c) != 0) {
        pivot_cols.push_back(c);
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  if (free_cols.empty()) return {};

  RatMatrix kernel_rows(free_cols.size(), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    kernel_rows(k, f) = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
      kernel_rows(k, pivot_cols[i]) = -r(i, f);
  }
  const RatMatrix canonical = rref(kernel_rows);
  std::vector<RatMatrix> basis;
  basis.reserve(free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    RatMatrix v(n, 1);
    for (std::size_t c = 0; c < n; ++c) v(c, 0) = canonical(k, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

BigInt determinant(const IntMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorKind::Shape, "determinant of non-square " +
                                      shape_string(a.rows(), a.cols()));
  }
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      swap_rows(m, pivot, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (!a.is_square()) {
    throw Error(ErrorKind::Shape, "determinant of non-square " +
                                      shape_string(a.rows(), a.cols()));
  }
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      swap_rows(m, pivot, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pr == m || abs_value(d(i, j)) < abs_value(d(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == m) return {std::move(u), std::move(d), std::move(v)};
      swap_rows(d, pr, t);
      swap_rows(u, pr, t);
      swap_cols(d, pc, t);
      swap_cols(v, pc, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const BigInt q = d(i, t) / d(t, t);
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const BigInt q = d(t, j) / d(t, t);
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, BigInt(1));
            add_row(u, t, i, BigInt(1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(u), std::move(d), std::move(v)};
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows();
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < m; ++col) {
    for (;;) {
      std::size_t pivot = m;
      for (std::size_t i = row; i < m; ++i) {
        if (h(i, col) == 0) continue;
        if (pivot == m || abs_value(h(i, col)) < abs_value(h(pivot, col)))
          pivot = i;
      }
      if (pivot == m) break;
      swap_rows(h, pivot, row);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (h(i, col) == 0) continue;
        add_row(h, i, row, -floor_div(h(i, col), h(row, col)));
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      for (std::size_t c = 0; c < h.cols(); ++c) h(row, c) = -h(row, c);
    }
    for (std::size_t i = 0; i < row; ++i) {
      add_row(h, i, row, -floor_div(h(i, col), h(row, col)));
    }
    ++row;
  }
  IntMatrix out(row, h.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) out(r, c) = h(r, c);
  return out;
}

IntMatrix complete_to_unimodular(std::span<const std::vector<BigInt>> vectors,
                                 std::size_t n) {
  const std::size_t k = vectors.size();
  if (k > n) {
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(k) + " vectors cannot be part of a basis of Z^" +
                    std::to_string(n));
  }
  const IntMatrix a = IntMatrix::from_columns(vectors, n);
  const SmithForm snf = smith_normal_form(a);
  for (std::size_t i = 0; i < k; ++i) {
    if (snf.diagonal(i, i) != 1) {
      throw Error(ErrorKind::NotCompletable,
                  "vectors span a sublattice with elementary divisor " +
                      snf.diagonal(i, i).str());
    }
  }
  if (k == n) return a;

  // w = diag(V, I) U satisfies w a = [I; 0]; w^{-1} = [a | c0].
  IntMatrix vblock = IntMatrix::identity(n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) vblock(i, j) = snf.right(i, j);
  const IntMatrix w = vblock * snf.left;
  const IntMatrix w_inv = to_integer(invert(to_rational(w)));

  const std::size_t extra = n - k;
  IntMatrix annihilator(extra, n);
  IntMatrix c0(n, extra);
  for (std::size_t i = 0; i < extra; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      annihilator(i, j) = w(k + i, j);
      c0(j, i) = w_inv(j, k + i);
    }
  }

  // Canonical completion: h c = I for the HNF h of the annihilator lattice,
  // then reduced modulo the lattice spanned by the inputs.
  const IntMatrix h = hermite_normal_form(annihilator);
  const IntMatrix p = h * c0;
  IntMatrix c = to_integer(to_rational(c0) * invert(to_rational(p)));

  const IntMatrix lattice = hermite_normal_form(a.transpose());
  for (std::size_t col = 0; col < extra; ++col) {
    for (std::size_t b = 0; b < lattice.rows(); ++b) {
      std::size_t pc = 0;
      while (lattice(b, pc) == 0) ++pc;
      const BigInt q = floor_div(c(pc, col), lattice(b, pc));
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(j, col) -= q * lattice(b, j);
    }
  }

  IntMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) out(j, i) = a(j, i);
    for (std::size_t i = 0; i < extra; ++i) out(j, k + i) = c(j, i);
  }
  return out;
}

}  // namespace pervq
