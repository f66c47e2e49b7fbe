#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "entire/errors.hpp"
#include "entire/number.hpp"

namespace entire {

/// Dense row-major matrix of arbitrary-precision integers. A matrix may have
/// zero rows while still carrying a column count.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds a matrix from row vectors, all of length `cols`.
  static IntMatrix from_rows(std::span<const Exponent> rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionMismatch("row " + std::to_string(i) + " has length " +
                                std::to_string(rows[i].size()) + ", expected " +
                                std::to_string(cols));
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static IntMatrix of(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Exponent> r;
    for (auto row : rows) r.push_back(make_exponent(row));
    return from_rows(r, r.empty() ? 0 : r.front().size());
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Exponent row(std::size_t i) const {
    return Exponent(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::vector<Exponent> row_list() const {
    std::vector<Exponent> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("matrix product " + a.shape() + " * " + b.shape());
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::string shape() const {
    return "(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exponent row vector times matrix: returns eᵀ·m, i.e. Σ_j e_j · row_j(m).
inline Exponent row_combination(const Exponent& e, const IntMatrix& m) {
  if (e.size() != m.rows())
    throw DimensionMismatch("combination of " + std::to_string(e.size()) + " coefficients with " +
                            m.shape() + " rows");
  Exponent out = zero_exponent(m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    if (e[j] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += e[j] * m(j, c);
  }
  return out;
}

/// m·v for an exact vector of Gaussian rationals.
inline GaussianVector multiply(const IntMatrix& m, std::span<const GaussianRational> v) {
  if (v.size() != m.cols())
    throw DimensionMismatch("apply " + m.shape() + " to vector of length " + std::to_string(v.size()));
  GaussianVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && !v[j].is_zero()) out[i] += GaussianRational(m(i, j)) * v[j];
  return out;
}

/// Row-style Hermite normal form of an integer lattice.
///
/// Rows are ℚ-independent. Pivot columns strictly increase, pivots are
/// positive, every entry to the left of a pivot in its row is zero, and every
/// entry above a pivot lies in [0, pivot). For a given lattice this form is
/// unique.
class HnfBasis {
 public:
  HnfBasis() = default;
  HnfBasis(IntMatrix matrix, std::vector<std::size_t> pivots)
      : matrix_(std::move(matrix)), pivots_(std::move(pivots)) {}

  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t rank() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

  friend bool operator==(const HnfBasis&, const HnfBasis&) = default;

 private:
  IntMatrix matrix_;
  std::vector<std::size_t> pivots_;
};

/// HNF basis of the ℤ-span of `generators`, each of length `cols`.
inline HnfBasis hnf(std::span<const Exponent> generators, std::size_t cols) {
  std::vector<Exponent> rows;
  for (const auto& g : generators) {
    if (g.size() != cols)
      throw DimensionMismatch("generator of length " + std::to_string(g.size()) +
                              " in a lattice of dimension " + std::to_string(cols));
    if (!is_zero_exponent(g)) rows.push_back(g);
  }

  auto axpy = [](Exponent& y, const Integer& q, const Exponent& x) {
    for (std::size_t c = 0; c < y.size(); ++c) y[c] -= q * x[c];
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows.size(); ++col) {
    bool found = false;
    // Euclid on column `col` among rows r..end until one nonzero remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      found = true;
      std::swap(rows[r], rows[best]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q = rows[i][col] / rows[r][col];
        axpy(rows[i], q, rows[r]);
        if (rows[i][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!found) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(rows[i][col], rows[r][col]);
      if (q != 0) axpy(rows[i], q, rows[r]);
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return HnfBasis(IntMatrix::from_rows(rows, cols), std::move(pivots));
}

inline HnfBasis hnf(const IntMatrix& m) {
  auto rows = m.row_list();
  return hnf(rows, m.cols());
}

/// Integer c with c·B = v, or nullopt when v is not in the lattice.
inline std::optional<std::vector<Integer>> coordinates(const Exponent& v, const HnfBasis& basis) {
  if (v.size() != basis.cols())
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                            " against basis with " + std::to_string(basis.cols()) + " columns");
  const IntMatrix& b = basis.matrix();
  Exponent residual = v;
  std::vector<Integer> coords(basis.rank());
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    std::size_t p = basis.pivots()[i];
    for (std::size_t c = (i == 0 ? 0 : basis.pivots()[i - 1] + 1); c < p; ++c)
      if (residual[c] != 0) return std::nullopt;
    if (residual[p] % b(i, p) != 0) return std::nullopt;
    coords[i] = residual[p] / b(i, p);
    for (std::size_t c = p; c < v.size(); ++c) residual[c] -= coords[i] * b(i, c);
  }
  if (!is_zero_exponent(residual)) return std::nullopt;
  return coords;
}

namespace detail {

template <typename T>
bool is_zero_value(const T& x) {
  if constexpr (std::is_same_v<T, GaussianRational>)
    return x.is_zero();
  else
    return x == 0;
}

/// In-place reduced row echelon form over a field; pivots are taken in column
/// order among the first `ncols` columns. Returns the pivot columns.
template <typename T>
std::vector<std::size_t> rref(std::vector<std::vector<T>>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t sel = r;
    while (sel < m.size() && is_zero_value(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    T inv = T(1) / m[r][col];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero_value(m[i][col])) continue;
      T factor = m[i][col];
      for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] -= factor * m[r][c];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

template <typename T>
std::vector<std::vector<T>> to_field(const IntMatrix& a) {
  std::vector<std::vector<T>> m(a.rows(), std::vector<T>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = T(a(i, j));
  return m;
}

}  // namespace detail

/// Rank over ℚ.
inline std::size_t rank(const IntMatrix& a) { return hnf(a).rank(); }

/// Basis of the right null space of `a` over ℚ. Each vector is scaled to a
/// primitive integer vector whose first nonzero entry is positive.
inline std::vector<std::vector<Rational>> kernel_rational(const IntMatrix& a) {
  auto m = detail::to_field<Rational>(a);
  auto pivots = detail::rref(m, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> w(a.cols(), Rational(0));
    w[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) w[pivots[r]] = -m[r][free];

    Integer lcm_den = 1;
    for (const auto& x : w) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
    Integer g = 0;
    for (const auto& x : w) g = boost::multiprecision::gcd(g, Integer(numerator(x) * (lcm_den / denominator(x))));
    Rational scale(lcm_den);
    scale /= g;
    for (const auto& x : w)
      if (x != 0) {
        if (x < 0) scale = -scale;
        break;
      }
    for (auto& x : w) x *= scale;
    basis.push_back(std::move(w));
  }
  return basis;
}

/// u with a·u = v. Requires full row rank; free coordinates are set to zero,
/// pivots chosen left to right.
inline GaussianVector solve_preimage(const IntMatrix& a, std::span<const GaussianRational> v) {
  if (v.size() != a.rows())
    throw DimensionMismatch("preimage of length-" + std::to_string(v.size()) + " vector under " +
                            a.shape());
  auto m = detail::to_field<GaussianRational>(a);
  for (std::size_t i = 0; i < a.rows(); ++i) m[i].push_back(v[i]);
  auto pivots = detail::rref(m, a.cols());
  if (pivots.size() < a.rows()) throw NoSolution("matrix " + a.shape() + " lacks full row rank");
  GaussianVector u(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) u[pivots[r]] = m[r][a.cols()];
  return u;
}

/// Integer coordinates of v in the ℚ-independent rows of `rows`, or nullopt.
inline std::optional<std::vector<Integer>> integer_coordinates(const Exponent& v, const IntMatrix& rows) {
  if (v.size() != rows.cols())
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " against " +
                            rows.shape());
  auto m = detail::to_field<Rational>(rows.transpose());
  for (std::size_t i = 0; i < v.size(); ++i) m[i].push_back(Rational(v[i]));
  auto pivots = detail::rref(m, rows.rows());
  if (pivots.size() != rows.rows()) throw DimensionMismatch("rows of " + rows.shape() + " are dependent");
  for (std::size_t i = pivots.size(); i < m.size(); ++i)
    if (m[i].back() != 0) return std::nullopt;
  std::vector<Integer> coords(rows.rows());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const Rational& c = m[r].back();
    if (denominator(c) != 1) return std::nullopt;
    coords[pivots[r]] = numerator(c);
  }
  return coords;
}

/// Extends the basis rows with standard unit vectors (smallest index first)
/// until there are `target` ℚ-independent rows.
inline IntMatrix complete_to_rank(const HnfBasis& basis, std::size_t target) {
  if (target < basis.rank() || target > basis.cols())
    throw std::invalid_argument("cannot complete rank-" + std::to_string(basis.rank()) +
                                " basis in dimension " + std::to_string(basis.cols()) + " to " +
                                std::to_string(target) + " rows");
  std::vector<Exponent> rows = basis.matrix().row_list();
  for (std::size_t j = 0; j < basis.cols() && rows.size() < target; ++j) {
    Exponent e = zero_exponent(basis.cols());
    e[j] = 1;
    rows.push_back(e);
    if (hnf(rows, basis.cols()).rank() != rows.size()) rows.pop_back();
  }
  return IntMatrix::from_rows(rows, basis.cols());
}

/// mats[0]·mats[1]·…; the empty product is the n×n identity.
inline IntMatrix matrix_chain_product(std::span<const IntMatrix> mats, std::size_t n) {
  if (mats.empty()) return IntMatrix::identity(n);
  IntMatrix acc = mats.front();
  for (std::size_t i = 1; i < mats.size(); ++i) acc = acc * mats[i];
  return acc;
}

}  // namespace entire
