#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "driftbench/error.hpp"
#include "driftbench/random.hpp"

namespace driftbench {

/// Dense row-major matrix for the small d x d problems of alignment.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return std::span<double>(data_).subspan(i * cols_, cols_); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DataError("matrix product dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline bool is_identity(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

/// max |(Q^T Q - I)_ij|
inline double orthogonality_error(const Matrix& q) {
  const Matrix qtq = multiply(transpose(q), q);
  double worst = 0.0;
  for (std::size_t i = 0; i < qtq.rows(); ++i) {
    for (std::size_t j = 0; j < qtq.cols(); ++j) {
      worst = std::max(worst, std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

struct SvdResult {
  Matrix u;  // left singular vectors as columns
  std::vector<double> singular_values;
  Matrix v;  // right singular vectors as columns: A = U diag(s) V^T
  std::size_t sweeps = 0;
  bool converged = false;
  std::size_t rank = 0;
};

namespace detail {

inline double column_dot(const Matrix& m, std::size_t p, std::size_t q) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, p) * m(i, q);
  return s;
}

inline void rotate_columns(Matrix& m, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double xp = m(i, p);
    const double xq = m(i, q);
    m(i, p) = c * xp - s * xq;
    m(i, q) = s * xp + c * xq;
  }
}

/// Fills zero columns of `u` (flagged in `filled`) with unit vectors
/// orthogonal to the rest, by Gram-Schmidt over the standard basis.
inline void complete_orthonormal_columns(Matrix& u, std::vector<char>& filled) {
  const std::size_t n = u.rows();
  std::size_t candidate = 0;
  for (std::size_t col = 0; col < u.cols(); ++col) {
    if (filled[col]) continue;
    while (candidate < n) {
      std::vector<double> v(n, 0.0);
      v[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t other = 0; other < u.cols(); ++other) {
          if (!filled[other]) continue;
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += v[i] * u(i, other);
          for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u(i, other);
        }
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) u(i, col) = v[i] / norm;
        filled[col] = 1;
        break;
      }
    }
  }
}

}  // namespace detail

/// One-sided (Hestenes) Jacobi SVD of a square matrix. Column pairs are
/// rotated until every pair is orthogonal to within `tolerance` relative to
/// their norms, or `max_sweeps` sweeps have run. Singular values are sorted
/// in descending order; left vectors of zero singular values are completed
/// to an orthonormal basis.
inline SvdResult jacobi_svd(const Matrix& a, double tolerance = 1e-12, std::size_t max_sweeps = 100) {
  if (a.rows() != a.cols()) throw DataError("jacobi_svd expects a square matrix");
  const std::size_t n = a.cols();
  Matrix work = a;
  Matrix v = Matrix::identity(n);
  SvdResult result;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = detail::column_dot(work, p, p);
        const double beta = detail::column_dot(work, q, q);
        const double gamma = detail::column_dot(work, p, q);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tolerance * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        detail::rotate_columns(work, p, q, c, s);
        detail::rotate_columns(v, p, q, c, s);
      }
    }
    result.sweeps = sweep + 1;
    if (!rotated) {
      result.converged = true;
      break;
    }
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(detail::column_dot(work, j, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  const double largest = n > 0 ? sigma[order[0]] : 0.0;
  const double cutoff = largest * static_cast<double>(n) * 1e-15;
  result.u = Matrix(n, n);
  result.v = Matrix(n, n);
  result.singular_values.resize(n);
  std::vector<char> filled(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    result.singular_values[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) result.v(i, k) = v(i, j);
    if (sigma[j] > cutoff && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) result.u(i, k) = work(i, j) / sigma[j];
      filled[k] = 1;
      ++result.rank;
    }
  }
  detail::complete_orthonormal_columns(result.u, filled);
  return result;
}

/// Haar-distributed random orthogonal matrix: Householder QR of a seeded
/// Gaussian matrix with the signs of R's diagonal folded into Q.
inline Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, n);
  for (double& x : a.data()) x = rng.normal();

  Matrix q = Matrix::identity(n);
  std::vector<double> diag_sign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> h(n - k);
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      h[i - k] = a(i, k);
      norm += a(i, k) * a(i, k);
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = -std::copysign(norm, h[0]);
    diag_sign[k] = alpha < 0 ? -1.0 : 1.0;
    h[0] -= alpha;
    double hn = 0.0;
    for (double x : h) hn += x * x;
    if (hn == 0.0) continue;
    // A <- (I - 2hh^T/h^Th) A on the trailing block; Q <- Q (I - 2hh^T/h^Th)
    for (std::size_t j = k; j < n; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < n; ++i) proj += h[i - k] * a(i, j);
      proj = 2.0 * proj / hn;
      for (std::size_t i = k; i < n; ++i) a(i, j) -= proj * h[i - k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (std::size_t j = k; j < n; ++j) proj += q(i, j) * h[j - k];
      proj = 2.0 * proj / hn;
      for (std::size_t j = k; j < n; ++j) q(i, j) -= proj * h[j - k];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (diag_sign[j] < 0) {
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
    }
  }
  return q;
}

}  // namespace driftbench
