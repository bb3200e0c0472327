#include "ricomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ricomp/errors.hpp"

namespace ricomp {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DataError("Matrix: " + std::to_string(data_.size()) + " entries for a " +
                    std::to_string(rows_) + "x" + std::to_string(cols_) + " shape");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DataError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vector Matrix::diag() const {
  Vector out(std::min(rows_, cols_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(i, i);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices[j]);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DataError("matrix product: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DataError("matrix-vector product: dimensions differ");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

namespace {

template <typename Op>
Matrix elementwise(const Matrix& a, const Matrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError("elementwise matrix operation: shapes differ");
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = op(a(i, j), b(i, j));
  return out;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.square()) throw DataError(std::string(what) + ": matrix is not square");
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](double x, double y) { return x + y; });
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](double x, double y) { return x - y; });
}

Matrix gram(const Matrix& x) {
  const std::size_t p = x.cols();
  Matrix g(p, p);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) g(i, j) += row[i] * row[j];
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DataError("max_abs_diff: shapes differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

bool is_symmetric(const Matrix& m, double tol) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * std::max(1.0, std::abs(m(i, j)))) return false;
  return true;
}

Vector solve_least_squares(const Matrix& x, std::span<const double> y) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) throw DataError("solve_least_squares: response length differs from rows");
  if (n < p) {
    throw RankDeficientError("solve_least_squares: fewer observations than columns");
  }

  // Householder QR applied in place to [X | y].
  Matrix a = x;
  Vector b(y.begin(), y.end());
  Vector rdiag(p);
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm = std::hypot(norm, a(i, k));
    if (norm == 0.0) {
      rdiag[k] = 0.0;
      continue;
    }
    if (a(k, k) > 0.0) norm = -norm;
    for (std::size_t i = k; i < n; ++i) a(i, k) /= -norm;
    a(k, k) += 1.0;
    for (std::size_t j = k + 1; j < p; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += a(i, k) * a(i, j);
      s = -s / a(k, k);
      for (std::size_t i = k; i < n; ++i) a(i, j) += s * a(i, k);
    }
    double s = 0.0;
    for (std::size_t i = k; i < n; ++i) s += a(i, k) * b[i];
    s = -s / a(k, k);
    for (std::size_t i = k; i < n; ++i) b[i] += s * a(i, k);
    rdiag[k] = norm;
  }

  double largest = 0.0;
  for (double d : rdiag) largest = std::max(largest, std::abs(d));
  for (std::size_t k = 0; k < p; ++k) {
    if (!(std::abs(rdiag[k]) >= 1e-10 * largest) || largest == 0.0) {
      throw RankDeficientError("solve_least_squares: design is rank deficient at column " +
                               std::to_string(k));
    }
  }

  // Back substitution with R (diagonal stored in rdiag, strict upper part in a).
  Vector beta(p);
  for (std::size_t kk = p; kk-- > 0;) {
    double s = b[kk];
    for (std::size_t j = kk + 1; j < p; ++j) s -= a(kk, j) * beta[j];
    beta[kk] = s / rdiag[kk];
  }
  return beta;
}

Matrix cholesky(const Matrix& m) {
  require_square(m, "cholesky");
  if (!is_symmetric(m, 1e-10)) throw NotPositiveDefiniteError("cholesky: matrix is not symmetric");
  const std::size_t p = m.rows();
  Matrix l(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) {
      throw NotPositiveDefiniteError("cholesky: non-positive pivot at " + std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Matrix invert_spd(const Matrix& m) {
  const Matrix l = cholesky(m);
  const std::size_t p = m.rows();
  // L^{-1} by forward substitution, then M^{-1} = L^{-T} L^{-1}.
  Matrix linv(p, p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t i = c; i < p; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t k = c; k < i; ++k) s -= l(i, k) * linv(k, c);
      linv(i, c) = s / l(i, i);
    }
  }
  Matrix inv(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < p; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return inv;
}

double log_det(const Matrix& m) {
  const Matrix l = cholesky(m);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += 2.0 * std::log(l(i, i));
  return s;
}

double trace(const Matrix& m) {
  require_square(m, "trace");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

}  // namespace ricomp
