#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ricomp {

using Vector = std::vector<double>;

/// Dense row-major matrix. Sized for the handful of predictors a regression
/// subset carries; no blocking or sparse paths.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;
  Vector diag() const;

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  /// Columns listed in `indices`, in that order.
  Matrix select_columns(std::span<const std::size_t> indices) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator*(double s, const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// X^T X
Matrix gram(const Matrix& x);

/// Block-diagonal assembly [a 0; 0 b].
Matrix block_diagonal(const Matrix& a, const Matrix& b);

double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_symmetric(const Matrix& m, double tol = 1e-10);

/// Least-squares solution of min ||y - X b||^2 via Householder QR.
/// Throws RankDeficientError when |R_jj| < 1e-10 * max_j |R_jj|.
Vector solve_least_squares(const Matrix& x, std::span<const double> y);

/// Lower Cholesky factor L with M = L L^T. Throws NotPositiveDefiniteError.
Matrix cholesky(const Matrix& m);

Matrix invert_spd(const Matrix& m);
double log_det(const Matrix& m);
double trace(const Matrix& m);

}  // namespace ricomp
