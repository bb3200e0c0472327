#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ricomp/errors.hpp"
#include "ricomp/linalg.hpp"

using ricomp::Matrix;
using ricomp::Vector;

namespace {

// Exact small-matrix inverse by Gauss-Jordan with partial pivoting.
Matrix gauss_jordan_inverse(Matrix a) {
  const std::size_t n = a.rows();
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a(r, c)) > std::fabs(a(piv, c))) piv = r;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    const double d = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace

TEST_CASE("least squares: identity and mean") {
  const Vector y = {3.0, -1.0, 2.5};
  const Vector b = ricomp::solve_least_squares(Matrix::identity(3), y);
  for (std::size_t i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(y[i]));
  const Vector m = ricomp::solve_least_squares(Matrix{{1.0}, {1.0}, {1.0}}, Vector{1, 2, 3});
  CHECK(m[0] == doctest::Approx(2.0));
}

TEST_CASE("least squares against normal equations") {
  std::mt19937_64 rng(7);
  const Matrix x = testing::random_matrix(20, 3, rng);
  Vector y(20);
  std::normal_distribution<double> z;
  for (double& v : y) v = z(rng);
  const Vector b = ricomp::solve_least_squares(x, y);
  const Vector oracle = gauss_jordan_inverse(ricomp::gram(x)) * (x.transpose() * y);
  for (std::size_t j = 0; j < 3; ++j) CHECK(b[j] == doctest::Approx(oracle[j]).epsilon(1e-10));

  // Residual orthogonal to the column space.
  const Vector fit = x * b;
  for (std::size_t j = 0; j < 3; ++j) {
    double dot = 0;
    for (std::size_t i = 0; i < 20; ++i) dot += x(i, j) * (y[i] - fit[i]);
    CHECK(std::fabs(dot) < 1e-8);
  }
}

TEST_CASE("least squares recovers exact coefficients") {
  std::mt19937_64 rng(11);
  const Matrix x = testing::random_matrix(40, 5, rng);
  const Vector truth = {1.5, -2.0, 0.0, 3.25, 0.5};
  const Vector b = ricomp::solve_least_squares(x, x * truth);
  for (std::size_t j = 0; j < 5; ++j) CHECK(std::fabs(b[j] - truth[j]) < 1e-8);
}

TEST_CASE("least squares rejects rank deficiency") {
  Matrix x(6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = 2.0 * static_cast<double>(i);
  }
  CHECK_THROWS_AS(ricomp::solve_least_squares(x, Vector(6, 1.0)), ricomp::RankDeficientError);
}

TEST_CASE("invert_spd") {
  CHECK(ricomp::max_abs_diff(ricomp::invert_spd(Matrix::identity(3)), Matrix::identity(3)) < 1e-15);
  const Matrix d = ricomp::invert_spd(Matrix{{2, 0}, {0, 4}});
  CHECK(d(0, 0) == doctest::Approx(0.5));
  CHECK(d(1, 1) == doctest::Approx(0.25));
  CHECK(d(0, 1) == 0.0);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = testing::random_spd(4, rng);
    const Matrix inv = ricomp::invert_spd(a);
    CHECK(ricomp::max_abs_diff(a * inv, Matrix::identity(4)) < 1e-8);
    CHECK(ricomp::max_abs_diff(ricomp::invert_spd(inv), a) < 1e-6);
    CHECK(ricomp::log_det(a) == doctest::Approx(-ricomp::log_det(inv)).epsilon(1e-10));
  }
}

TEST_CASE("SPD checks") {
  CHECK_THROWS_AS(ricomp::cholesky(Matrix{{1, 2}, {2, 1}}), ricomp::NotPositiveDefiniteError);
  CHECK_THROWS_AS(ricomp::invert_spd(Matrix{{1, 0.5}, {0.4, 1}}), ricomp::NotPositiveDefiniteError);
  CHECK_THROWS_AS(ricomp::log_det(Matrix{{0, 0}, {0, 1}}), ricomp::NotPositiveDefiniteError);
}

TEST_CASE("log_det and trace") {
  CHECK(ricomp::log_det(Matrix::identity(4)) == doctest::Approx(0.0));
  CHECK(ricomp::log_det(Matrix{{std::exp(1.0), 0}, {0, std::exp(2.0)}}) == doctest::Approx(3.0));
  CHECK(ricomp::log_det(Matrix{{1, 0.5}, {0.5, 1}}) == doctest::Approx(std::log(0.75)).epsilon(1e-14));
  CHECK(ricomp::trace(Matrix::identity(3)) == 3.0);
  CHECK(ricomp::trace(Matrix{{1, 9, 9}, {9, 2, 9}, {9, 9, 3}}) == 6.0);
  CHECK_THROWS(ricomp::trace(Matrix(2, 3)));
}

TEST_CASE("matrix plumbing") {
  const Matrix a{{1, 2, 3}, {4, 5, 6}};
  CHECK(a.transpose().rows() == 3);
  CHECK(a.transpose()(2, 1) == 6.0);
  const std::size_t cols[] = {2, 0};
  const Matrix s = a.select_columns(cols);
  CHECK(s(1, 0) == 6.0);
  CHECK(s(1, 1) == 4.0);
  const Matrix b = ricomp::block_diagonal(Matrix{{1}}, Matrix{{2, 0}, {0, 3}});
  CHECK(b.rows() == 3);
  CHECK(b(0, 1) == 0.0);
  CHECK(b(2, 2) == 3.0);
  CHECK_THROWS_AS(Matrix(2, 2, Vector{1, 2, 3}), ricomp::DataError);
}
