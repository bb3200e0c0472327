#pragma once

#include <cmath>
#include <random>

#include "ricomp/linalg.hpp"
#include "ricomp/mest.hpp"

namespace testing {

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::fabs(a - b) <= std::max(rel * std::max(std::fabs(a), std::fabs(b)), abs_floor);
}

inline ricomp::Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  ricomp::Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = z(rng);
  return m;
}

/// B^T B + I, comfortably positive definite.
inline ricomp::Matrix random_spd(std::size_t p, std::mt19937_64& rng) {
  const auto b = random_matrix(p, p, rng);
  return ricomp::gram(b) + ricomp::Matrix::identity(p);
}

/// Random orthogonal matrix by Gram-Schmidt on a Gaussian matrix.
inline ricomp::Matrix random_orthogonal(std::size_t p, std::mt19937_64& rng) {
  auto q = random_matrix(p, p, rng);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t r = 0; r < p; ++r) dot += q(r, i) * q(r, j);
      for (std::size_t r = 0; r < p; ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0;
    for (std::size_t r = 0; r < p; ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < p; ++r) q(r, j) /= norm;
  }
  return q;
}

/// Normal errors around y = 1 + x1 + ... + xp with Gaussian predictors.
inline ricomp::Dataset random_dataset(std::size_t n, std::size_t p, std::mt19937_64& rng,
                                      double noise = 1.0) {
  std::normal_distribution<double> z;
  const auto x = random_matrix(n, p, rng);
  ricomp::Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 1.0 + noise * z(rng);
    for (std::size_t j = 0; j < p; ++j) y[i] += x(i, j);
  }
  return ricomp::make_dataset(x, y, {}, true);
}

}  // namespace testing
