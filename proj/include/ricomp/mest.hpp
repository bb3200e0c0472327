#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ricomp/linalg.hpp"

namespace ricomp {

/// Tuning constant that zeroes the rho-based covariance complexity of an
/// identity matrix (regularized incomplete-gamma convention).
inline constexpr double kKc0 = 0.8875916;
/// Classical 95%-efficiency Huber constant.
inline constexpr double kHuberClassic = 1.345;

struct HuberConfig {
  double k = kKc0;
  int max_iter = 50;
  double tol = 1e-6;
  /// When set, the MAD scale is recomputed only for the first N iterations and
  /// then held fixed. Unset reproduces the default behavior (update every step).
  std::optional<int> freeze_scale_after;

  void validate() const;
};

/// Regression data. When `intercept` is true the first column of `x` is all
/// ones and `names[0]` labels it.
struct Dataset {
  Matrix x;
  Vector y;
  std::vector<std::string> names;
  bool intercept = true;

  std::size_t n() const noexcept { return x.rows(); }
  std::size_t p() const noexcept { return x.cols(); }
  /// Number of candidate predictors, i.e. columns excluding the intercept.
  std::size_t candidates() const noexcept { return intercept ? p() - 1 : p(); }

  void validate() const;
};

/// Builds a Dataset, prepending a ones column when `with_intercept`.
Dataset make_dataset(const Matrix& predictors, Vector y, std::vector<std::string> names,
                     bool with_intercept = true);

struct RobustFit {
  Vector beta;
  double sigma = 0.0;
  Vector residuals;
  Vector weights;
  Matrix cov_beta;
  int iterations = 0;
  bool converged = false;
  double k = kKc0;
};

/// Huber objective in the u^2 / (2k|u| - k^2) form.
double huber_rho(double u, double k) noexcept;
/// d rho / du: 2u inside [-k, k], 2k sign(u) outside.
double huber_psi(double u, double k) noexcept;
/// d psi / du; the boundary |u| = k takes the inside value 2.
double huber_psi_prime(double u, double k) noexcept;
/// IRLS weight psi(u) / (2u), defined as 1 at u = 0.
double huber_weight(double u, double k) noexcept;

/// median(|r - median(r)|) / 0.6745. Throws DegenerateScaleError on zero spread.
double mad_scale(std::span<const double> residuals);

double median(std::vector<double> values);

/// One IRLS step as seen by an observer: the coefficients after the weighted
/// solve and the scale used to form the weights.
struct IrlsStep {
  int iteration = 0;
  double sigma = 0.0;
  const Vector* beta = nullptr;
  double max_change = 0.0;
};

using IrlsObserver = std::function<void(const IrlsStep&)>;

/// Huber M-estimate by iteratively reweighted least squares started from OLS.
///
/// Each iteration recomputes the MAD scale of the current residuals, forms
/// weights huber_weight(r_i / sigma) and solves the weighted least-squares
/// problem. Converges when max_j |delta beta_j| < tol * max(1, |beta_j|).
/// Non-convergence is reported through `converged`, not an exception.
///
/// An exact fit (all residuals zero after a step) returns immediately with unit
/// weights; the scale is then floored at 1e-12 * max(1, max |y|) so that it stays
/// positive.
RobustFit irls_fit(const Dataset& data, const HuberConfig& config,
                   const IrlsObserver& observer = {});

/// Sandwich covariance
///   sigma^2 * [(1/(n-p)) sum psi(u_i)^2] / [(1/n) sum psi'(u_i)]^2 * (X^T X)^{-1},
/// u_i = r_i / sigma. Throws NumericalError when sum psi' = 0.
Matrix covariance_of_beta(const RobustFit& fit, const Matrix& x);

/// Fitted values X * beta.
Vector predict(const Matrix& x, std::span<const double> beta);

}  // namespace ricomp
