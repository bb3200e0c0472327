#include "ricomp/mest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ricomp/errors.hpp"

namespace ricomp {

void HuberConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("Huber tuning constant must be > 0");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");
  if (freeze_scale_after && *freeze_scale_after < 1) {
    throw DomainError("freeze_scale_after must be >= 1");
  }
}

void Dataset::validate() const {
  if (y.size() != x.rows()) {
    throw DataError("dataset: " + std::to_string(y.size()) + " responses for " +
                    std::to_string(x.rows()) + " rows");
  }
  if (x.rows() <= x.cols()) {
    throw DataError("dataset: need more observations (" + std::to_string(x.rows()) +
                    ") than columns (" + std::to_string(x.cols()) + ")");
  }
  if (!names.empty() && names.size() != x.cols()) {
    throw DataError("dataset: column name count does not match the design");
  }
  for (double v : x.data())
    if (!std::isfinite(v)) throw DataError("dataset: non-finite design entry");
  for (double v : y)
    if (!std::isfinite(v)) throw DataError("dataset: non-finite response");
}

Dataset make_dataset(const Matrix& predictors, Vector y, std::vector<std::string> names,
                     bool with_intercept) {
  if (names.empty()) {
    for (std::size_t c = 0; c < predictors.cols(); ++c) names.push_back("x" + std::to_string(c + 1));
  }
  Dataset d;
  d.intercept = with_intercept;
  if (!with_intercept) {
    d.x = predictors;
    d.names = std::move(names);
  } else {
    d.x = Matrix(predictors.rows(), predictors.cols() + 1);
    for (std::size_t r = 0; r < predictors.rows(); ++r) {
      d.x(r, 0) = 1.0;
      for (std::size_t c = 0; c < predictors.cols(); ++c) d.x(r, c + 1) = predictors(r, c);
    }
    d.names.reserve(names.size() + 1);
    d.names.emplace_back("(Intercept)");
    for (auto& n : names) d.names.push_back(std::move(n));
  }
  d.y = std::move(y);
  d.validate();
  return d;
}

double huber_rho(double u, double k) noexcept {
  const double a = std::abs(u);
  return a <= k ? u * u : 2.0 * k * a - k * k;
}

double huber_psi(double u, double k) noexcept {
  if (std::abs(u) <= k) return 2.0 * u;
  return u > 0.0 ? 2.0 * k : -2.0 * k;
}

double huber_psi_prime(double u, double k) noexcept { return std::abs(u) <= k ? 2.0 : 0.0; }

double huber_weight(double u, double k) noexcept {
  const double a = std::abs(u);
  return a <= k ? 1.0 : k / a;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DataError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

double mad_scale(std::span<const double> residuals) {
  if (residuals.size() < 2) throw DegenerateScaleError("mad_scale: need at least two residuals");
  const double med = median({residuals.begin(), residuals.end()});
  std::vector<double> dev(residuals.size());
  std::transform(residuals.begin(), residuals.end(), dev.begin(),
                 [med](double r) { return std::abs(r - med); });
  const double mad = median(std::move(dev));
  if (!(mad > 0.0)) {
    throw DegenerateScaleError("mad_scale: median absolute deviation is zero");
  }
  return mad / 0.6745;
}

Vector predict(const Matrix& x, std::span<const double> beta) { return x * beta; }

namespace {

Vector residuals_of(const Dataset& data, std::span<const double> beta) {
  Vector r = data.x * beta;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = data.y[i] - r[i];
  return r;
}

Vector weighted_solve(const Matrix& x, std::span<const double> y, std::span<const double> w) {
  Matrix xw = x;
  Vector yw(y.begin(), y.end());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double s = std::sqrt(w[i]);
    for (double& v : xw.row(i)) v *= s;
    yw[i] *= s;
  }
  return solve_least_squares(xw, yw);
}

bool is_exact_fit(std::span<const double> r, std::span<const double> y) {
  double ymax = 1.0;
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  for (double v : r)
    if (std::abs(v) > 1e-12 * ymax) return false;
  return true;
}

RobustFit exact_fit(const Dataset& data, Vector beta, int iterations, double k) {
  RobustFit fit;
  fit.k = k;
  fit.beta = std::move(beta);
  fit.residuals = residuals_of(data, fit.beta);
  double ymax = 1.0;
  for (double v : data.y) ymax = std::max(ymax, std::abs(v));
  fit.sigma = 1e-12 * ymax;
  fit.weights.assign(data.n(), 1.0);
  fit.iterations = iterations;
  fit.converged = true;
  // The sandwich degenerates when every score is zero; use the classical form.
  fit.cov_beta = (fit.sigma * fit.sigma) * invert_spd(gram(data.x));
  return fit;
}

}  // namespace

RobustFit irls_fit(const Dataset& data, const HuberConfig& config, const IrlsObserver& observer) {
  config.validate();
  data.validate();
  const double k = config.k;

  Vector beta = solve_least_squares(data.x, data.y);
  Vector r = residuals_of(data, beta);
  if (is_exact_fit(r, data.y)) return exact_fit(data, std::move(beta), 0, k);

  RobustFit fit;
  fit.k = k;
  double sigma = 0.0;
  Vector w(data.n());
  int it = 0;
  for (it = 1; it <= config.max_iter; ++it) {
    if (!config.freeze_scale_after || it <= *config.freeze_scale_after) sigma = mad_scale(r);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = huber_weight(r[i] / sigma, k);

    Vector next = weighted_solve(data.x, data.y, w);
    double change = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      change = std::max(change, std::abs(next[j] - beta[j]) / std::max(1.0, std::abs(beta[j])));
    }
    beta = std::move(next);
    r = residuals_of(data, beta);
    if (observer) observer(IrlsStep{it, sigma, &beta, change});
    if (is_exact_fit(r, data.y)) return exact_fit(data, std::move(beta), it, k);
    if (change < config.tol) {
      fit.converged = true;
      break;
    }
  }

  fit.iterations = std::min(it, config.max_iter);
  fit.beta = std::move(beta);
  fit.residuals = std::move(r);
  if (!config.freeze_scale_after) sigma = mad_scale(fit.residuals);
  fit.sigma = sigma;
  fit.weights.resize(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    fit.weights[i] = huber_weight(fit.residuals[i] / sigma, k);
  }
  fit.cov_beta = covariance_of_beta(fit, data.x);
  return fit;
}

Matrix covariance_of_beta(const RobustFit& fit, const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (fit.residuals.size() != n) throw DataError("covariance_of_beta: residual length mismatch");
  if (n <= p) throw DataError("covariance_of_beta: need n > p");
  if (!(fit.sigma > 0.0)) throw DegenerateScaleError("covariance_of_beta: scale must be > 0");

  double sum_psi2 = 0.0;
  double sum_dpsi = 0.0;
  for (double r : fit.residuals) {
    const double u = r / fit.sigma;
    const double psi = huber_psi(u, fit.k);
    sum_psi2 += psi * psi;
    sum_dpsi += huber_psi_prime(u, fit.k);
  }
  if (sum_dpsi == 0.0) {
    throw NumericalError("covariance_of_beta: every standardized residual lies in the tails");
  }
  const double nd = static_cast<double>(n);
  const double mean_dpsi = sum_dpsi / nd;
  const double factor =
      fit.sigma * fit.sigma * (sum_psi2 / (nd - static_cast<double>(p))) / (mean_dpsi * mean_dpsi);
  return factor * invert_spd(gram(x));
}

}  // namespace ricomp
