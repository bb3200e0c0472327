#include "ricomp/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "ricomp/errors.hpp"

namespace ricomp::specfun {
namespace {

constexpr int kMaxTerms = 1000;
constexpr double kEps = 1e-17;
constexpr double kTiny = 1e-300;

void check_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("incomplete gamma: shape must be finite and > 0, got " +
                      std::to_string(a));
  }
  if (!(x >= 0.0)) {
    throw DomainError("incomplete gamma: argument must be >= 0, got " + std::to_string(x));
  }
}

// sum_{n>=0} x^n / (a (a+1) ... (a+n)); gamma(a, x) = x^a e^{-x} * series.
double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) return sum;
  }
  throw NumericalError("incomplete gamma: series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Gamma(a, x) e^{x} x^{-a}.
double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete gamma: continued fraction did not converge");
}

// log of x^a e^{-x}
double log_prefactor(double a, double x) { return a * std::log(x) - x; }

bool use_series(double a, double x) { return x < a + 1.0; }

}  // namespace

double lower_incomplete_gamma(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(a);
  if (use_series(a, x)) return std::exp(log_prefactor(a, x)) * lower_series(a, x);
  return std::tgamma(a) - std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return std::tgamma(a);
  if (std::isinf(x)) return 0.0;
  if (use_series(a, x)) return std::tgamma(a) - std::exp(log_prefactor(a, x)) * lower_series(a, x);
  return std::exp(log_prefactor(a, x)) * upper_fraction(a, x);
}

double regularized_lower_gamma(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_pre = log_prefactor(a, x) - std::lgamma(a);
  if (use_series(a, x)) return std::exp(log_pre) * lower_series(a, x);
  return 1.0 - std::exp(log_pre) * upper_fraction(a, x);
}

double regularized_upper_gamma(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_pre = log_prefactor(a, x) - std::lgamma(a);
  if (use_series(a, x)) return 1.0 - std::exp(log_pre) * lower_series(a, x);
  return std::exp(log_pre) * upper_fraction(a, x);
}

double erf(double x) { return std::erf(x); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: probability must lie in (0, 1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace ricomp::specfun
