#pragma once

namespace ricomp::specfun {

/// Lower incomplete gamma  gamma(a, x) = int_0^x t^{a-1} e^{-t} dt.
/// Requires a > 0 and x >= 0 (x = +inf yields Gamma(a)); throws DomainError otherwise.
double lower_incomplete_gamma(double a, double x);

/// Upper incomplete gamma  Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt.
double upper_incomplete_gamma(double a, double x);

/// Regularized forms P(a, x) = gamma(a, x) / Gamma(a) and Q(a, x) = 1 - P(a, x).
double regularized_lower_gamma(double a, double x);
double regularized_upper_gamma(double a, double x);

double erf(double x);

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse of the standard normal CDF, p in (0, 1).
double normal_quantile(double p);

}  // namespace ricomp::specfun
