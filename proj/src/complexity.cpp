#include "ricomp/complexity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ricomp/errors.hpp"
#include "ricomp/mest.hpp"
#include "ricomp/specfun.hpp"

namespace ricomp {

const char* to_string(GammaConvention c) noexcept {
  return c == GammaConvention::kRegularized ? "regularized" : "unregularized";
}

double gamma_lower(double a, double x, GammaConvention c) {
  return c == GammaConvention::kRegularized ? specfun::regularized_lower_gamma(a, x)
                                            : specfun::lower_incomplete_gamma(a, x);
}

double gamma_upper(double a, double x, GammaConvention c) {
  return c == GammaConvention::kRegularized ? specfun::regularized_upper_gamma(a, x)
                                            : specfun::upper_incomplete_gamma(a, x);
}

CovarianceInput::CovarianceInput(Matrix sigma) : sigma_(std::move(sigma)) {
  log_det_ = ricomp::log_det(sigma_);  // validates SPD
  diag_ = sigma_.diag();
}

double c0(const CovarianceInput& input) {
  double s = 0.0;
  for (double v : input.diag()) s += std::log(v);
  return 0.5 * s - 0.5 * input.log_det();
}

double c1(const Matrix& sigma) {
  const double ld = log_det(sigma);
  const double p = static_cast<double>(sigma.rows());
  return 0.5 * p * std::log(trace(sigma) / p) - 0.5 * ld;
}

double rho_entropy_bracket(double k, GammaConvention c) {
  if (!(k > 0.0)) throw DomainError("tuning constant must be > 0");
  const double h = 0.5 * k * k;
  return gamma_lower(1.5, h, c) - h * gamma_upper(0.5, h, c);
}

double expected_rho_univariate(double sigma, double k, GammaConvention c) {
  if (!(sigma > 0.0)) throw DomainError("expected_rho_univariate: sigma must be > 0");
  return rho_entropy_bracket(k, c) / (sigma * std::sqrt(std::numbers::pi));
}

namespace {

double c0_rho_h_impl(double inv_diag_sum, double log_det, std::size_t p, double k,
                     GammaConvention c) {
  if (!(k > 0.0)) throw DomainError("c0_rho_h: tuning constant must be > 0");
  const double h = 0.5 * k * k;
  const double g32 = gamma_lower(1.5, h, c);
  const double G12 = gamma_upper(0.5, h, c);
  const double marginal = inv_diag_sum / std::sqrt(std::numbers::pi) * (g32 - h * G12);
  // 1 / (|Sigma|^{1/2} (2 pi)^{p/2}) in log space; |Sigma| can be tiny.
  const double log_norm =
      -0.5 * log_det - 0.5 * static_cast<double>(p) * std::log(2.0 * std::numbers::pi);
  const double joint_bracket = std::numbers::sqrt2 * g32 - k * k / std::numbers::sqrt2 * G12;
  return marginal - std::exp(log_norm) * joint_bracket;
}

}  // namespace

double c0_rho_h(const CovarianceInput& input, double k, GammaConvention c) {
  double inv_sum = 0.0;
  for (double v : input.diag()) inv_sum += 1.0 / v;
  return c0_rho_h_impl(inv_sum, input.log_det(), input.dim(), k, c);
}

double c0_rho_h_identity(std::size_t p, double k, GammaConvention c) {
  if (p == 0) throw DomainError("c0_rho_h_identity: dimension must be >= 1");
  return c0_rho_h_impl(static_cast<double>(p), 0.0, p, k, c);
}

double literal_expected_rho(double k) {
  if (!(k > 0.0)) throw DomainError("literal_expected_rho: tuning constant must be > 0");
  auto integrand = [k](double u) { return huber_rho(u, k) * specfun::normal_pdf(u); };
  using boost::math::quadrature::gauss_kronrod;
  const double inner = gauss_kronrod<double, 61>::integrate(integrand, -k, k, 15, 1e-14);
  const double tail = gauss_kronrod<double, 61>::integrate(
      integrand, k, std::numeric_limits<double>::infinity(), 15, 1e-14);
  return inner + 2.0 * tail;
}

}  // namespace ricomp
