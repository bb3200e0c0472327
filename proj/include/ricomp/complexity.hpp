#pragma once

#include "ricomp/linalg.hpp"

namespace ricomp {

/// Which incomplete-gamma normalization feeds the closed-form expectations.
///
/// kUnregularized evaluates gamma(a, x) and Gamma(a, x) as plain integrals.
/// kRegularized substitutes P(a, x) and Q(a, x); under it the identity-matrix
/// complexity vanishes at k = 0.8875916 and equals 0.632784 at k = 1.345, p = 5.
enum class GammaConvention { kUnregularized, kRegularized };

const char* to_string(GammaConvention c) noexcept;

/// Lower/upper incomplete gamma under the chosen convention.
double gamma_lower(double a, double x, GammaConvention c);
double gamma_upper(double a, double x, GammaConvention c);

/// A covariance matrix together with its diagonal (the variances sigma_jj).
class CovarianceInput {
 public:
  /// Throws NotPositiveDefiniteError unless `sigma` is symmetric positive definite.
  explicit CovarianceInput(Matrix sigma);

  const Matrix& sigma() const noexcept { return sigma_; }
  const Vector& diag() const noexcept { return diag_; }
  std::size_t dim() const noexcept { return sigma_.rows(); }
  double log_det() const noexcept { return log_det_; }

 private:
  Matrix sigma_;
  Vector diag_;
  double log_det_ = 0.0;
};

/// Van Emden covariance complexity: (1/2) sum log sigma_jj - (1/2) log |Sigma|.
double c0(const CovarianceInput& input);

/// Maximal entropic complexity: (p/2) log(tr(Sigma)/p) - (1/2) log |Sigma|.
double c1(const Matrix& sigma);

/// Closed-form expectation of the Huber objective under a normal scale model:
///   (1/(sigma sqrt(pi))) [gamma(3/2, k^2/2) - (k^2/2) Gamma(1/2, k^2/2)].
double expected_rho_univariate(double sigma, double k,
                               GammaConvention c = GammaConvention::kUnregularized);

/// The bracket gamma(3/2, k^2/2) - (k^2/2) Gamma(1/2, k^2/2) shared by both terms
/// of the rho-based complexity.
double rho_entropy_bracket(double k, GammaConvention c = GammaConvention::kUnregularized);

/// Rho-based covariance complexity:
///   sum_j (1/(sigma_jj sqrt(pi))) [gamma(3/2,h) - h Gamma(1/2,h)]
///   - (1/(|Sigma|^{1/2} (2 pi)^{p/2})) [sqrt(2) gamma(3/2,h) - (k^2/sqrt(2)) Gamma(1/2,h)],
/// with h = k^2/2 and sigma_jj the diagonal of Sigma.
double c0_rho_h(const CovarianceInput& input, double k,
                GammaConvention c = GammaConvention::kUnregularized);

/// Same quantity at Sigma = I_p (|Sigma| = 1, sigma_jj = 1).
double c0_rho_h_identity(std::size_t p, double k,
                         GammaConvention c = GammaConvention::kUnregularized);

/// Adaptive quadrature of int rho_H(u) phi(u) du for standard normal phi,
/// reported next to the closed form as a diagnostic.
double literal_expected_rho(double k);

}  // namespace ricomp
