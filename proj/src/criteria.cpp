#include "ricomp/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "ricomp/errors.hpp"

namespace ricomp {

std::string_view to_string(CriterionId id) noexcept {
  switch (id) {
    case CriterionId::kAic: return "AIC";
    case CriterionId::kAicH: return "AIC_H";
    case CriterionId::kAicR: return "AIC_R";
    case CriterionId::kRicompIfim: return "RICOMP_IFIM";
    case CriterionId::kRicompM: return "RICOMP_M";
    case CriterionId::kRicompC0rh: return "RICOMP_C0RH";
  }
  return "?";
}

std::optional<CriterionId> parse_criterion(std::string_view name) {
  std::string norm;
  for (char ch : name) {
    norm.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  for (CriterionId id : kAllCriteria)
    if (to_string(id) == norm) return id;
  return std::nullopt;
}

CriterionContext::CriterionContext(const RobustFit& f, const Matrix& design)
    : fit(&f), x(&design), k(f.k) {
  if (design.rows() != f.residuals.size() || design.cols() != f.beta.size()) {
    throw DataError("criterion context: design does not match the fit");
  }
}

CriterionContext::CriterionContext(const RobustFit& f, const Matrix& design, GammaConvention c)
    : CriterionContext(f, design) {
  convention = c;
}

namespace {

// Incomplete-gamma terms at h = k^2/2 that recur through the expectation matrices.
struct GammaTerms {
  double k = 0.0;
  double h = 0.0;
  double lower_half = 0.0;        // gamma(1/2, h)
  double lower_3half = 0.0;       // gamma(3/2, h)
  double lower_5half = 0.0;       // gamma(5/2, h)
  double upper_half = 0.0;        // Gamma(1/2, h)
  double upper_one = 0.0;         // Gamma(1, h)
  double upper_3half = 0.0;       // Gamma(3/2, h)

  explicit GammaTerms(double k_, GammaConvention c) : k(k_), h(0.5 * k_ * k_) {
    lower_half = gamma_lower(0.5, h, c);
    lower_3half = gamma_lower(1.5, h, c);
    lower_5half = gamma_lower(2.5, h, c);
    upper_half = gamma_upper(0.5, h, c);
    upper_one = gamma_upper(1.0, h, c);
    upper_3half = gamma_upper(1.5, h, c);
  }

  // 2 gamma(3/2,h) + k^2 Gamma(1/2,h)
  double score_beta() const { return 2.0 * lower_3half + k * k * upper_half; }
  // 2 gamma(5/2,h) + k^2 Gamma(3/2,h)
  double score_scale() const { return 2.0 * lower_5half + k * k * upper_3half; }
  // 3 gamma(3/2,h) + sqrt(2) k Gamma(1,h)
  double hessian_scale() const { return 3.0 * lower_3half + std::numbers::sqrt2 * k * upper_one; }
};

const double kSqrtPi = std::sqrt(std::numbers::pi);

void require_fit(const CriterionContext& ctx) {
  if (ctx.fit == nullptr || ctx.x == nullptr) throw DataError("criterion context is empty");
  if (!(ctx.fit->sigma > 0.0)) throw DegenerateScaleError("criterion: scale must be > 0");
  if (!(ctx.k > 0.0)) throw DomainError("criterion: tuning constant must be > 0");
}

// Places `beta_block` (p x p) and `scale` into a (p+1) x (p+1) block-diagonal matrix.
Matrix assemble(const Matrix& beta_block, double scale) {
  return block_diagonal(beta_block, Matrix(1, 1, scale));
}

CriterionScore make_score(CriterionId id, double lack_of_fit, double penalty) {
  return CriterionScore{id, lack_of_fit + penalty, lack_of_fit, penalty};
}

double gaussian_normalizer(const CriterionContext& ctx) {
  const double n = static_cast<double>(ctx.n());
  const double sigma = ctx.fit->sigma;
  return n * std::log(2.0 * std::numbers::pi) + n * std::log(sigma * sigma);
}

double trace_scaling(const CriterionContext& ctx) {
  return ctx.trace_times_p ? static_cast<double>(ctx.p()) : 1.0;
}

}  // namespace

double robust_lack_of_fit(const CriterionContext& ctx) {
  require_fit(ctx);
  double s = 0.0;
  for (double r : ctx.fit->residuals) s += huber_rho(r / ctx.fit->sigma, ctx.k);
  return 2.0 * s;
}

Matrix fisher_F_matrix(const CriterionContext& ctx) {
  require_fit(ctx);
  const GammaTerms g(ctx.k, ctx.convention);
  const double s2 = ctx.fit->sigma * ctx.fit->sigma;
  const Matrix beta_block = (g.lower_half / (s2 * kSqrtPi)) * gram(*ctx.x);
  const double scale = 6.0 / (s2 * kSqrtPi) * g.lower_3half +
                       2.0 * std::numbers::sqrt2 * ctx.k / (s2 * kSqrtPi) * g.upper_one;
  return assemble(beta_block, scale);
}

Matrix fisher_R_matrix(const CriterionContext& ctx) {
  require_fit(ctx);
  const GammaTerms g(ctx.k, ctx.convention);
  const double s2 = ctx.fit->sigma * ctx.fit->sigma;
  const Matrix beta_block = (g.score_beta() / (s2 * kSqrtPi)) * gram(*ctx.x);
  const double scale = 2.0 / (s2 * kSqrtPi) * g.score_scale();
  return assemble(beta_block, scale);
}

Matrix hampel_A_matrix(const CriterionContext& ctx) {
  require_fit(ctx);
  const GammaTerms g(ctx.k, ctx.convention);
  const double s2 = ctx.fit->sigma * ctx.fit->sigma;
  const std::size_t p = ctx.p();

  const double ratio = g.score_beta() / g.lower_half;
  const double xtx_coef = g.score_beta() / (g.lower_half * g.lower_half) * s2 * kSqrtPi;
  const Matrix a11 = ratio * Matrix::identity(p) + xtx_coef * invert_spd(gram(*ctx.x));

  const double hs = g.hessian_scale();
  const double a22 = g.score_scale() / hs * (1.0 + s2 * kSqrtPi / (2.0 * hs));
  return assemble(a11, a22);
}

CriterionScore aic(const CriterionContext& ctx) {
  require_fit(ctx);
  const double s2 = ctx.fit->sigma * ctx.fit->sigma;
  double rss = 0.0;
  for (double r : ctx.fit->residuals) rss += r * r;
  const double lack = gaussian_normalizer(ctx) + rss / s2;
  return make_score(CriterionId::kAic, lack, 2.0 * static_cast<double>(ctx.p() + 1));
}

CriterionScore aic_h(const CriterionContext& ctx) {
  const double penalty = trace_scaling(ctx) * trace(hampel_A_matrix(ctx));
  return make_score(CriterionId::kAicH, robust_lack_of_fit(ctx), penalty);
}

CriterionScore aic_r(const CriterionContext& ctx) {
  const Matrix f_inv = invert_spd(fisher_F_matrix(ctx));
  const double penalty = trace_scaling(ctx) * trace(f_inv * fisher_R_matrix(ctx));
  return make_score(CriterionId::kAicR, robust_lack_of_fit(ctx), penalty);
}

CriterionScore ricomp_ifim(const CriterionContext& ctx) {
  require_fit(ctx);
  const double n = static_cast<double>(ctx.n());
  const double sigma = ctx.fit->sigma;
  const double lack = n * std::log(2.0 * std::numbers::pi) + 2.0 * n * std::log(sigma) +
                      robust_lack_of_fit(ctx);
  const Matrix ifim = assemble(ctx.fit->cov_beta, 2.0 * sigma * sigma);
  return make_score(CriterionId::kRicompIfim, lack, 2.0 * c1(ifim));
}

CriterionScore ricomp_m(const CriterionContext& ctx) {
  return make_score(CriterionId::kRicompM, robust_lack_of_fit(ctx), 2.0 * c1(ctx.fit->cov_beta));
}

CriterionScore ricomp_c0_rho_h(const CriterionContext& ctx) {
  require_fit(ctx);
  const double lack = gaussian_normalizer(ctx) + robust_lack_of_fit(ctx);
  const double penalty = 2.0 * c0_rho_h(CovarianceInput(ctx.fit->cov_beta), ctx.k, ctx.convention);
  return make_score(CriterionId::kRicompC0rh, lack, penalty);
}

CriterionScore score(CriterionId id, const CriterionContext& ctx) {
  switch (id) {
    case CriterionId::kAic: return aic(ctx);
    case CriterionId::kAicH: return aic_h(ctx);
    case CriterionId::kAicR: return aic_r(ctx);
    case CriterionId::kRicompIfim: return ricomp_ifim(ctx);
    case CriterionId::kRicompM: return ricomp_m(ctx);
    case CriterionId::kRicompC0rh: return ricomp_c0_rho_h(ctx);
  }
  throw DomainError("unknown criterion");
}

}  // namespace ricomp
