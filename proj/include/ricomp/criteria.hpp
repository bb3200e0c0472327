#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "ricomp/complexity.hpp"
#include "ricomp/linalg.hpp"
#include "ricomp/mest.hpp"

namespace ricomp {

enum class CriterionId { kAic, kAicH, kAicR, kRicompIfim, kRicompM, kRicompC0rh };

inline constexpr std::array<CriterionId, 6> kAllCriteria = {
    CriterionId::kAic,        CriterionId::kAicH,    CriterionId::kAicR,
    CriterionId::kRicompIfim, CriterionId::kRicompM, CriterionId::kRicompC0rh};

/// The five robust criteria compared in the contamination study.
inline constexpr std::array<CriterionId, 5> kRobustCriteria = {
    CriterionId::kRicompC0rh, CriterionId::kRicompIfim, CriterionId::kRicompM,
    CriterionId::kAicH, CriterionId::kAicR};

/// Canonical identifier, e.g. "RICOMP_C0RH".
std::string_view to_string(CriterionId id) noexcept;
/// Accepts the canonical identifier case-insensitively; also "-" for "_".
std::optional<CriterionId> parse_criterion(std::string_view name);

struct CriterionScore {
  CriterionId criterion = CriterionId::kAic;
  double value = 0.0;
  double lack_of_fit = 0.0;
  double penalty = 0.0;
};

/// Everything a criterion needs: a fit, its design, and the expectation settings.
struct CriterionContext {
  const RobustFit* fit = nullptr;
  const Matrix* x = nullptr;
  double k = kKc0;
  GammaConvention convention = GammaConvention::kUnregularized;
  /// Multiply the trace penalties of AIC_H and AIC_R by p (sensitivity switch).
  bool trace_times_p = false;

  CriterionContext(const RobustFit& f, const Matrix& design);
  CriterionContext(const RobustFit& f, const Matrix& design, GammaConvention c);

  std::size_t n() const noexcept { return x->rows(); }
  std::size_t p() const noexcept { return x->cols(); }
  /// Dimension of the coefficient-plus-scale information matrix, p + 1.
  std::size_t s() const noexcept { return p() + 1; }
};

/// 2 * sum rho_H(r_i / sigma, k).
double robust_lack_of_fit(const CriterionContext& ctx);

/// Expected Hessian of the Huber objective under the normal model, over (beta, sigma).
Matrix fisher_F_matrix(const CriterionContext& ctx);
/// Expected outer product of Huber scores, over (beta, sigma).
Matrix fisher_R_matrix(const CriterionContext& ctx);
/// Hampel penalty matrix: A11 (p x p), A22 (scalar), zero off-diagonal blocks.
Matrix hampel_A_matrix(const CriterionContext& ctx);

CriterionScore aic(const CriterionContext& ctx);
CriterionScore aic_h(const CriterionContext& ctx);
CriterionScore aic_r(const CriterionContext& ctx);
CriterionScore ricomp_ifim(const CriterionContext& ctx);
CriterionScore ricomp_m(const CriterionContext& ctx);
CriterionScore ricomp_c0_rho_h(const CriterionContext& ctx);

CriterionScore score(CriterionId id, const CriterionContext& ctx);

}  // namespace ricomp
