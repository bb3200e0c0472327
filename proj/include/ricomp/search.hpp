#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ricomp/complexity.hpp"
#include "ricomp/criteria.hpp"
#include "ricomp/mest.hpp"

namespace ricomp {

// ---------------------------------------------------------------------------
// Tuning-constant search
// ---------------------------------------------------------------------------

struct TuningOptions {
  double k_min = 0.05;
  double k_max = 3.0;
  double grid_step = 1e-4;
  /// Bisection stops once the bracket is narrower than this.
  double bisection_tol = 1e-9;
  /// |objective| below this counts as a root when no sign change is found.
  double zero_tol = 1e-6;
  GammaConvention convention = GammaConvention::kUnregularized;
};

enum class TuningStatus {
  kRoot,            ///< sign change found and refined by bisection
  kGridMinimum,     ///< no sign change but the grid minimum is below zero_tol
  kDegenerate,      ///< objective identically zero (p = 1)
  kNoSignChange,    ///< no root and no sufficiently small minimum
};

const char* to_string(TuningStatus s) noexcept;

struct TuningResult {
  TuningStatus status = TuningStatus::kNoSignChange;
  std::size_t p = 0;
  double k = 0.0;          ///< best k found (NaN when degenerate)
  double objective = 0.0;  ///< c0_rho_h(I_p, k) at the returned k
  std::size_t grid_points = 0;
  std::string message;
};

/// Finds k minimizing |c0_rho_h(I_p, k)| on a grid over [k_min, k_max], refining
/// by bisection on a sign change. For p = 1 the objective vanishes identically
/// and the result is reported as kDegenerate.
TuningResult tune_k_c0(std::size_t p, const TuningOptions& options = {});

// ---------------------------------------------------------------------------
// Exhaustive subset selection
// ---------------------------------------------------------------------------

/// A candidate model: bit j set means candidate predictor j is included.
struct SubsetModel {
  std::uint32_t mask = 0;
  bool intercept = true;

  int size() const noexcept;
  /// Zero-based candidate indices in ascending order.
  std::vector<std::size_t> members() const;
  /// Human-readable "{x2,x5}" using the given candidate names.
  std::string label(std::span<const std::string> candidate_names) const;

  bool operator==(const SubsetModel&) const = default;
};

inline constexpr std::size_t kMaxCandidates = 20;

/// All 2^p - 1 non-empty subsets in ascending mask order. Throws for p > 20.
std::vector<SubsetModel> enumerate_subsets(std::size_t p);

/// Design-column indices (including the intercept column when present) of a subset.
std::vector<std::size_t> subset_columns(const Dataset& data, const SubsetModel& model);
Dataset subset_dataset(const Dataset& data, const SubsetModel& model);

/// One fitted subset scored under several criteria.
struct SubsetEvaluation {
  SubsetModel model;
  std::optional<RobustFit> fit;
  std::vector<CriterionScore> scores;  ///< parallel to the requested criteria
  std::string error;                   ///< non-empty when fitting or scoring failed
  bool ok() const noexcept { return error.empty(); }
};

struct EvaluationOptions {
  GammaConvention convention = GammaConvention::kUnregularized;
  bool trace_times_p = false;
  unsigned threads = 1;
};

/// Fits every model once and scores it under each criterion. Results are in
/// the order of `models` regardless of thread count.
std::vector<SubsetEvaluation> evaluate_subsets(const Dataset& data,
                                               std::span<const SubsetModel> models,
                                               std::span<const CriterionId> criteria,
                                               const HuberConfig& config,
                                               const EvaluationOptions& options = {});

struct RankedModel {
  SubsetModel model;
  CriterionScore score;
  RobustFit fit;
};

struct SelectionResult {
  CriterionId criterion = CriterionId::kRicompC0rh;
  std::vector<RankedModel> ranked;  ///< ascending by value
  std::vector<std::pair<SubsetModel, std::string>> failures;

  const RankedModel& best() const { return ranked.front(); }
};

/// Strict ordering used for ranking: value, then subset size, then mask.
bool ranks_before(const SubsetModel& a, double va, const SubsetModel& b, double vb) noexcept;

/// Ranks already-evaluated subsets under criterion index `which` of their scores.
SelectionResult rank_evaluations(std::span<const SubsetEvaluation> evals, CriterionId criterion,
                                 std::size_t which);

/// Index of the best successful evaluation under criterion index `which`, if any.
std::optional<std::size_t> best_index(std::span<const SubsetEvaluation> evals, std::size_t which);

/// Fits and scores all non-empty subsets of the candidate predictors.
/// Subsets whose fit fails are listed in `failures`; throws NumericalError only
/// when every subset fails.
SelectionResult select_best(const Dataset& data, CriterionId criterion, const HuberConfig& config,
                            const EvaluationOptions& options = {});

/// Same, restricted to the given candidate models.
SelectionResult select_best(const Dataset& data, CriterionId criterion, const HuberConfig& config,
                            std::span<const SubsetModel> models,
                            const EvaluationOptions& options = {});

}  // namespace ricomp
