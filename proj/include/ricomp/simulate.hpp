#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ricomp/complexity.hpp"
#include "ricomp/criteria.hpp"
#include "ricomp/linalg.hpp"
#include "ricomp/mest.hpp"

namespace ricomp::sim {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, attempt); replications draw from
/// their own stream so results do not depend on execution order.
Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t attempt = 0);

/// Burr III with CDF F(x) = (1 + x^{-c})^{-kappa}, x > 0.
double burr3_cdf(double x, double c, double kappa);
/// Inverse CDF: (u^{-1/kappa} - 1)^{-1/c}.
double burr3_quantile(double u, double c, double kappa);
double burr3_sample(double c, double kappa, Rng& rng);

inline constexpr std::size_t kPredictors = 5;

/// n x 5 design (no intercept) with columns sqrt(1 - alpha^2) z_i + alpha z_6,
/// z_1..z_6 independent Burr III draws per row.
Matrix gen_predictors(std::size_t n, double alpha, double burr_c, double burr_kappa, Rng& rng);

/// Two-component error sample: n1 clean draws followed by n2 contaminant draws.
struct MixtureSpec {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double mu1 = 0.0;
  double sigma1 = 1.0;
  double mu2 = 5.0;
  double sigma2 = 10.0;

  std::size_t n() const noexcept { return n1 + n2; }
  void validate() const;
};

Vector gen_errors(const MixtureSpec& spec, Rng& rng);

/// y = X beta_true + sigma_model * errors.
Vector gen_response(const Matrix& x, std::span<const double> beta_true, double sigma_model,
                    std::span<const double> errors);

/// (1/n) sum |y_i - yhat_i|
double mae(std::span<const double> y, std::span<const double> yhat);
/// Average of per-replication MAE values.
double mae(std::span<const Vector> ys, std::span<const Vector> yhats);

struct Contaminant {
  double mu = 5.0;
  double sigma = 10.0;
};

inline constexpr Contaminant kShiftContaminant{5.0, 10.0};
inline constexpr Contaminant kScaleContaminant{0.0, 50.0};

struct SimScenario {
  std::size_t n = 30;
  double lc = 0.2;  ///< contamination fraction
  Contaminant contaminant = kShiftContaminant;
  double alpha = 0.9;
  double burr_c = 2.0;
  double burr_kappa = 20.0;
  Vector beta_true = {1.0, 1.0, 1.0, 0.0, 0.0};
  double sigma_model = 1.0;
  std::size_t r = 1000;
  std::uint64_t seed = 20201016;

  /// Contaminant count round(n * lc).
  std::size_t n2() const noexcept;
  std::size_t n1() const noexcept { return n - n2(); }
  MixtureSpec mixture() const;
  void validate() const;
};

/// Generated replication: predictors (no intercept), errors and response.
struct SimData {
  Matrix predictors;
  Vector errors;
  Vector y;
  Dataset dataset() const;  ///< with intercept and names x1..x5
};

SimData generate(const SimScenario& scenario, Rng& rng);

/// One grid cell: per-method aggregates (MAE values or hit counts).
struct ExperimentCell {
  SimScenario scenario;
  std::vector<std::string> methods;
  std::vector<double> values;
  std::size_t redraws = 0;  ///< replications regenerated after a failed fit
};

struct RunOptions {
  unsigned threads = 0;  ///< 0 = hardware concurrency
  GammaConvention convention = GammaConvention::kUnregularized;
  bool trace_times_p = false;
  double k_classic = kHuberClassic;
  double k_c0 = kKc0;
  int max_iter = 50;
  double tol = 1e-6;
};

/// MAE cell: MAE of in-sample predictions of the full model fitted
/// with k_classic (MAE1) and with k_c0 (MAE2).
ExperimentCell run_mae_experiment(const SimScenario& scenario, const RunOptions& options = {});

/// Hit-count cell: for each criterion, the number of replications whose
/// minimizing subset over the 31 candidates equals the true subset.
ExperimentCell run_selection_experiment(const SimScenario& scenario,
                                        std::span<const CriterionId> criteria,
                                        const RunOptions& options = {});

/// Subset mask of the non-zero entries of beta_true.
std::uint32_t true_mask(std::span<const double> beta_true);

/// The 12-cell grid n in {30, 50, 100} x LC in {10, 20, 30, 50}%.
std::vector<SimScenario> reference_grid(Contaminant contaminant, std::size_t r, std::uint64_t seed);

}  // namespace ricomp::sim
