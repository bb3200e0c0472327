#include "ricomp/simulate.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "ricomp/errors.hpp"
#include "ricomp/parallel.hpp"
#include "ricomp/search.hpp"

namespace ricomp::sim {

Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(attempt)};
  return Rng(seq);
}

double burr3_cdf(double x, double c, double kappa) {
  if (!(x > 0.0)) return 0.0;
  return std::pow(1.0 + std::pow(x, -c), -kappa);
}

double burr3_quantile(double u, double c, double kappa) {
  if (!(c > 0.0) || !(kappa > 0.0)) throw DomainError("Burr III shapes must be > 0");
  if (!(u > 0.0 && u < 1.0)) throw DomainError("Burr III quantile needs u in (0, 1)");
  return std::pow(std::pow(u, -1.0 / kappa) - 1.0, -1.0 / c);
}

double burr3_sample(double c, double kappa, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = 0.0;
  do {
    u = unif(rng);
  } while (u <= 0.0);
  return burr3_quantile(u, c, kappa);
}

Matrix gen_predictors(std::size_t n, double alpha, double burr_c, double burr_kappa, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("mixing weight alpha must lie in [0, 1]");
  const double own = std::sqrt(1.0 - alpha * alpha);
  Matrix x(n, kPredictors);
  double z[kPredictors + 1];
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z) v = burr3_sample(burr_c, burr_kappa, rng);
    for (std::size_t j = 0; j < kPredictors; ++j) x(i, j) = own * z[j] + alpha * z[kPredictors];
  }
  return x;
}

void MixtureSpec::validate() const {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) throw DomainError("mixture scales must be > 0");
}

Vector gen_errors(const MixtureSpec& spec, Rng& rng) {
  spec.validate();
  Vector e;
  e.reserve(spec.n());
  std::normal_distribution<double> clean(spec.mu1, spec.sigma1);
  std::normal_distribution<double> dirty(spec.mu2, spec.sigma2);
  for (std::size_t i = 0; i < spec.n1; ++i) e.push_back(clean(rng));
  for (std::size_t i = 0; i < spec.n2; ++i) e.push_back(dirty(rng));
  return e;
}

Vector gen_response(const Matrix& x, std::span<const double> beta_true, double sigma_model,
                    std::span<const double> errors) {
  if (errors.size() != x.rows()) throw DataError("gen_response: error length differs from rows");
  Vector y = x * beta_true;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += sigma_model * errors[i];
  return y;
}

double mae(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) throw DataError("mae: lengths differ");
  if (y.empty()) throw DataError("mae: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - yhat[i]);
  return s / static_cast<double>(y.size());
}

double mae(std::span<const Vector> ys, std::span<const Vector> yhats) {
  if (ys.size() != yhats.size()) throw DataError("mae: replication counts differ");
  if (ys.empty()) throw DataError("mae: no replications");
  double s = 0.0;
  for (std::size_t t = 0; t < ys.size(); ++t) s += mae(ys[t], yhats[t]);
  return s / static_cast<double>(ys.size());
}

std::size_t SimScenario::n2() const noexcept {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * lc));
}

MixtureSpec SimScenario::mixture() const {
  return MixtureSpec{n1(), n2(), 0.0, 1.0, contaminant.mu, contaminant.sigma};
}

void SimScenario::validate() const {
  if (n <= kPredictors + 1) throw DomainError("scenario: n must exceed the number of coefficients");
  if (!(lc >= 0.0 && lc <= 1.0)) throw DomainError("scenario: contamination level must lie in [0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("scenario: alpha must lie in [0, 1]");
  if (!(burr_c > 0.0) || !(burr_kappa > 0.0)) throw DomainError("scenario: Burr shapes must be > 0");
  if (beta_true.size() != kPredictors) throw DomainError("scenario: beta_true needs 5 entries");
  if (r < 1) throw DomainError("scenario: need at least one replication");
  if (!(sigma_model >= 0.0)) throw DomainError("scenario: sigma_model must be >= 0");
}

Dataset SimData::dataset() const {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < predictors.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
  return make_dataset(predictors, y, std::move(names), true);
}

SimData generate(const SimScenario& s, Rng& rng) {
  SimData d;
  d.predictors = gen_predictors(s.n, s.alpha, s.burr_c, s.burr_kappa, rng);
  d.errors = gen_errors(s.mixture(), rng);
  d.y = gen_response(d.predictors, s.beta_true, s.sigma_model, d.errors);
  return d;
}

std::uint32_t true_mask(std::span<const double> beta_true) {
  std::uint32_t m = 0;
  for (std::size_t j = 0; j < beta_true.size(); ++j)
    if (beta_true[j] != 0.0) m |= std::uint32_t{1} << j;
  return m;
}

namespace {

std::size_t redraw_cap(std::size_t r) { return std::max<std::size_t>(1, (r + 99) / 100); }

// Runs `attempt(rng)` for each replication, regenerating on NumericalError.
// Returns the total number of redraws; throws once the cap is exceeded.
template <typename Attempt>
std::size_t replicate(const SimScenario& s, unsigned threads, Attempt&& attempt) {
  const std::size_t cap = redraw_cap(s.r);
  std::vector<std::size_t> redraws(s.r, 0);
  parallel_for(
      s.r,
      [&](std::size_t t) {
        for (std::size_t a = 0;; ++a) {
          Rng rng = substream(s.seed, t, a);
          try {
            attempt(t, rng);
            redraws[t] = a;
            return;
          } catch (const NumericalError&) {
            if (a + 1 > cap) throw;
          }
        }
      },
      threads);
  const std::size_t total = std::accumulate(redraws.begin(), redraws.end(), std::size_t{0});
  if (total > cap) {
    throw NumericalError("simulation: " + std::to_string(total) +
                         " replications needed redraws, above the cap of " + std::to_string(cap));
  }
  return total;
}

}  // namespace

ExperimentCell run_mae_experiment(const SimScenario& s, const RunOptions& o) {
  s.validate();
  HuberConfig classic{o.k_classic, o.max_iter, o.tol, std::nullopt};
  HuberConfig tuned{o.k_c0, o.max_iter, o.tol, std::nullopt};
  std::vector<double> mae1(s.r);
  std::vector<double> mae2(s.r);

  ExperimentCell cell;
  cell.scenario = s;
  cell.methods = {"MAE1", "MAE2"};
  cell.redraws = replicate(s, o.threads, [&](std::size_t t, Rng& rng) {
    const SimData sd = generate(s, rng);
    const Dataset d = sd.dataset();
    const RobustFit f1 = irls_fit(d, classic);
    const RobustFit f2 = irls_fit(d, tuned);
    mae1[t] = mae(d.y, predict(d.x, f1.beta));
    mae2[t] = mae(d.y, predict(d.x, f2.beta));
  });

  const double r = static_cast<double>(s.r);
  cell.values = {std::accumulate(mae1.begin(), mae1.end(), 0.0) / r,
                 std::accumulate(mae2.begin(), mae2.end(), 0.0) / r};
  return cell;
}

ExperimentCell run_selection_experiment(const SimScenario& s, std::span<const CriterionId> criteria,
                                        const RunOptions& o) {
  s.validate();
  ExperimentCell cell;
  cell.scenario = s;
  if (criteria.empty()) return cell;
  for (CriterionId id : criteria) cell.methods.emplace_back(to_string(id));

  const HuberConfig config{o.k_c0, o.max_iter, o.tol, std::nullopt};
  const auto models = enumerate_subsets(kPredictors);
  const std::uint32_t target = true_mask(s.beta_true);
  EvaluationOptions eval_opts;
  eval_opts.convention = o.convention;
  eval_opts.trace_times_p = o.trace_times_p;
  eval_opts.threads = 1;

  // hits[t][c] = 1 when criterion c picked the true subset in replication t.
  std::vector<std::vector<unsigned char>> hits(s.r, std::vector<unsigned char>(criteria.size(), 0));
  cell.redraws = replicate(s, o.threads, [&](std::size_t t, Rng& rng) {
    const Dataset d = generate(s, rng).dataset();
    const auto evals = evaluate_subsets(d, models, criteria, config, eval_opts);
    for (std::size_t c = 0; c < criteria.size(); ++c) {
      const auto best = best_index(evals, c);
      if (!best) throw NumericalError("no subset could be fitted");
      hits[t][c] = evals[*best].model.mask == target ? 1 : 0;
    }
  });

  cell.values.assign(criteria.size(), 0.0);
  for (const auto& row : hits)
    for (std::size_t c = 0; c < criteria.size(); ++c) cell.values[c] += row[c];
  return cell;
}

std::vector<SimScenario> reference_grid(Contaminant contaminant, std::size_t r, std::uint64_t seed) {
  std::vector<SimScenario> grid;
  std::uint64_t index = 0;
  for (std::size_t n : {30u, 50u, 100u}) {
    for (double lc : {0.10, 0.20, 0.30, 0.50}) {
      SimScenario s;
      s.n = n;
      s.lc = lc;
      s.contaminant = contaminant;
      s.r = r;
      s.seed = seed + 1000003ULL * index++;
      grid.push_back(s);
    }
  }
  return grid;
}

}  // namespace ricomp::sim
