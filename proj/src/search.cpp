#include "ricomp/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "ricomp/errors.hpp"
#include "ricomp/parallel.hpp"

namespace ricomp {

const char* to_string(TuningStatus s) noexcept {
  switch (s) {
    case TuningStatus::kRoot: return "root";
    case TuningStatus::kGridMinimum: return "grid-minimum";
    case TuningStatus::kDegenerate: return "degenerate";
    case TuningStatus::kNoSignChange: return "no-sign-change";
  }
  return "?";
}

TuningResult tune_k_c0(std::size_t p, const TuningOptions& o) {
  if (p < 1) throw DomainError("tune_k_c0: dimension must be >= 1");
  if (!(o.k_min > 0.0) || !(o.k_max > o.k_min) || o.k_max > 10.0) {
    throw DomainError("tune_k_c0: k range must satisfy 0 < k_min < k_max <= 10");
  }
  if (!(o.grid_step > 0.0)) throw DomainError("tune_k_c0: grid step must be > 0");

  TuningResult result;
  result.p = p;
  auto objective = [&](double k) { return c0_rho_h_identity(p, k, o.convention); };

  const auto count = static_cast<std::size_t>(std::floor((o.k_max - o.k_min) / o.grid_step)) + 1;
  result.grid_points = count;
  std::vector<double> ks(count);
  std::vector<double> fs(count);
  for (std::size_t i = 0; i < count; ++i) {
    ks[i] = o.k_min + static_cast<double>(i) * o.grid_step;
    fs[i] = objective(ks[i]);
  }

  // In dimension 1, 1/sqrt(pi) == sqrt(2)/(2 pi)^{1/2} and the two terms cancel
  // for every k; any such flat objective is reported instead of an arbitrary root.
  double largest = 0.0;
  for (double f : fs) largest = std::max(largest, std::abs(f));
  if (largest <= 1e-12) {
    result.status = TuningStatus::kDegenerate;
    result.k = std::numeric_limits<double>::quiet_NaN();
    result.objective = 0.0;
    result.message = "objective is identically zero over the grid";
    return result;
  }

  // Bracket with the smallest endpoint magnitude among all sign changes.
  std::optional<std::size_t> bracket;
  double bracket_mag = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < count; ++i) {
    if (fs[i] == 0.0 || fs[i] * fs[i + 1] < 0.0) {
      const double mag = std::min(std::abs(fs[i]), std::abs(fs[i + 1]));
      if (mag < bracket_mag) {
        bracket_mag = mag;
        bracket = i;
      }
    }
  }

  if (bracket) {
    double lo = ks[*bracket];
    double hi = ks[*bracket + 1];
    double flo = fs[*bracket];
    if (flo == 0.0) {
      hi = lo;
    }
    while (hi - lo > o.bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      const double fm = objective(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    result.k = 0.5 * (lo + hi);
    result.objective = objective(result.k);
    result.status = TuningStatus::kRoot;
    result.message = "sign change refined by bisection";
    return result;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i)
    if (std::abs(fs[i]) < std::abs(fs[best])) best = i;
  result.k = ks[best];
  result.objective = fs[best];
  const bool interior = best > 0 && best + 1 < count;
  if (interior && std::abs(fs[best]) < o.zero_tol) {
    result.status = TuningStatus::kGridMinimum;
    result.message = "no sign change; interior grid minimum below tolerance";
  } else {
    result.status = TuningStatus::kNoSignChange;
    result.message = "no sign change and no interior minimum below tolerance";
  }
  return result;
}

int SubsetModel::size() const noexcept { return std::popcount(mask); }

std::vector<std::size_t> SubsetModel::members() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < 32; ++j)
    if (mask & (std::uint32_t{1} << j)) out.push_back(j);
  return out;
}

std::string SubsetModel::label(std::span<const std::string> candidate_names) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t j : members()) {
    if (!first) os << ',';
    first = false;
    if (j < candidate_names.size()) {
      os << candidate_names[j];
    } else {
      os << 'x' << (j + 1);
    }
  }
  os << '}';
  return os.str();
}

std::vector<SubsetModel> enumerate_subsets(std::size_t p) {
  if (p < 1) throw DomainError("enumerate_subsets: need at least one candidate");
  if (p > kMaxCandidates) {
    throw DomainError("enumerate_subsets: " + std::to_string(p) + " candidates exceeds the limit of " +
                      std::to_string(kMaxCandidates));
  }
  const std::uint32_t total = (std::uint32_t{1} << p) - 1;
  std::vector<SubsetModel> out;
  out.reserve(total);
  for (std::uint32_t m = 1; m <= total; ++m) out.push_back(SubsetModel{m, true});
  return out;
}

std::vector<std::size_t> subset_columns(const Dataset& data, const SubsetModel& model) {
  std::vector<std::size_t> cols;
  const std::size_t offset = data.intercept ? 1 : 0;
  if (data.intercept && model.intercept) cols.push_back(0);
  for (std::size_t j : model.members()) {
    if (j >= data.candidates()) throw DomainError("subset refers to a missing candidate");
    cols.push_back(j + offset);
  }
  return cols;
}

Dataset subset_dataset(const Dataset& data, const SubsetModel& model) {
  const auto cols = subset_columns(data, model);
  Dataset d;
  d.x = data.x.select_columns(cols);
  d.y = data.y;
  d.intercept = data.intercept && model.intercept;
  if (!data.names.empty())
    for (std::size_t c : cols) d.names.push_back(data.names[c]);
  return d;
}

std::vector<SubsetEvaluation> evaluate_subsets(const Dataset& data,
                                               std::span<const SubsetModel> models,
                                               std::span<const CriterionId> criteria,
                                               const HuberConfig& config,
                                               const EvaluationOptions& options) {
  std::vector<SubsetEvaluation> out(models.size());
  parallel_for(
      models.size(),
      [&](std::size_t i) {
        SubsetEvaluation& ev = out[i];
        ev.model = models[i];
        try {
          const Dataset sub = subset_dataset(data, models[i]);
          ev.fit = irls_fit(sub, config);
          CriterionContext ctx(*ev.fit, sub.x, options.convention);
          ctx.trace_times_p = options.trace_times_p;
          ev.scores.reserve(criteria.size());
          for (CriterionId id : criteria) {
            CriterionScore s = score(id, ctx);
            if (!std::isfinite(s.value)) {
              throw NumericalError(std::string(to_string(id)) + " is not finite");
            }
            ev.scores.push_back(s);
          }
        } catch (const Error& e) {
          ev.error = e.what();
          ev.scores.clear();
        }
      },
      options.threads);
  return out;
}

bool ranks_before(const SubsetModel& a, double va, const SubsetModel& b, double vb) noexcept {
  if (va != vb) return va < vb;
  if (a.size() != b.size()) return a.size() < b.size();
  return a.mask < b.mask;
}

std::optional<std::size_t> best_index(std::span<const SubsetEvaluation> evals, std::size_t which) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].ok()) continue;
    if (!best || ranks_before(evals[i].model, evals[i].scores[which].value, evals[*best].model,
                              evals[*best].scores[which].value)) {
      best = i;
    }
  }
  return best;
}

SelectionResult rank_evaluations(std::span<const SubsetEvaluation> evals, CriterionId criterion,
                                 std::size_t which) {
  SelectionResult result;
  result.criterion = criterion;
  for (const auto& ev : evals) {
    if (ev.ok()) {
      result.ranked.push_back(RankedModel{ev.model, ev.scores[which], *ev.fit});
    } else {
      result.failures.emplace_back(ev.model, ev.error);
    }
  }
  std::sort(result.ranked.begin(), result.ranked.end(), [](const auto& a, const auto& b) {
    return ranks_before(a.model, a.score.value, b.model, b.score.value);
  });
  return result;
}

SelectionResult select_best(const Dataset& data, CriterionId criterion, const HuberConfig& config,
                            std::span<const SubsetModel> models, const EvaluationOptions& options) {
  data.validate();
  const CriterionId ids[] = {criterion};
  const auto evals = evaluate_subsets(data, models, ids, config, options);
  SelectionResult result = rank_evaluations(evals, criterion, 0);
  if (result.ranked.empty()) {
    throw NumericalError("select_best: every candidate subset failed to fit" +
                         (result.failures.empty() ? std::string{} : ": " + result.failures.front().second));
  }
  return result;
}

SelectionResult select_best(const Dataset& data, CriterionId criterion, const HuberConfig& config,
                            const EvaluationOptions& options) {
  const auto models = enumerate_subsets(data.candidates());
  return select_best(data, criterion, config, models, options);
}

}  // namespace ricomp
