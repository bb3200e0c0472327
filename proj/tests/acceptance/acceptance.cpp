// Acceptance checks 1-9. Usage: acceptance [criterion...]; no argument runs all.
// Prints one "CRITERION <n>: PASS|FAIL|SKIP" line per check, preceded by
// indented detail lines. Exit status: 0 all passed, 1 any failed, 77 skipped.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "ricomp/commands.hpp"
#include "ricomp/complexity.hpp"
#include "ricomp/errors.hpp"
#include "ricomp/io.hpp"
#include "ricomp/reference.hpp"
#include "ricomp/search.hpp"
#include "ricomp/simulate.hpp"
#include "ricomp/specfun.hpp"

using namespace ricomp;

namespace {

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome = Outcome::kFail;
  std::string message;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void detail(const std::string& s) { std::cout << "  " << s << "\n"; }

std::string fixed(double v, int d = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(d) << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

Result verdict(bool ok, const std::string& msg) { return {ok ? Outcome::kPass : Outcome::kFail, msg}; }

Result special_functions() {
  const auto t0 = Clock::now();
  double worst_add = 0, worst_erf = 0, worst_rec = 0;
  for (double a : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = 0.1 * i;
      const double lo = specfun::lower_incomplete_gamma(a, x);
      const double rel = std::fabs(lo + specfun::upper_incomplete_gamma(a, x) - std::tgamma(a)) / std::tgamma(a);
      worst_add = std::max(worst_add, rel);
      const double rec = std::fabs(specfun::lower_incomplete_gamma(a + 1, x) -
                                   (a * lo - std::pow(x, a) * std::exp(-x)));
      worst_rec = std::max(worst_rec, rec);
    }
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.1 * i;
    worst_erf = std::max(worst_erf, std::fabs(specfun::lower_incomplete_gamma(0.5, x) -
                                              std::sqrt(std::numbers::pi) * specfun::erf(std::sqrt(x))));
  }
  const double secs = seconds_since(t0);
  detail("additivity max rel err " + sci(worst_add) + ", erf identity max err " +
         sci(worst_erf) + ", recurrence max err " + sci(worst_rec));
  return verdict(worst_add <= 1e-10 && worst_erf <= 1e-10 && worst_rec <= 1e-10 && secs < 1.0,
                 "gamma/erf invariants in " + fixed(secs, 3) + " s");
}

Result m_estimator_limits() {
  const auto t0 = Clock::now();
  double worst_ols = 0, worst_shift = 0, worst_scale = 0;
  HuberConfig tight;
  tight.tol = 1e-13;
  tight.max_iter = 1000;
  sim::SimScenario s;
  s.n = 40;
  s.lc = 0.2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    sim::Rng rng = sim::substream(seed, 0);
    const Dataset d = sim::generate(s, rng).dataset();
    const RobustFit big = irls_fit(d, HuberConfig{1e6});
    const Vector ols = solve_least_squares(d.x, d.y);
    for (std::size_t j = 0; j < ols.size(); ++j) worst_ols = std::max(worst_ols, std::fabs(big.beta[j] - ols[j]));

    const RobustFit base = irls_fit(d, tight);
    Dataset shifted = d;
    const Vector c = {0.5, -1.0, 2.0, 0.25, -0.75, 1.5};
    const Vector xc = d.x * c;
    for (std::size_t i = 0; i < d.n(); ++i) shifted.y[i] += xc[i];
    const RobustFit fs = irls_fit(shifted, tight);
    Dataset doubled = d;
    for (double& v : doubled.y) v *= 2;
    const RobustFit fd = irls_fit(doubled, tight);
    for (std::size_t j = 0; j < c.size(); ++j) {
      worst_shift = std::max(worst_shift, std::fabs(fs.beta[j] - base.beta[j] - c[j]));
      worst_scale = std::max(worst_scale, std::fabs(fd.beta[j] - 2 * base.beta[j]));
    }
    worst_scale = std::max(worst_scale, std::fabs(fd.sigma - 2 * base.sigma));
  }
  const double secs = seconds_since(t0);
  detail("max |beta(k=1e6) - OLS| = " + sci(worst_ols) + ", regression equivariance err " +
         sci(worst_shift) + ", scale equivariance err " + sci(worst_scale));
  return verdict(worst_ols <= 1e-6 && worst_shift <= 1e-8 && worst_scale <= 1e-8 && secs < 5.0,
                 "50 seeded datasets in " + fixed(secs, 2) + " s");
}

Matrix orthogonal(std::size_t p, sim::Rng& rng) {
  std::normal_distribution<double> z;
  Matrix q(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) q(i, j) = z(rng);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t r = 0; r < p; ++r) dot += q(r, i) * q(r, j);
      for (std::size_t r = 0; r < p; ++r) q(r, j) -= dot * q(r, i);
    }
    double nrm = 0;
    for (std::size_t r = 0; r < p; ++r) nrm += q(r, j) * q(r, j);
    for (std::size_t r = 0; r < p; ++r) q(r, j) /= std::sqrt(nrm);
  }
  return q;
}

Result penalty_identities() {
  const auto t0 = Clock::now();
  sim::Rng rng = sim::substream(3, 0);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  std::normal_distribution<double> z;
  double worst_c0 = 0, worst_c1 = 0, worst_orth = 0, worst_rho = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t p = 1 + t % 6;
    Vector diag(p);
    for (double& v : diag) v = u(rng);
    worst_c0 = std::max(worst_c0, std::fabs(c0(CovarianceInput(Matrix::diagonal(diag)))));
    worst_c1 = std::max(worst_c1, std::fabs(c1(u(rng) * Matrix::identity(p))));
    Matrix b(p, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) b(i, j) = z(rng);
    const Matrix s = gram(b) + Matrix::identity(p);
    const Matrix q = orthogonal(p, rng);
    worst_orth = std::max(worst_orth, std::fabs(c1(q * s * q.transpose()) - c1(s)));
    const double k = 0.03 * (t + 1);
    worst_rho = std::max(worst_rho, std::fabs(c0_rho_h(CovarianceInput(Matrix::identity(1)), k)));
  }
  const double secs = seconds_since(t0);
  detail("max |c0(diag)| " + sci(worst_c0) + ", max |c1(scalar)| " + sci(worst_c1) +
         ", c1 orthogonal drift " + sci(worst_orth) + ", max |c0_rho_h(I1)| " +
         sci(worst_rho));
  return verdict(worst_c0 <= 1e-10 && worst_c1 <= 1e-10 && worst_orth <= 1e-8 && worst_rho <= 1e-12 &&
                     secs < 1.0,
                 "complexity identities in " + fixed(secs, 3) + " s");
}

Result tuning_search() {
  const auto t0 = Clock::now();
  bool converged = true;
  for (std::size_t p = 2; p <= 6; ++p) {
    const TuningResult t = tune_k_c0(p);
    converged = converged && t.status == TuningStatus::kRoot && std::fabs(t.objective) < 1e-6;
    detail("p = " + std::to_string(p) + ": k = " + fixed(t.k, 7) + ", objective " +
           sci(t.objective));
  }
  RunConfig cfg;
  cfg.command = "report";
  const auto rep = run_command(cfg);
  const bool has_values = rep.summary.find("0.8875916") != std::string::npos &&
                          rep.summary.find("0.632784") != std::string::npos;
  const bool consistent = rep.summary.find("internally consistent: yes") != std::string::npos;
  detail("published k = 0.8875916 and value 0.632784 are reproduced only with regularized "
         "incomplete gamma functions (value at p = 5); the printed formula gives k = 1.2468587");
  const double secs = seconds_since(t0);
  return verdict(converged && has_values && consistent && rep.table.rows.size() == 12 && secs < 10.0,
                 "tuning report with published values, consistent, " + fixed(secs, 2) + " s");
}

RunConfig simulation_config(const std::string& command, const std::string& contaminant, unsigned threads) {
  RunConfig c;
  c.command = command;
  c.r = 1000;
  c.contaminant = contaminant;
  c.threads = threads;
  return c;
}

double cell(const report::Table& t, std::size_t row, const std::string& column) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] != column) continue;
    if (const auto* d = std::get_if<double>(&t.rows[row][c])) return *d;
    return static_cast<double>(std::get<long long>(t.rows[row][c]));
  }
  throw Error("no column " + column);
}

Result table1() {
  const auto t0 = Clock::now();
  const auto shift = run_command(simulation_config("simulate-mae", "shift", 0));
  const auto scale = run_command(simulation_config("simulate-mae", "scale", 0));
  int wins_shift = 0, wins_scale = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& ref = reference::kTable1[i];
    const double s1 = cell(shift.table, i, "MAE1"), s2 = cell(shift.table, i, "MAE2");
    const double c1v = cell(scale.table, i, "MAE1"), c2v = cell(scale.table, i, "MAE2");
    wins_shift += s2 < s1;
    wins_scale += c2v < c1v;
    detail("n=" + std::to_string(ref.n) + " LC=" + std::to_string(ref.lc_percent) + "%: shift " + fixed(s1, 3) +
           "/" + fixed(s2, 3) + " (published " + fixed(ref.shift_mae1, 3) + "/" + fixed(ref.shift_mae2, 3) +
           "), scale " + fixed(c1v, 3) + "/" + fixed(c2v, 3) + " (published " + fixed(ref.scale_mae1, 3) + "/" +
           fixed(ref.scale_mae2, 3) + ")");
  }
  const double m1 = cell(shift.table, 1, "MAE1"), m2 = cell(shift.table, 1, "MAE2");
  const bool level = std::fabs(m1 / 11.334 - 1) <= 0.15 && std::fabs(m2 / 11.186 - 1) <= 0.15;
  const bool pattern = wins_shift >= 10 && wins_scale >= 10;
  const double secs = seconds_since(t0);
  std::ostringstream msg;
  msg << "(n=30, LC=20%, N(5,10)) MAE1 " << fixed(m1, 3) << " vs 11.334, MAE2 " << fixed(m2, 3)
      << " vs 11.186 [" << (level ? "within" : "outside") << " 15%]; MAE2 < MAE1 in " << wins_shift
      << "/12 shift, " << wins_scale << "/12 scale; " << fixed(secs, 1) << " s";
  return verdict(level && pattern && secs < 300, msg.str());
}

Result table2() {
  const auto t0 = Clock::now();
  const auto rep = run_command(simulation_config("simulate-select", "shift", 0));
  bool pattern = true;
  std::string names[5];
  for (std::size_t j = 0; j < 5; ++j) names[j] = std::string(to_string(kRobustCriteria[j]));
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& ref = reference::kTable2[i];
    std::ostringstream os;
    os << "n=" << ref.n << " LC=" << ref.lc_percent << "%:";
    double c0rh = cell(rep.table, i, names[0]);
    double best_other = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      const double h = cell(rep.table, i, names[j]);
      if (j > 0) best_other = std::max(best_other, h);
      os << ' ' << names[j] << ' ' << fixed(h / 1000.0, 3) << " (" << fixed(ref.hits[j] / 10000.0, 3) << ")";
    }
    if (ref.lc_percent >= 20 && c0rh < best_other) pattern = false;
    detail(os.str());
  }
  const double frac = cell(rep.table, 11, names[0]) / 1000.0;
  const bool level = std::fabs(frac - 0.4535) <= 0.10;
  const double secs = seconds_since(t0);
  std::ostringstream msg;
  msg << "(n=100, LC=50%) RICOMP_C0RH hit fraction " << fixed(frac, 3) << " vs 0.454 ["
      << (level ? "within" : "outside") << " 0.10]; RICOMP_C0RH maximal for every LC >= 20%: "
      << (pattern ? "yes" : "no") << "; " << fixed(secs, 1) << " s";
  return verdict(level && pattern && secs < 900, msg.str());
}

Result clean_data() {
  const auto t0 = Clock::now();
  sim::SimScenario s;
  s.n = 200;
  s.lc = 0.0;
  s.r = 500;
  s.seed = 777;
  const CriterionId crits[] = {CriterionId::kRicompC0rh, CriterionId::kRicompIfim};
  const auto cellr = sim::run_selection_experiment(s, crits);
  const double frac = cellr.values[0] / 500.0;
  const double secs = seconds_since(t0);

  detail("RICOMP_IFIM on the same runs: " + fixed(cellr.values[1] / 500.0, 3));
  sim::RunOptions reg;
  reg.convention = GammaConvention::kRegularized;
  const auto alt = sim::run_selection_experiment(s, std::span(crits, 1), reg);
  detail("RICOMP_C0RH with regularized incomplete gamma functions: " + fixed(alt.values[0] / 500.0, 3));
  return verdict(frac >= 0.8 && secs < 120,
                 "clean n=200: RICOMP_C0RH picks the true subset in " + fixed(frac, 3) +
                     " of 500 runs (need >= 0.8); " + fixed(secs, 1) + " s");
}

std::filesystem::path bridge_path() {
  if (const char* env = std::getenv("RICOMP_BRIDGE_CSV")) return env;
  return std::filesystem::path(RICOMP_SOURCE_DIR) / "data" / "bridge.csv";
}

Result real_data() {
  const auto path = bridge_path();
  if (!std::filesystem::exists(path)) {
    return {Outcome::kSkip, "bridge construction data not found at " + path.string() +
                                " (set RICOMP_BRIDGE_CSV); check skipped"};
  }
  const Dataset d = io::ingest_csv(path, "Time");
  const SelectionResult sel = select_best(d, CriterionId::kRicompC0rh, HuberConfig{});
  const auto& best = sel.best();
  const std::vector<std::string> cand(d.names.begin() + 1, d.names.end());
  const Dataset sub = subset_dataset(d, best.model);
  const double m = sim::mae(sub.y, predict(sub.x, best.fit.beta));
  bool coef_ok = best.fit.beta.size() == 3;
  for (std::size_t j = 0; coef_ok && j < 3; ++j) {
    coef_ok = std::fabs(best.fit.beta[j] / reference::kBridgeCoefficients[j] - 1) <= 0.01;
  }
  const bool subset_ok = best.model.label(cand) == "{Dwgs,DArea}";
  const bool mae_ok = std::fabs(m / reference::kBridgeMae - 1) <= 0.01;
  detail("selected " + best.model.label(cand) + ", " + equation_line("Time", sub.names, best.fit.beta));
  return verdict(subset_ok && coef_ok && mae_ok, "MAE " + fixed(m, 4) + " vs 36.5115");
}

Result determinism() {
  const auto t0 = Clock::now();
  bool same = true;
  for (const char* cmd : {"simulate-mae", "simulate-select"}) {
    for (const char* cont : {"shift", "scale"}) {
      if (std::string(cmd) == "simulate-select" && std::string(cont) == "scale") continue;
      const auto a = run_command(simulation_config(cmd, cont, 1));
      const auto b = run_command(simulation_config(cmd, cont, 0));
      for (auto f : {report::Format::kCsv, report::Format::kJson}) {
        const bool eq = report::render(a.table, f) == report::render(b.table, f);
        same = same && eq;
      }
      detail(std::string(cmd) + " " + cont + ": repeated run byte-identical: " +
             (report::render(a.table, report::Format::kCsv) == report::render(b.table, report::Format::kCsv)
                  ? "yes"
                  : "no"));
    }
  }
  return verdict(same, "runs 5 and 6 repeated with the same seed; " + fixed(seconds_since(t0), 1) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Result()>>> checks = {
      {1, {"special functions", special_functions}},
      {2, {"M-estimator limits", m_estimator_limits}},
      {3, {"penalty identities", penalty_identities}},
      {4, {"tuning search", tuning_search}},
      {5, {"MAE table reproduction", table1}},
      {6, {"hit-count table reproduction", table2}},
      {7, {"clean-data sanity", clean_data}},
      {8, {"real-data check", real_data}},
      {9, {"determinism", determinism}},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (const auto& [id, _] : checks) which.push_back(id);

  bool failed = false;
  bool skipped = false;
  for (int id : which) {
    const auto it = checks.find(id);
    if (it == checks.end()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    std::cout << "[" << id << "] " << it->second.first << "\n";
    Result r;
    try {
      r = it->second.second();
    } catch (const std::exception& e) {
      r = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = r.outcome == Outcome::kPass ? "PASS" : r.outcome == Outcome::kSkip ? "SKIP" : "FAIL";
    std::cout << "CRITERION " << id << ": " << tag << " - " << r.message << std::endl;
    failed = failed || r.outcome == Outcome::kFail;
    skipped = skipped || r.outcome == Outcome::kSkip;
  }
  if (failed) return 1;
  return skipped && which.size() == 1 ? 77 : 0;
}
