#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ricomp/commands.hpp"
#include "ricomp/errors.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

int fail(int code, const std::string& msg) {
  std::cerr << "ricomp: error: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using ricomp::RunConfig;
  RunConfig cfg;
  std::string criterion = "RICOMP_C0RH";
  std::string format = "csv";
  std::string convention = "unregularized";
  std::string stamp;
  std::size_t n = 0;
  double lc = 0.0;

  CLI::App app{"Robust regression with Huber M-estimation and information-complexity subset selection"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--input", cfg.input, "CSV dataset with a header row");
  app.add_option("--response", cfg.response, "response column name");
  app.add_option("--k", cfg.k, "Huber tuning constant")->capture_default_str();
  app.add_option("--criterion", criterion, "AIC, AIC_H, AIC_R, RICOMP_IFIM, RICOMP_M, RICOMP_C0RH")
      ->capture_default_str();
  app.add_option("--r", cfg.r, "Monte Carlo replications")->capture_default_str();
  auto* n_opt = app.add_option("--n", n, "sample size (single scenario)");
  auto* lc_opt = app.add_option("--lc", lc, "contamination fraction in [0, 1) (single scenario)");
  app.add_option("--contaminant", cfg.contaminant, "shift = N(5,10), scale = N(0,50)")
      ->check(CLI::IsMember({"shift", "scale"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "base random seed")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--format", format, "csv, tsv or json")
      ->check(CLI::IsMember({"csv", "tsv", "json"}))
      ->capture_default_str();
  app.add_option("--tune-p", cfg.tune_p, "dimensions for tune-k")->capture_default_str();
  app.add_flag("--with-plots", cfg.with_plots, "also write SVG probability plots");
  app.add_option("--gamma-convention", convention, "unregularized or regularized")
      ->check(CLI::IsMember({"unregularized", "regularized"}))
      ->capture_default_str();
  app.add_flag("--trace-times-p", cfg.trace_times_p, "multiply AIC_H/AIC_R trace penalties by p");
  app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores")->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "IRLS iteration cap")->capture_default_str();
  app.add_option("--tol", cfg.tol, "IRLS relative tolerance")->capture_default_str();
  app.add_option("--stamp", stamp, "file-name stamp instead of the current time");

  app.add_subcommand("fit", "fit the full model and write coefficients and residual plot data");
  app.add_subcommand("select", "score all candidate subsets and rank them");
  app.add_subcommand("tune-k", "search k with zero identity-matrix complexity");
  app.add_subcommand("simulate-mae", "MAE of two tuning constants under contamination");
  app.add_subcommand("simulate-select", "true-model hit counts of the robust criteria");
  app.add_subcommand("report", "tuning diagnostics for p = 1..6 and both gamma conventions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, e.what());
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    const auto id = ricomp::parse_criterion(criterion);
    if (!id) return fail(kUsage, "unknown criterion '" + criterion + "'");
    cfg.criterion = *id;
    cfg.format = ricomp::report::parse_format(format);
    cfg.convention = convention == "regularized" ? ricomp::GammaConvention::kRegularized
                                                 : ricomp::GammaConvention::kUnregularized;
    if (n_opt->count() > 0) cfg.n = n;
    if (lc_opt->count() > 0) cfg.lc = lc;
    cfg.validate();
  } catch (const ricomp::Error& e) {
    return fail(kUsage, e.what());
  }

  try {
    const auto rep = ricomp::run_command(cfg);
    const auto files = ricomp::report::emit_report(
        rep, cfg.out, stamp.empty() ? ricomp::report::timestamp_now() : stamp, cfg.format);
    std::cout << rep.summary;
    std::cout << "wrote " << files.table.string() << "\n";
    if (files.plot_table) std::cout << "wrote " << files.plot_table->string() << "\n";
    if (files.plot_svg) std::cout << "wrote " << files.plot_svg->string() << "\n";
    return kOk;
  } catch (const ricomp::DataError& e) {
    return fail(kData, e.what());
  } catch (const ricomp::NumericalError& e) {
    return fail(kNumeric, e.what());
  } catch (const ricomp::DomainError& e) {
    return fail(kUsage, e.what());
  } catch (const ricomp::Error& e) {
    return fail(kData, e.what());
  } catch (const std::exception& e) {
    return fail(kNumeric, e.what());
  }
}
