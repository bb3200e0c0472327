#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ricomp/complexity.hpp"
#include "ricomp/criteria.hpp"
#include "ricomp/mest.hpp"
#include "ricomp/report.hpp"

namespace ricomp {

/// Settings shared by every front-end command.
struct RunConfig {
  std::string command;  ///< fit, select, tune-k, simulate-mae, simulate-select, report
  std::string input;
  std::string response;
  double k = kKc0;
  CriterionId criterion = CriterionId::kRicompC0rh;
  std::size_t r = 1000;
  std::optional<std::size_t> n;  ///< single simulation scenario when set with lc
  std::optional<double> lc;
  std::string contaminant = "shift";
  std::uint64_t seed = 20201016;
  std::string out = "out";
  report::Format format = report::Format::kCsv;
  std::vector<std::size_t> tune_p = {2};
  bool with_plots = false;
  GammaConvention convention = GammaConvention::kUnregularized;
  bool trace_times_p = false;
  unsigned threads = 0;
  int max_iter = 50;
  double tol = 1e-6;

  /// Throws DomainError on unknown commands, missing required paths or
  /// out-of-range knobs.
  void validate() const;
};

inline constexpr const char* kCommands[] = {"fit",          "select",          "tune-k",
                                            "simulate-mae", "simulate-select", "report"};

/// Runs one command and returns its tables and summary without touching disk.
report::Report run_command(const RunConfig& config);

report::Report fit_command(const Dataset& data, const RunConfig& config);
report::Report select_command(const Dataset& data, const RunConfig& config);
report::Report tune_command(const RunConfig& config);
report::Report simulate_mae_command(const RunConfig& config);
report::Report simulate_select_command(const RunConfig& config);
/// Tuning diagnostics for p = 1..6 under both gamma conventions, with the
/// published comparison values and a match flag per row.
report::Report diagnostics_command(const RunConfig& config);

/// "y = b0 + b1 x2 + b2 x5" for a fitted subset.
std::string equation_line(const std::string& response, const std::vector<std::string>& terms,
                          const Vector& beta);

}  // namespace ricomp
