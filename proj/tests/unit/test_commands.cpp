#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "ricomp/commands.hpp"
#include "ricomp/errors.hpp"

using namespace ricomp;

TEST_CASE("run configuration validation") {
  RunConfig c;
  c.command = "bogus";
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.command = "fit";
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.input = "x.csv";
  c.response = "y";
  CHECK_NOTHROW(c.validate());
  c.lc = 1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.lc.reset();
  c.contaminant = "other";
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("diagnostics report is internally consistent") {
  RunConfig c;
  c.command = "report";
  const auto rep = run_command(c);
  CHECK(rep.table.rows.size() == 12);
  CHECK(rep.summary.find("internally consistent: yes") != std::string::npos);
  CHECK(rep.summary.find("0.8875916") != std::string::npos);
  CHECK(rep.summary.find("0.632784") != std::string::npos);
  // Exactly one row reproduces the published value at k = 1.345.
  const std::string csv = report::render(rep.table, report::Format::kCsv);
  int matches = 0;
  for (const auto& row : rep.table.rows) matches += std::get<std::string>(row[8]) == "yes";
  CHECK(matches == 1);
}

TEST_CASE("select command ranks every subset") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  const Matrix x = testing::random_matrix(40, 3, rng);
  Vector y(40);
  for (std::size_t i = 0; i < 40; ++i) y[i] = 1 + 3 * x(i, 1) + 0.3 * z(rng);
  const Dataset d = make_dataset(x, y, {"u", "v", "w"}, true);
  RunConfig c;
  c.command = "select";
  c.response = "resp";
  c.criterion = CriterionId::kRicompIfim;
  c.with_plots = true;
  const auto rep = select_command(d, c);
  CHECK(rep.table.rows.size() == 7);
  CHECK(std::get<long long>(rep.table.rows[0][0]) == 1);
  CHECK(std::get<std::string>(rep.table.rows[0][1]) == "{v}");
  CHECK(rep.summary.find("best model: resp = ") != std::string::npos);
  REQUIRE(rep.plot.has_value());
  CHECK(rep.plot->rows.size() == 40);
  CHECK_FALSE(rep.plot_svg.empty());
}

TEST_CASE("equation line") {
  CHECK(equation_line("y", {"(Intercept)", "x2", "x5"}, {-13.0449, 17.7851, 2.7736}) ==
        "y = -13.0449 + 17.7851 x2 + 2.7736 x5");
  CHECK(equation_line("y", {"(Intercept)", "a"}, {1.0, -2.0}) == "y = 1.0000 - 2.0000 a");
}

TEST_CASE("simulation commands are repeatable") {
  RunConfig c;
  c.command = "simulate-select";
  c.n = 30;
  c.lc = 0.2;
  c.r = 10;
  c.threads = 2;
  const auto a = report::render(run_command(c).table, report::Format::kJson);
  c.threads = 1;
  const auto b = report::render(run_command(c).table, report::Format::kJson);
  CHECK(a == b);

  c.command = "simulate-mae";
  const auto t = run_command(c);
  CHECK(t.table.columns == std::vector<std::string>{"n", "LC", "n1", "n2", "MAE1", "MAE2", "redraws"});
  CHECK(t.table.rows.size() == 1);
}
