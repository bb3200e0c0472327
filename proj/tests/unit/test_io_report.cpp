#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "ricomp/errors.hpp"
#include "ricomp/io.hpp"
#include "ricomp/report.hpp"

using namespace ricomp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ricomp_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("ingest a small file") {
  std::istringstream in("y,a,b\n1,2,3\n4,5,6\n7,8,9.5\n");
  const Dataset d = io::parse_csv(in, "y");
  CHECK(d.n() == 3);
  CHECK(d.p() == 3);
  CHECK(d.names == std::vector<std::string>{"(Intercept)", "a", "b"});
  CHECK(d.x(2, 0) == 1.0);
  CHECK(d.x(2, 2) == 9.5);
  CHECK(d.y == Vector{1, 4, 7});
}

TEST_CASE("response column in the middle, remaining columns in header order") {
  std::istringstream in("CCost,Time,Dwgs,Length,Spans,DArea\n"
                        "1,10,2,3,4,5\n2,20,3,4,5,6\n3,30,4,5,6,8\n4,40,5,6,7,9\n5,51,6,7,8,1\n"
                        "6,61,7,8,9,2\n7,75,8,9,1,3\n");
  const Dataset d = io::parse_csv(in, "Time");
  CHECK(d.y[1] == 20.0);
  CHECK(d.names == std::vector<std::string>{"(Intercept)", "CCost", "Dwgs", "Length", "Spans", "DArea"});
  CHECK(d.x(0, 1) == 1.0);
  CHECK(d.x(0, 5) == 5.0);
}

TEST_CASE("ingestion errors") {
  CHECK_THROWS_AS(io::ingest_csv("/nonexistent/file.csv", "y"), DataError);
  {
    std::istringstream in("a,b\n1,2\n3,4\n");
    CHECK_THROWS_WITH_AS(io::parse_csv(in, "y"), doctest::Contains("no column named 'y'"), DataError);
  }
  {
    std::istringstream in("y,a,b\n1,2,3\n4,,6\n7,8,9\n");
    CHECK_THROWS_WITH_AS(io::parse_csv(in, "y"), doctest::Contains("row 3, column 'a': blank cell"), DataError);
  }
  {
    std::istringstream in("y,a\n1,2\n3,x1\n5,6\n");
    CHECK_THROWS_WITH_AS(io::parse_csv(in, "y"), doctest::Contains("row 3, column 'a'"), DataError);
  }
  {
    std::istringstream in("y,a,b\n1,2,3\n4,5,6\n");
    CHECK_THROWS_AS(io::parse_csv(in, "y"), DataError);
  }
  {
    std::istringstream in("");
    CHECK_THROWS_AS(io::parse_csv(in, "y"), DataError);
  }
}

TEST_CASE("emit then re-ingest reproduces the numbers") {
  std::mt19937_64 rng(1);
  Dataset d = testing::random_dataset(25, 3, rng);
  d.y[0] = 1e-300;
  d.y[1] = -123456789.123456789;
  std::stringstream buf;
  io::write_dataset_csv(buf, d, "resp");
  const Dataset back = io::parse_csv(buf, "resp");
  CHECK(back.y == d.y);
  CHECK(back.x == d.x);
  CHECK(back.names == d.names);
}

TEST_CASE("table rendering") {
  report::Table t{{"name", "value", "count"}, {}};
  t.add_row({std::string("a,b"), 0.1, 3LL});
  t.add_row({std::string("c"), 2.5, -1LL});
  CHECK(report::render(t, report::Format::kCsv) == "name,value,count\n\"a,b\",0.1,3\nc,2.5,-1\n");
  CHECK(report::render(t, report::Format::kTsv) == "name\tvalue\tcount\na,b\t0.1\t3\nc\t2.5\t-1\n");
  const auto j = nlohmann::json::parse(report::render(t, report::Format::kJson));
  CHECK(j.size() == 2);
  CHECK(j[0]["value"] == 0.1);
  CHECK(j[1]["count"] == -1);
  CHECK_THROWS_AS(t.add_row({1.0}), DomainError);
  CHECK(report::parse_format("json") == report::Format::kJson);
  CHECK_THROWS_AS(report::parse_format("xml"), DomainError);
}

TEST_CASE("probability plot coordinates") {
  const Vector r = {3.0, -1.0, 0.0, 1.0};
  const auto pts = report::probability_plot(r, 2.0);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].residual == -0.5);
  CHECK(pts[3].residual == 1.5);
  CHECK(pts[0].probability == doctest::Approx(0.125));
  CHECK(pts[0].quantile == doctest::Approx(-1.1503493803760079));
  CHECK(pts[1].quantile == doctest::Approx(-pts[2].quantile));
  const std::string svg = report::probability_svg(pts, "title");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK_THROWS_AS(report::probability_plot(r, 0.0), DomainError);
}

TEST_CASE("emit_report writes files and refuses empty results") {
  const fs::path dir = scratch_dir("emit");
  report::Report rep;
  rep.command = "fit";
  rep.table = report::Table{{"a"}, {}};
  CHECK_THROWS_AS(report::emit_report(rep, dir, "s", report::Format::kCsv), DataError);
  CHECK_FALSE(fs::exists(dir));

  rep.table.add_row({1.0});
  rep.summary = "hello\n";
  rep.plot = report::Table{{"x"}, {}};
  rep.plot->add_row({2.0});
  rep.plot_svg = "<svg/>";
  const auto files = report::emit_report(rep, dir, "s", report::Format::kTsv);
  CHECK(files.table == dir / "fit_s.tsv");
  CHECK(fs::exists(dir / "summary.txt"));
  CHECK(fs::exists(dir / "fit_s_probplot.tsv"));
  CHECK(fs::exists(dir / "fit_s_probplot.svg"));
  std::ifstream in(files.table);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  CHECK(content == "a\n1\n");

  // A regular file where the directory should be.
  const fs::path blocker = scratch_dir("blocker");
  std::ofstream(blocker) << "x";
  CHECK_THROWS_AS(report::emit_report(rep, blocker / "sub", "s", report::Format::kCsv), Error);
  fs::remove_all(dir);
  fs::remove(blocker);
}
