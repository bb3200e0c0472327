#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ricomp/commands.hpp"
#include "ricomp/complexity.hpp"
#include "ricomp/criteria.hpp"
#include "ricomp/errors.hpp"
#include "ricomp/io.hpp"
#include "ricomp/mest.hpp"
#include "ricomp/report.hpp"
#include "ricomp/search.hpp"
#include "ricomp/simulate.hpp"
#include "ricomp/specfun.hpp"

namespace py = pybind11;
using namespace ricomp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw DataError("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return Matrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw DataError("expected a 1-d array");
  return Vector(a.data(), a.data() + a.shape(0));
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> from_vector(const Vector& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

GammaConvention parse_convention(const std::string& s) {
  if (s == "unregularized") return GammaConvention::kUnregularized;
  if (s == "regularized") return GammaConvention::kRegularized;
  throw DomainError("convention must be 'unregularized' or 'regularized', got '" + s + "'");
}

CriterionId criterion_of(const std::string& s) {
  auto id = parse_criterion(s);
  if (!id) throw DomainError("unknown criterion '" + s + "'");
  return *id;
}

Dataset dataset_of(const Array& x, const Array& y, std::vector<std::string> names, bool intercept) {
  return make_dataset(to_matrix(x), to_vector(y), std::move(names), intercept);
}

HuberConfig config_of(double k, int max_iter, double tol) {
  HuberConfig cfg;
  cfg.k = k;
  cfg.max_iter = max_iter;
  cfg.tol = tol;
  return cfg;
}

py::dict fit_dict(const RobustFit& f, const std::vector<std::string>& names) {
  py::dict d;
  d["names"] = names;
  d["beta"] = from_vector(f.beta);
  d["sigma"] = f.sigma;
  d["residuals"] = from_vector(f.residuals);
  d["weights"] = from_vector(f.weights);
  d["cov_beta"] = from_matrix(f.cov_beta);
  d["iterations"] = f.iterations;
  d["converged"] = f.converged;
  d["k"] = f.k;
  return d;
}

py::dict score_dict(const CriterionScore& s) {
  py::dict d;
  d["criterion"] = std::string(to_string(s.criterion));
  d["value"] = s.value;
  d["lack_of_fit"] = s.lack_of_fit;
  d["penalty"] = s.penalty;
  return d;
}

py::object cell_value(const report::Cell& c) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

py::dict report_dict(const report::Report& r) {
  py::dict d;
  d["command"] = r.command;
  d["columns"] = r.table.columns;
  py::list rows;
  for (const auto& row : r.table.rows) {
    py::list out;
    for (const auto& c : row) out.append(cell_value(c));
    rows.append(out);
  }
  d["rows"] = rows;
  d["summary"] = r.summary;
  d["csv"] = report::render(r.table, report::Format::kCsv);
  d["json"] = report::render(r.table, report::Format::kJson);
  return d;
}

sim::Contaminant contaminant_of(const std::string& s) {
  if (s == "shift") return sim::kShiftContaminant;
  if (s == "scale") return sim::kScaleContaminant;
  throw DomainError("contaminant must be 'shift' or 'scale'");
}

sim::SimScenario scenario_of(std::size_t n, double lc, const std::string& contaminant, std::size_t r,
                             std::uint64_t seed) {
  sim::SimScenario s;
  s.n = n;
  s.lc = lc;
  s.contaminant = contaminant_of(contaminant);
  s.r = r;
  s.seed = seed;
  s.validate();
  return s;
}

sim::RunOptions run_options(unsigned threads, const std::string& convention) {
  sim::RunOptions o;
  o.threads = threads;
  o.convention = parse_convention(convention);
  return o;
}

py::dict cell_dict(const sim::ExperimentCell& c) {
  py::dict d;
  d["n"] = c.scenario.n;
  d["lc"] = c.scenario.lc;
  d["n1"] = c.scenario.n1();
  d["n2"] = c.scenario.n2();
  for (std::size_t i = 0; i < c.methods.size(); ++i) d[py::str(c.methods[i])] = c.values[i];
  d["redraws"] = c.redraws;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Huber M-estimation with robust information-complexity model selection";

  // Translators run newest first, so the subclasses are registered after the base.
  auto base = py::register_exception<Error>(m, "RicompError", PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  m.attr("K_C0") = kKc0;
  m.attr("K_HUBER") = kHuberClassic;
  py::list crits;
  for (CriterionId id : kAllCriteria) crits.append(std::string(to_string(id)));
  m.attr("CRITERIA") = crits;

  m.def("lower_incomplete_gamma", &specfun::lower_incomplete_gamma, py::arg("a"), py::arg("x"));
  m.def("upper_incomplete_gamma", &specfun::upper_incomplete_gamma, py::arg("a"), py::arg("x"));
  m.def("regularized_lower_gamma", &specfun::regularized_lower_gamma, py::arg("a"), py::arg("x"));
  m.def("regularized_upper_gamma", &specfun::regularized_upper_gamma, py::arg("a"), py::arg("x"));
  m.def("erf", &specfun::erf, py::arg("x"));
  m.def("normal_quantile", &specfun::normal_quantile, py::arg("p"));

  m.def("huber_rho", &huber_rho, py::arg("u"), py::arg("k"));
  m.def("huber_psi", &huber_psi, py::arg("u"), py::arg("k"));
  m.def("huber_weight", &huber_weight, py::arg("u"), py::arg("k"));
  m.def(
      "mad_scale", [](const Array& r) { return mad_scale(to_vector(r)); }, py::arg("residuals"));

  m.def(
      "c0", [](const Array& s) { return c0(CovarianceInput(to_matrix(s))); }, py::arg("sigma"));
  m.def(
      "c1", [](const Array& s) { return c1(to_matrix(s)); }, py::arg("sigma"));
  m.def(
      "c0_rho_h",
      [](const Array& s, double k, const std::string& conv) {
        return c0_rho_h(CovarianceInput(to_matrix(s)), k, parse_convention(conv));
      },
      py::arg("sigma"), py::arg("k"), py::arg("convention") = "unregularized");
  m.def(
      "c0_rho_h_identity",
      [](std::size_t p, double k, const std::string& conv) {
        return c0_rho_h_identity(p, k, parse_convention(conv));
      },
      py::arg("p"), py::arg("k"), py::arg("convention") = "unregularized");

  m.def(
      "fit",
      [](const Array& x, const Array& y, double k, std::vector<std::string> names, bool intercept,
         int max_iter, double tol) {
        const Dataset d = dataset_of(x, y, std::move(names), intercept);
        return fit_dict(irls_fit(d, config_of(k, max_iter, tol)), d.names);
      },
      py::arg("x"), py::arg("y"), py::arg("k") = kKc0, py::arg("names") = std::vector<std::string>{},
      py::arg("intercept") = true, py::arg("max_iter") = 50, py::arg("tol") = 1e-6);

  m.def(
      "criteria",
      [](const Array& x, const Array& y, double k, bool intercept, const std::string& conv) {
        const Dataset d = dataset_of(x, y, {}, intercept);
        const RobustFit f = irls_fit(d, config_of(k, 50, 1e-6));
        CriterionContext ctx(f, d.x, parse_convention(conv));
        py::dict out;
        for (CriterionId id : kAllCriteria) out[py::str(std::string(to_string(id)))] = score_dict(score(id, ctx));
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("k") = kKc0, py::arg("intercept") = true,
      py::arg("convention") = "unregularized");

  m.def(
      "select",
      [](const Array& x, const Array& y, const std::string& criterion, double k,
         std::vector<std::string> names, const std::string& conv) {
        const Dataset d = dataset_of(x, y, std::move(names), true);
        EvaluationOptions opts;
        opts.convention = parse_convention(conv);
        const SelectionResult res = select_best(d, criterion_of(criterion), config_of(k, 50, 1e-6), opts);
        const std::vector<std::string> candidates(d.names.begin() + 1, d.names.end());
        py::list ranked;
        for (const RankedModel& rm : res.ranked) {
          py::dict e = score_dict(rm.score);
          e["subset"] = rm.model.label(candidates);
          e["members"] = rm.model.members();
          e["mask"] = rm.model.mask;
          e["beta"] = from_vector(rm.fit.beta);
          e["sigma"] = rm.fit.sigma;
          ranked.append(e);
        }
        return ranked;
      },
      py::arg("x"), py::arg("y"), py::arg("criterion") = "RICOMP_C0RH", py::arg("k") = kKc0,
      py::arg("names") = std::vector<std::string>{}, py::arg("convention") = "unregularized");

  m.def(
      "tune_k",
      [](std::size_t p, const std::string& conv) {
        TuningOptions o;
        o.convention = parse_convention(conv);
        const TuningResult t = tune_k_c0(p, o);
        py::dict d;
        d["status"] = std::string(to_string(t.status));
        d["p"] = t.p;
        d["k"] = t.k;
        d["objective"] = t.objective;
        d["message"] = t.message;
        return d;
      },
      py::arg("p") = 2, py::arg("convention") = "unregularized");

  m.def(
      "simulate_mae",
      [](std::size_t n, double lc, const std::string& contaminant, std::size_t r, std::uint64_t seed,
         unsigned threads, const std::string& conv) {
        sim::ExperimentCell cell;
        {
          py::gil_scoped_release release;
          cell = sim::run_mae_experiment(scenario_of(n, lc, contaminant, r, seed),
                                            run_options(threads, conv));
        }
        return cell_dict(cell);
      },
      py::arg("n"), py::arg("lc"), py::arg("contaminant") = "shift", py::arg("r") = 1000,
      py::arg("seed") = 20201016, py::arg("threads") = 0, py::arg("convention") = "unregularized");

  m.def(
      "simulate_select",
      [](std::size_t n, double lc, const std::string& contaminant, std::size_t r, std::uint64_t seed,
         unsigned threads, const std::string& conv) {
        const std::vector<CriterionId> crits = {CriterionId::kAicH, CriterionId::kAicR,
                                                CriterionId::kRicompIfim, CriterionId::kRicompM,
                                                CriterionId::kRicompC0rh};
        sim::ExperimentCell cell;
        {
          py::gil_scoped_release release;
          cell = sim::run_selection_experiment(scenario_of(n, lc, contaminant, r, seed), crits,
                                                  run_options(threads, conv));
        }
        return cell_dict(cell);
      },
      py::arg("n"), py::arg("lc"), py::arg("contaminant") = "shift", py::arg("r") = 1000,
      py::arg("seed") = 20201016, py::arg("threads") = 0, py::arg("convention") = "unregularized");

  m.def(
      "read_csv",
      [](const std::string& path, const std::string& response) {
        const Dataset d = io::ingest_csv(path, response);
        py::dict out;
        out["x"] = from_matrix(d.x);
        out["y"] = from_vector(d.y);
        out["names"] = d.names;
        return out;
      },
      py::arg("path"), py::arg("response"));

  m.def(
      "run",
      [](const std::string& command, const std::string& input, const std::string& response, double k,
         const std::string& criterion, std::size_t r, std::uint64_t seed, const std::string& convention,
         unsigned threads) {
        RunConfig cfg;
        cfg.command = command;
        cfg.input = input;
        cfg.response = response;
        cfg.k = k;
        cfg.criterion = criterion_of(criterion);
        cfg.r = r;
        cfg.seed = seed;
        cfg.convention = parse_convention(convention);
        cfg.threads = threads;
        cfg.validate();
        return report_dict(run_command(cfg));
      },
      py::arg("command"), py::arg("input") = "", py::arg("response") = "", py::arg("k") = kKc0,
      py::arg("criterion") = "RICOMP_C0RH", py::arg("r") = 1000, py::arg("seed") = 20201016,
      py::arg("convention") = "unregularized", py::arg("threads") = 0);
}
