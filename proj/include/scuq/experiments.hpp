#pragma once

// The four benchmark experiments: smooth and discontinuous closed-form
// maps (with uniform and truncated-normal laws), the perturbed Sod shock
// tube, and the dam break over stochastic topography. Shared machinery
// for references, per-method surrogate sweeps and CSV artifacts.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scuq/csv.hpp"
#include "scuq/parallel.hpp"
#include "scuq/solvers.hpp"
#include "scuq/statistics.hpp"
#include "scuq/surrogate.hpp"

namespace scuq {

struct SolverParams {
  double dx = 1.0 / 200.0;
  double cfl = 0.45;
  double t_final = 0.1644;
  double gamma = 1.4;
  double g = 1.0;
};

struct ExperimentConfig {
  std::string experiment;  // ex1-uniform | ex1-normal | ex2 | ex3-euler | ex4-swe
  std::vector<SurrogateMethod> methods = {
      SurrogateMethod::Gpc, SurrogateMethod::BsplineInterp, SurrogateMethod::BsplineApprox,
      SurrogateMethod::SpSpline, SurrogateMethod::Cweno};
  std::vector<std::size_t> n_values;
  std::size_t samples = 1000000;       // M for the function experiments
  std::size_t field_samples = 100000;  // M for the per-cell PDE pipeline
  std::uint64_t seed = 42;
  SolverParams solver;
  std::string out_dir = "results";
  unsigned threads = 0;  // 0 = hardware concurrency
  double branch_threshold = 0.1;
  // Native by default: the verbatim estimator's range/(n_bins+1) width
  // biases the mean by a factor n_bins/(n_bins+1), which already exceeds
  // the target tolerances at the automatic bin counts used here.
  BinWidthConvention bins = BinWidthConvention::Native;
  SurrogateOptions surrogate;
};

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"ex1-uniform", "ex1-normal", "ex2", "ex3-euler",
                                               "ex4-swe"};
  return ids;
}

inline std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> v;
  bool known = false;
  for (const auto& id : experiment_ids()) known = known || id == cfg.experiment;
  if (!known) v.push_back("experiment: unknown id '" + cfg.experiment + "'");
  if (cfg.methods.empty()) v.push_back("methods: must be non-empty");
  if (cfg.n_values.empty()) v.push_back("N: must be non-empty");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
    if (cfg.n_values[i] <= cfg.n_values[i - 1]) {
      v.push_back("N: list must be sorted ascending");
      break;
    }
  if (cfg.samples < 1) v.push_back("M: must be positive");
  if (cfg.field_samples < 1) v.push_back("field_samples: must be positive");
  if (!(cfg.solver.dx > 0.0)) v.push_back("dx: must be positive");
  if (!(cfg.solver.cfl > 0.0 && cfg.solver.cfl < 1.0)) v.push_back("cfl: must be in (0,1)");
  if (!(cfg.solver.t_final > 0.0)) v.push_back("T: must be positive");
  if (!(cfg.solver.gamma > 1.0)) v.push_back("gamma: must exceed 1");
  if (!(cfg.solver.g > 0.0)) v.push_back("g: must be positive");
  if (!cfg.n_values.empty())
    for (auto m : cfg.methods)
      if (cfg.n_values.front() < method_min_nodes(m))
        v.push_back(std::string("N: ") + std::to_string(cfg.n_values.front()) +
                    " is below the minimum for method " + method_name(m));
  return v;
}

// ------------------------------------------------------------ closed forms

inline RandomVariable experiment_law(const ExperimentConfig& cfg) {
  if (cfg.experiment == "ex1-normal") return RandomVariable::normal(0.0, 0.33, 6.0);
  if (cfg.experiment == "ex3-euler") return RandomVariable::normal(0.0, 1.0 / 6.0, 6.0);
  return RandomVariable::uniform(-1.0, 1.0);
}

inline std::function<double(double)> experiment_map(const ExperimentConfig& cfg) {
  constexpr double pi = 3.14159265358979323846;
  if (cfg.experiment == "ex2") {
    const double thr = cfg.branch_threshold;
    return [thr](double xi) {
      return xi < thr ? -3.0 * std::cos(pi * xi) : 3.0 * std::cos(pi * xi);
    };
  }
  return [](double xi) { return 3.0 * std::cos(pi * xi); };
}

// Closed-form mean/std of the mapped variable, for error columns.
inline Moments experiment_analytic_moments(const ExperimentConfig& cfg) {
  constexpr double pi = 3.14159265358979323846;
  Moments m;
  if (cfg.experiment == "ex1-uniform") {
    m.mean = 0.0;
    m.variance = 4.5;
  } else if (cfg.experiment == "ex1-normal") {
    const double s = 0.33;
    m.mean = 3.0 * std::exp(-0.5 * pi * pi * s * s);
    const double second = 4.5 * (1.0 + std::exp(-2.0 * pi * pi * s * s));
    m.variance = second - m.mean * m.mean;
  } else if (cfg.experiment == "ex2") {
    const double t = cfg.branch_threshold;
    m.mean = -(3.0 / pi) * std::sin(pi * t);
    m.variance = 4.5 - m.mean * m.mean;
  }
  return m;
}

// -------------------------------------------------- function experiments

struct MethodSweepEntry {
  SurrogateMethod method = SurrogateMethod::Gpc;
  std::size_t n = 0;
  double l1_error = 0.0;
  Moments moments;
  EmpiricalPdf pdf;
};

struct FunctionExperimentResult {
  EmpiricalPdf reference;
  Moments reference_moments;
  Moments analytic;
  std::vector<MethodSweepEntry> entries;
  std::map<SurrogateMethod, PowerLawFit> fits;
};

inline CollocationSet collocation_for(SurrogateMethod method, const RandomVariable& rv,
                                      std::size_t n,
                                      const std::function<double(double)>& map) {
  std::vector<double> nodes;
  if (method == SurrogateMethod::Gpc) {
    const auto family = rv.kind() == RandomVariable::Kind::Uniform ? PolyFamily::Legendre
                                                                   : PolyFamily::Hermite;
    nodes = gauss_rule(family, n, rv).nodes;
  } else {
    nodes = uniform_nodes(rv, n);
  }
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = map(nodes[i]);
  return CollocationSet(std::move(nodes), std::move(values));
}

inline FunctionExperimentResult run_function_experiment(const ExperimentConfig& cfg) {
  const auto rv = experiment_law(cfg);
  const auto map = experiment_map(cfg);
  const auto samples = sample(rv, cfg.samples, cfg.seed);

  std::vector<double> u_ref(samples.values.size());
  for (std::size_t i = 0; i < u_ref.size(); ++i) u_ref[i] = map(samples.values[i]);

  FunctionExperimentResult res;
  res.reference = build_pdf(u_ref, auto_bins(u_ref));
  res.reference_moments = moments_from_pdf(res.reference, cfg.bins);
  res.analytic = experiment_analytic_moments(cfg);

  std::vector<std::pair<SurrogateMethod, std::size_t>> jobs;
  for (auto method : cfg.methods)
    for (auto n : cfg.n_values)
      if (n >= method_min_nodes(method)) jobs.emplace_back(method, n);

  res.entries.resize(jobs.size());
  parallel_for(jobs.size(), cfg.threads, [&](std::size_t k) {
    const auto [method, n] = jobs[k];
    const auto colloc = collocation_for(method, rv, n, map);
    const auto surrogate = build_surrogate(method, colloc, rv, cfg.surrogate);
    const auto vals = sample_surrogate(*surrogate, samples);
    MethodSweepEntry e;
    e.method = method;
    e.n = n;
    // same bin count as the reference, range adapted to the surrogate
    e.pdf = build_pdf(vals, res.reference.n_bins);
    e.l1_error = l1_pdf_error_indexed(res.reference, e.pdf);
    e.moments = moments_from_pdf(e.pdf, cfg.bins);
    res.entries[k] = std::move(e);
  });

  // Errors below ~50 bin-crossings out of M shared samples are estimator
  // quantization, not surrogate error; they are left out of the fit.
  const double fit_floor = 50.0 / static_cast<double>(cfg.samples);
  for (auto method : cfg.methods) {
    std::vector<double> ns, errs;
    for (const auto& e : res.entries)
      if (e.method == method && e.l1_error > fit_floor) {
        ns.push_back(static_cast<double>(e.n));
        errs.push_back(e.l1_error);
      }
    if (ns.size() >= 2) res.fits[method] = power_law_fit(ns, errs);
  }
  return res;
}

// ------------------------------------------------------ field experiments

struct FieldExperimentResult {
  // solution fields per node set; non-gPC methods share the uniform set
  SolutionField uniform_field;
  SolutionField quadrature_field;  // empty when gPC was not requested
  std::map<SurrogateMethod, FieldStatistics> stats;
  RandomVariable law = RandomVariable::uniform(-1.0, 1.0);
};

// Example 3: Sod shock tube with perturbed left density, density field.
inline SolutionField solve_euler_field(const std::vector<double>& xi_nodes,
                                       const SolverParams& sp, unsigned threads) {
  const auto j = static_cast<std::size_t>(std::llround(1.0 / sp.dx));
  Grid1D grid(0.0, 1.0, j);
  SolutionField field;
  field.xi_nodes = xi_nodes;
  field.values.resize(xi_nodes.size());
  field.x_centers.resize(j);
  for (std::size_t c = 0; c < j; ++c) field.x_centers[c] = grid.center(c);

  parallel_for(xi_nodes.size(), threads, [&](std::size_t n) {
    const double xi = xi_nodes[n];
    EulerModel model{sp.gamma};
    State state(j);
    for (std::size_t c = 0; c < j; ++c) {
      const double x = grid.center(c);
      const double rho = x <= 0.5 ? 1.0 + 0.1 * xi : 0.125;
      const double p = x <= 0.5 ? 1.0 : 0.1;
      state[c] = model.from_primitive({rho, 0.0, p});
    }
    const auto final_state = solve(model, grid, std::move(state), sp.t_final, sp.cfl);
    std::vector<double> rho(j);
    for (std::size_t c = 0; c < j; ++c) rho[c] = final_state[c][0];
    field.values[n] = std::move(rho);
  });
  return field;
}

// Example 4 bottom topography.
inline double ex4_topography(double x, double xi) {
  constexpr double pi = 3.14159265358979323846;
  if (std::abs(x) < 0.2) return 0.125 * xi + 0.125 * (std::cos(5.0 * pi * x) + 2.0);
  return 0.125 * xi + 0.125;
}

// Example 4: dam break over stochastic topography, water-surface field.
inline SolutionField solve_swe_field(const std::vector<double>& xi_nodes,
                                     const SolverParams& sp, unsigned threads) {
  const auto j = static_cast<std::size_t>(std::llround(2.0 / sp.dx));
  Grid1D grid(-1.0, 1.0, j);
  SolutionField field;
  field.xi_nodes = xi_nodes;
  field.values.resize(xi_nodes.size());
  field.x_centers.resize(j);
  for (std::size_t c = 0; c < j; ++c) field.x_centers[c] = grid.center(c);

  parallel_for(xi_nodes.size(), threads, [&](std::size_t n) {
    const double xi = xi_nodes[n];
    SweModel model;
    model.g = sp.g;
    model.z_interface.resize(j + 1);
    for (std::size_t i = 0; i <= j; ++i)
      model.z_interface[i] = ex4_topography(grid.x_min + static_cast<double>(i) * grid.dx(), xi);
    State state(j);
    for (std::size_t c = 0; c < j; ++c) {
      const double x = grid.center(c);
      const double w = x < 0.0 ? 1.0 : 0.5;
      const double h = std::max(0.0, w - model.z_center(c));
      state[c] = {h, 0.0, 0.0};
    }
    const auto final_state = solve(model, grid, std::move(state), sp.t_final, sp.cfl);
    std::vector<double> w(j);
    for (std::size_t c = 0; c < j; ++c) w[c] = final_state[c][0] + model.z_center(c);
    field.values[n] = std::move(w);
  });
  return field;
}

inline FieldExperimentResult run_field_experiment(const ExperimentConfig& cfg) {
  FieldExperimentResult res;
  const bool euler = cfg.experiment == "ex3-euler";
  res.law = experiment_law(cfg);
  const std::size_t n = cfg.n_values.back();

  bool wants_gpc = false, wants_other = false;
  for (auto m : cfg.methods) (m == SurrogateMethod::Gpc ? wants_gpc : wants_other) = true;

  SolverParams sp = cfg.solver;
  if (!euler && cfg.experiment != "ex4-swe")
    throw std::invalid_argument("run_field_experiment: not a field experiment");

  auto solve_nodes = [&](const std::vector<double>& nodes) {
    return euler ? solve_euler_field(nodes, sp, cfg.threads)
                 : solve_swe_field(nodes, sp, cfg.threads);
  };
  if (wants_other) res.uniform_field = solve_nodes(uniform_nodes(res.law, n));
  if (wants_gpc) {
    const auto family = res.law.kind() == RandomVariable::Kind::Uniform ? PolyFamily::Legendre
                                                                        : PolyFamily::Hermite;
    res.quadrature_field = solve_nodes(gauss_rule(family, n, res.law).nodes);
  }

  const auto samples = sample(res.law, cfg.field_samples, cfg.seed);
  for (auto method : cfg.methods) {
    const auto& field =
        method == SurrogateMethod::Gpc ? res.quadrature_field : res.uniform_field;
    res.stats[method] = field_pipeline(field, method, res.law, samples, cfg.bins,
                                       cfg.surrogate);
  }
  return res;
}

// ----------------------------------------------------------- artifacts

struct RunManifest {
  std::vector<std::string> files;
  std::string out_dir;
};

namespace detail {

inline void write_pdf_csv(const std::string& path, const EmpiricalPdf& pdf,
                          RunManifest& manifest) {
  csv::Writer w(path);
  w.header({"bin_midpoint", "density"});
  for (std::size_t i = 0; i < pdf.n_bins; ++i) w.row(pdf.midpoint(i), pdf.densities[i]);
  manifest.files.push_back(path);
}

inline void write_function_artifacts(const ExperimentConfig& cfg,
                                     const FunctionExperimentResult& res,
                                     RunManifest& manifest) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  write_pdf_csv((dir / "reference.csv").string(), res.reference, manifest);
  for (const auto& e : res.entries)
    write_pdf_csv((dir / ("pdf_" + std::string(method_name(e.method)) + "_N" +
                          std::to_string(e.n) + ".csv"))
                      .string(),
                  e.pdf, manifest);

  {
    csv::Writer w((dir / "errors.csv").string());
    w.header({"method", "N", "l1_error"});
    for (const auto& e : res.entries) w.row(method_name(e.method), e.n, e.l1_error);
    manifest.files.push_back((dir / "errors.csv").string());
  }
  {
    csv::Writer w((dir / "fits.csv").string());
    w.header({"method", "K", "k", "residual"});
    for (auto method : cfg.methods) {
      const auto it = res.fits.find(method);
      if (it != res.fits.end())
        w.row(method_name(method), it->second.amplitude, it->second.exponent,
              it->second.residual);
      else
        w.row(method_name(method), "nan", "nan", "nan");
    }
    manifest.files.push_back((dir / "fits.csv").string());
  }
  {
    csv::Writer w((dir / "moments.csv").string());
    w.header({"method", "N", "mean", "std", "mean_error", "std_error"});
    for (const auto& e : res.entries) {
      const double sd = std::sqrt(std::max(0.0, e.moments.variance));
      w.row(method_name(e.method), e.n, e.moments.mean, sd,
            std::abs(e.moments.mean - res.analytic.mean),
            std::abs(sd - std::sqrt(res.analytic.variance)));
    }
    manifest.files.push_back((dir / "moments.csv").string());
  }
}

inline void write_field_csv(const std::string& dir_name, const std::string& tag,
                            const SolutionField& field, bool euler, RunManifest& manifest) {
  namespace fs = std::filesystem;
  const fs::path dir(dir_name);
  fs::create_directories(dir);
  csv::Writer man((dir / ("manifest_" + tag + ".csv")).string());
  man.header({"node_index", "xi", "file"});
  for (std::size_t n = 0; n < field.xi_nodes.size(); ++n) {
    const std::string fname = "solution_" + tag + "_" + std::to_string(n) + ".csv";
    csv::Writer w((dir / fname).string());
    if (euler)
      w.header({"x", "rho"});
    else
      w.header({"x", "w"});
    for (std::size_t c = 0; c < field.x_centers.size(); ++c)
      w.row(field.x_centers[c], field.values[n][c]);
    man.row(n, field.xi_nodes[n], fname);
    manifest.files.push_back((dir / fname).string());
  }
  manifest.files.push_back((dir / ("manifest_" + tag + ".csv")).string());
}

inline void write_field_artifacts(const ExperimentConfig& cfg, const FieldExperimentResult& res,
                                  RunManifest& manifest) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  const bool euler = cfg.experiment == "ex3-euler";
  if (!res.uniform_field.xi_nodes.empty())
    write_field_csv((dir / "solutions").string(), "uniform", res.uniform_field, euler,
                    manifest);
  if (!res.quadrature_field.xi_nodes.empty())
    write_field_csv((dir / "solutions").string(), "quadrature", res.quadrature_field, euler,
                    manifest);

  for (const auto& [method, stats] : res.stats) {
    const std::string mname = method_name(method);
    {
      csv::Writer w((dir / ("mean_std_" + mname + ".csv")).string());
      w.header({"x", "mean", "std"});
      for (std::size_t c = 0; c < stats.x_centers.size(); ++c)
        w.row(stats.x_centers[c], stats.mean[c], stats.stddev[c]);
      manifest.files.push_back((dir / ("mean_std_" + mname + ".csv")).string());
    }
    {
      csv::Writer w((dir / ("pdf_" + mname + ".csv")).string());
      w.header({"x", "bin_midpoint", "density"});
      for (std::size_t c = 0; c < stats.x_centers.size(); ++c)
        for (std::size_t i = 0; i < stats.pdfs[c].n_bins; ++i)
          w.row(stats.x_centers[c], stats.pdfs[c].midpoint(i), stats.pdfs[c].densities[i]);
      manifest.files.push_back((dir / ("pdf_" + mname + ".csv")).string());
    }
  }
}

}  // namespace detail

// Executes the configured experiment and writes all artifacts under
// cfg.out_dir. Throws on invalid configs and solver failures.
inline RunManifest run(const ExperimentConfig& cfg) {
  const auto violations = validate(cfg);
  if (!violations.empty()) {
    std::string what = "invalid config:";
    for (const auto& v : violations) what += "\n  " + v;
    throw std::invalid_argument(what);
  }
  std::filesystem::create_directories(cfg.out_dir);
  RunManifest manifest;
  manifest.out_dir = cfg.out_dir;
  if (cfg.experiment == "ex3-euler" || cfg.experiment == "ex4-swe") {
    const auto res = run_field_experiment(cfg);
    detail::write_field_artifacts(cfg, res, manifest);
  } else {
    const auto res = run_function_experiment(cfg);
    detail::write_function_artifacts(cfg, res, manifest);
  }
  {
    // summary of what was produced and with which inputs
    std::ofstream mf(std::filesystem::path(cfg.out_dir) / "manifest.json",
                     std::ios::binary);
    mf << "{\n  \"experiment\": \"" << cfg.experiment << "\",\n";
    mf << "  \"seed\": " << cfg.seed << ",\n";
    mf << "  \"samples\": " << cfg.samples << ",\n";
    mf << "  \"field_samples\": " << cfg.field_samples << ",\n";
    mf << "  \"methods\": [";
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
      mf << (i ? ", " : "") << '"' << method_name(cfg.methods[i]) << '"';
    mf << "],\n  \"N\": [";
    for (std::size_t i = 0; i < cfg.n_values.size(); ++i)
      mf << (i ? ", " : "") << cfg.n_values[i];
    mf << "],\n  \"files\": [\n";
    for (std::size_t i = 0; i < manifest.files.size(); ++i)
      mf << "    \""
         << std::filesystem::proximate(manifest.files[i], cfg.out_dir).generic_string()
         << (i + 1 < manifest.files.size() ? "\",\n" : "\"\n");
    mf << "  ]\n}\n";
    manifest.files.push_back(
        (std::filesystem::path(cfg.out_dir) / "manifest.json").string());
  }
  return manifest;
}

}  // namespace scuq
