// Command-line front end: series, pade, poles, vim, integrate, equilibria, compare.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lvs/lvs.hpp"

#ifndef LVS_BUILD_VERSION
#define LVS_BUILD_VERSION "unknown"
#endif

namespace {

struct LoadedModel {
  lvs::ModelSpec model;
  std::optional<lvs::ExactSolution> exact;
};

LoadedModel load(const std::string& name) {
  for (const auto& p : lvs::preset_names()) {
    if (p == name) {
      auto preset = lvs::preset(name);
      return {std::move(preset.model), std::move(preset.exact)};
    }
  }
  if (std::filesystem::exists(name)) return {lvs::load_model_file(name), std::nullopt};
  return {lvs::preset(name).model, std::nullopt};  // raises UnknownPreset
}

std::vector<std::pair<int, int>> parse_table(const std::string& spec) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) lvs::raise(lvs::ErrorKind::InvalidArgument, "table entries look like m:n");
    out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
  }
  return out;
}

/// Writes to the named file, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) lvs::raise(lvs::ErrorKind::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

void run_series(const std::string& model_name, int order, const std::string& var, const std::string& component) {
  const auto lm = load(model_name);
  const auto sol = lvs::solve_series<lvs::Rational>(lm.model, order);
  for (const auto& [name, series] : {std::pair{"x", &sol.x}, std::pair{"y", &sol.y}}) {
    if (component != "both" && component != name) continue;
    lvs::PowerSeries<lvs::Rational> s = *series;
    if (var == "z") s = lvs::to_even_variable(s);
    std::cout << "# " << name << "(t) of " << lm.model.label << ", order " << s.order() << " in "
              << lvs::to_string(s.var()) << '\n';
    std::cout << "power,exact,decimal\n";
    for (int j = 0; j <= s.order(); ++j) {
      std::cout << j << ',' << s[j].str() << ',' << fmt(lvs::to_double(s[j]), 17) << '\n';
    }
  }
}

void run_pade(const std::string& model_name, int m, int n, const std::string& var, const std::string& component) {
  const auto lm = load(model_name);
  const int order = var == "z" ? 2 * (m + n) : m + n;
  const auto sol = lvs::solve_series<lvs::Rational>(lm.model, std::max(order, 1));
  auto s = component == "y" ? sol.y : sol.x;
  if (var == "z") s = lvs::to_even_variable(s);
  const auto approx = lvs::pade_from_series(s, m, n);
  const auto scaled = lvs::scaled_integer_form(approx);
  std::cout << component << ' ' << approx.label();
  if (approx.var == lvs::Var::Z) std::cout << " = " << approx.t_label();
  std::cout << " for " << lm.model.label << '\n';
  std::cout << "normalized: (" << lvs::format_rational_poly(approx.numerator, approx.var) << ") / ("
            << lvs::format_rational_poly(approx.denominator, approx.var) << ")\n";
  std::cout << "scaled:     " << lvs::format_scaled(scaled) << '\n';
  const auto poles = lvs::pade_poles(approx);
  std::cout << "real poles in " << lvs::to_string(approx.var) << ':';
  for (const auto& p : poles.real) std::cout << ' ' << fmt(p.location, 12);
  if (poles.real.empty()) std::cout << " none";
  std::cout << " (complex: " << poles.complex_count << ")\n";
}

void write_pole_csv(std::ostream& os, const std::vector<lvs::PoleStudyEntry>& study) {
  const double two_ln2 = 2.0 * std::numbers::ln2;
  os << "m,n,pole_z,abs_err_vs_2ln2\n";
  for (const auto& e : study) {
    os << e.m << ',' << e.n << ',';
    if (e.pole) {
      os << fmt(e.pole->location, 17) << ',' << fmt(std::abs(e.pole->location - two_ln2), 6);
    } else {
      os << "nan,nan";
    }
    os << '\n';
  }
}

void run_poles(const std::string& model_name, const std::string& table_spec, const std::string& component,
               const std::string& format, const std::string& csv_path) {
  const auto lm = load(model_name);
  lvs::PoleStudyOptions opts;
  opts.component = component == "y" ? lvs::Component::Y : lvs::Component::X;
  const auto study = lvs::pole_study(lm.model, parse_table(table_spec), opts);

  if (format == "csv") {
    write_pole_csv(std::cout, study);
  } else {
    const double two_ln2 = 2.0 * std::numbers::ln2;
    std::cout << std::left << std::setw(8) << "[m/n]" << std::setw(5) << "var" << std::setw(20) << "pole"
              << std::setw(14) << "|pole-2ln2|" << "note\n";
    for (const auto& e : study) {
      std::ostringstream label;
      label << '[' << e.m << '/' << e.n << ']';
      std::cout << std::setw(8) << label.str() << std::setw(5) << lvs::to_string(e.var);
      if (e.pole) {
        std::cout << std::setw(20) << fmt(e.pole->location, 12) << std::setw(14)
                  << fmt(std::abs(e.pole->location - two_ln2), 3);
      } else {
        std::cout << std::setw(20) << "-" << std::setw(14) << "-";
      }
      std::cout << (e.error ? *e.error : (e.pole ? "" : "no positive real pole")) << '\n';
    }
  }
  if (!csv_path.empty()) {
    Output out(csv_path);
    write_pole_csv(out.stream(), study);
  }
}

void run_vim(const std::string& model_name, int iters, const std::string& multiplier, double t1, int grid,
             const std::string& nodes_path) {
  const auto lm = load(model_name);
  lvs::VimConfig cfg;
  cfg.iterations = iters;
  cfg.t1 = t1;
  cfg.grid_size = grid;
  if (multiplier == "picard") {
    cfg.multiplier = lvs::Multiplier::Picard;
  } else if (multiplier == "exact-linear") {
    cfg.multiplier = lvs::Multiplier::ExactLinear;
  } else {
    lvs::raise(lvs::ErrorKind::InvalidArgument, "multiplier must be picard or exact-linear");
  }
  const auto run = lvs::vim_iterate(lm.model, cfg);
  if (lm.exact) {
    std::cout << "iter,max_err_x,max_err_y\n";
    for (const auto& e : lvs::vim_error_profile(run, *lm.exact)) {
      std::cout << e.iteration << ',' << fmt(e.max_err_x, 10) << ',' << fmt(e.max_err_y, 10) << '\n';
    }
  } else {
    std::cerr << "note: " << lm.model.label << " has no closed form; reporting the integral-form residual\n";
    std::cout << "iter,residual\n";
    for (std::size_t j = 0; j < run.residuals.size(); ++j) std::cout << j << ',' << fmt(run.residuals[j], 10) << '\n';
  }
  if (!nodes_path.empty()) {
    Output out(nodes_path);
    auto& os = out.stream();
    os << "iter,t,x,y\n";
    for (std::size_t j = 0; j < run.iterates.size(); ++j) {
      const auto& it = run.iterates[j];
      for (std::size_t i = 0; i < it.x.size(); ++i) {
        os << j << ',' << fmt(it.x.node(i), 17) << ',' << fmt(it.x[i], 17) << ',' << fmt(it.y[i], 17) << '\n';
      }
    }
  }
}

void run_integrate(const std::string& model_name, double t1, double tol, const std::string& format,
                   const std::string& path) {
  const auto lm = load(model_name);
  const auto tr = lvs::integrate(lm.model, t1, tol);
  Output out(path);
  auto& os = out.stream();
  if (format == "json") {
    nlohmann::json j;
    j["model"] = lm.model.label;
    j["tol"] = tol;
    j["status"] = tr.completed() ? "Completed" : "BlowUpDetected";
    j["t_stop"] = tr.t_stop() ? nlohmann::json(*tr.t_stop()) : nlohmann::json(nullptr);
    j["accepted"] = tr.stats().accepted;
    j["rejected"] = tr.stats().rejected;
    j["t"] = tr.times();
    j["x"] = tr.xs();
    j["y"] = tr.ys();
    os << j.dump(2) << '\n';
  } else {
    os << "t,x,y\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
      os << fmt(tr.times()[i], 17) << ',' << fmt(tr.xs()[i], 17) << ',' << fmt(tr.ys()[i], 17) << '\n';
    }
  }
  if (!tr.completed()) std::cerr << "blow-up detected at t = " << fmt(*tr.t_stop(), 12) << '\n';
}

void run_equilibria(const std::string& model_name) {
  const auto lm = load(model_name);
  auto cplx = [](std::complex<double> z) {
    std::ostringstream os;
    os << std::setprecision(12) << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
  };
  for (const auto& p : lvs::equilibria(lm.model)) {
    std::cout << '(' << fmt(p.x) << ", " << fmt(p.y) << ")  eigenvalues {" << cplx(p.eigenvalues[0]) << ", "
              << cplx(p.eigenvalues[1]) << "}  " << lvs::to_string(p.classification) << '\n';
  }
}

void run_compare(const std::string& model_name, const std::string& methods, std::optional<double> t0,
                 std::optional<double> t1, int samples, int grid, const std::string& format, const std::string& path,
                 const std::string& summary_path) {
  const auto lm = load(model_name);
  const auto [d0, d1] = lvs::default_interval(lm.model.label);
  lvs::CompareOptions opts;
  opts.t0 = t0.value_or(d0);
  opts.t1 = t1.value_or(d1);
  opts.samples = samples;
  opts.vim_grid = grid;
  opts.build_version = LVS_BUILD_VERSION;
  const auto table = lvs::compare(lm.model, lm.exact, lvs::parse_methods(methods), opts);
  Output out(path);
  if (format == "json") {
    out.stream() << lvs::to_json(table).dump(2) << '\n';
  } else {
    lvs::write_csv(out.stream(), table);
  }
  if (!summary_path.empty()) {
    Output summary(summary_path);
    lvs::write_summary_csv(summary.stream(), table);
  } else {
    lvs::write_summary_csv(std::cerr, table);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Series, Pade, variational-iteration and Runge-Kutta solutions of prey-predator systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LVS_BUILD_VERSION);

  std::string model = "example1";
  const std::string model_help = "preset (example1, example2, caseI) or path to a model JSON file";

  int series_order = 12;
  std::string series_var = "t", series_comp = "both";
  auto* series = app.add_subcommand("series", "Taylor coefficients of the solution about t = 0");
  series->add_option("--model", model, model_help);
  series->add_option("--order", series_order, "truncation order in t")->check(CLI::PositiveNumber);
  series->add_option("--var", series_var, "t, or z = t^2 for even solutions")->check(CLI::IsMember({"t", "z"}));
  series->add_option("--component", series_comp, "x, y or both")->check(CLI::IsMember({"x", "y", "both"}));

  int pade_m = 1, pade_n = 2;
  std::string pade_var = "z", pade_comp = "x";
  auto* pade = app.add_subcommand("pade", "[m/n] Pade approximant of the solution series");
  pade->add_option("--model", model, model_help);
  pade->add_option("--m", pade_m, "numerator degree")->check(CLI::NonNegativeNumber);
  pade->add_option("--n", pade_n, "denominator degree")->check(CLI::NonNegativeNumber);
  pade->add_option("--var", pade_var, "t or z = t^2")->check(CLI::IsMember({"t", "z"}));
  pade->add_option("--component", pade_comp, "x or y")->check(CLI::IsMember({"x", "y"}));

  std::string poles_table = "1:2,2:3,3:4,4:5", poles_comp = "x", poles_format = "text", poles_csv;
  auto* poles = app.add_subcommand("poles", "smallest positive pole of a sequence of Pade approximants");
  poles->add_option("--model", model, model_help);
  poles->add_option("--table", poles_table, "comma-separated m:n entries");
  poles->add_option("--component", poles_comp, "x or y")->check(CLI::IsMember({"x", "y"}));
  poles->add_option("--format", poles_format, "text table or csv on stdout")->check(CLI::IsMember({"text", "csv"}));
  poles->add_option("--csv", poles_csv, "also write m,n,pole_z,abs_err_vs_2ln2 to this file");

  int vim_iters = 3, vim_grid = lvs::kDefaultGridSize;
  std::string vim_mult = "picard", vim_nodes;
  double vim_t1 = 0.6;
  auto* vim = app.add_subcommand("vim", "variational iteration on a Simpson grid");
  vim->add_option("--model", model, model_help);
  vim->add_option("--iters", vim_iters, "number of iterations")->check(CLI::Range(0, lvs::kDefaultMaxIterations));
  vim->add_option("--multiplier", vim_mult, "picard or exact-linear")
      ->check(CLI::IsMember({"picard", "exact-linear"}));
  vim->add_option("--t1", vim_t1, "grid end");
  vim->add_option("--grid", vim_grid, "odd node count");
  vim->add_option("--nodes", vim_nodes, "dump every iterate's nodes to this CSV file");

  double int_t1 = 1.0, int_tol = 1e-10;
  std::string int_out = "csv", int_file;
  auto* integ = app.add_subcommand("integrate", "adaptive Dormand-Prince reference solution");
  integ->add_option("--model", model, model_help);
  integ->add_option("--t1", int_t1, "end time");
  integ->add_option("--tol", int_tol, "mixed absolute/relative tolerance in [1e-13, 1e-3]");
  integ->add_option("--out", int_out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  integ->add_option("-o,--output", int_file, "output file (default stdout)");

  auto* equi = app.add_subcommand("equilibria", "stationary points of a constant-coefficient model");
  equi->add_option("--model", model, model_help);

  std::string cmp_methods = "exact,pade:1:2,printed_x3", cmp_out = "csv", cmp_file, cmp_summary;
  std::optional<double> cmp_t0, cmp_t1;
  int cmp_samples = 101, cmp_grid = lvs::kDefaultGridSize;
  auto* cmp = app.add_subcommand("compare", "method-versus-reference table");
  cmp->add_option("--model", model, model_help);
  cmp->add_option("--methods", cmp_methods,
                  "comma list of exact, rk, series[:N], pade:m:n[:t|z], vim[:picard|exact-linear[:iters]], printed_x3");
  cmp->add_option("--t0", cmp_t0, "interval start (default 0)");
  cmp->add_option("--t1", cmp_t1, "interval end (default 2 for caseI, 1 otherwise)");
  cmp->add_option("--samples", cmp_samples, "number of sample times")->check(CLI::Range(2, 1000000));
  cmp->add_option("--grid", cmp_grid, "VIM grid node count (odd)");
  cmp->add_option("--out", cmp_out, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmp->add_option("-o,--output", cmp_file, "output file (default stdout)");
  cmp->add_option("--summary", cmp_summary, "write per-method error summary CSV here (default stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*series) run_series(model, series_order, series_var, series_comp);
    if (*pade) run_pade(model, pade_m, pade_n, pade_var, pade_comp);
    if (*poles) run_poles(model, poles_table, poles_comp, poles_format, poles_csv);
    if (*vim) run_vim(model, vim_iters, vim_mult, vim_t1, vim_grid, vim_nodes);
    if (*integ) run_integrate(model, int_t1, int_tol, int_out, int_file);
    if (*equi) run_equilibria(model);
    if (*cmp) run_compare(model, cmp_methods, cmp_t0, cmp_t1, cmp_samples, cmp_grid, cmp_out, cmp_file, cmp_summary);
  } catch (const lvs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
