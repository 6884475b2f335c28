#pragma once

// Method-versus-reference comparison tables.
//
// Every selected method is sampled on a uniform set of times; each column is
// scored against the reference (the closed form when the model has one,
// otherwise Dormand-Prince at kReferenceTol). Samples a method cannot produce
// (near a Pade pole, past an integrator blow-up) are stored as NaN and left
// out of the error norms.

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvs/error.hpp"
#include "lvs/integrate.hpp"
#include "lvs/model.hpp"
#include "lvs/pade.hpp"
#include "lvs/taylor.hpp"
#include "lvs/vim.hpp"

namespace lvs {

inline constexpr double kReferenceTol = 1e-10;
inline constexpr double kRelativeErrorFlag = 0.10;

enum class MethodKind { Exact, Rk, Series, Pade, Vim, PrintedX3 };

struct MethodSpec {
  MethodKind kind = MethodKind::Exact;
  int order = 12;                    // Series
  int m = 1, n = 2;                  // Pade
  std::optional<Var> var;            // Pade; default z for even series
  Multiplier multiplier = Multiplier::Picard;  // Vim
  int iterations = 3;                // Vim
  double tol = kReferenceTol;        // Rk

  [[nodiscard]] std::string label() const {
    std::ostringstream os;
    switch (kind) {
      case MethodKind::Exact: os << "exact"; break;
      case MethodKind::Rk: os << "rk"; break;
      case MethodKind::Series: os << "series" << order; break;
      case MethodKind::Pade:
        os << "pade" << m << '_' << n;
        if (var) os << '_' << to_string(*var);
        break;
      case MethodKind::Vim:
        os << "vim_" << (multiplier == Multiplier::Picard ? "picard" : "exact_linear") << iterations;
        break;
      case MethodKind::PrintedX3: os << "printed_x3"; break;
    }
    return os.str();
  }
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::InvalidArgument, "expected an integer in method '" + context + "'");
  }
}

}  // namespace detail

/// One method token:
///   exact | rk | series[:order] | pade:m:n[:t|z] | vim[:picard|exact-linear[:iters]] | printed_x3
[[nodiscard]] inline MethodSpec parse_method(std::string_view token) {
  const auto parts = detail::split(token, ':');
  const std::string& head = parts[0];
  const std::string ctx(token);
  MethodSpec ms;
  if (head == "exact" && parts.size() == 1) {
    ms.kind = MethodKind::Exact;
  } else if (head == "rk" && parts.size() == 1) {
    ms.kind = MethodKind::Rk;
  } else if (head == "series" && parts.size() <= 2) {
    ms.kind = MethodKind::Series;
    if (parts.size() == 2) ms.order = detail::parse_int(parts[1], ctx);
    if (ms.order < 1) raise(ErrorKind::InvalidArgument, "series order must be >= 1");
  } else if (head == "pade" && (parts.size() == 3 || parts.size() == 4)) {
    ms.kind = MethodKind::Pade;
    ms.m = detail::parse_int(parts[1], ctx);
    ms.n = detail::parse_int(parts[2], ctx);
    if (parts.size() == 4) {
      if (parts[3] == "t") {
        ms.var = Var::T;
      } else if (parts[3] == "z") {
        ms.var = Var::Z;
      } else {
        raise(ErrorKind::InvalidArgument, "Pade variable must be t or z in '" + ctx + "'");
      }
    }
  } else if (head == "vim" && parts.size() <= 3) {
    ms.kind = MethodKind::Vim;
    if (parts.size() >= 2) {
      if (parts[1] == "picard") {
        ms.multiplier = Multiplier::Picard;
      } else if (parts[1] == "exact-linear" || parts[1] == "exact_linear") {
        ms.multiplier = Multiplier::ExactLinear;
      } else {
        raise(ErrorKind::InvalidArgument, "unknown multiplier in '" + ctx + "'");
      }
    }
    if (parts.size() == 3) ms.iterations = detail::parse_int(parts[2], ctx);
  } else if ((head == "printed_x3") && parts.size() == 1) {
    ms.kind = MethodKind::PrintedX3;
  } else {
    raise(ErrorKind::InvalidArgument, "unknown method '" + ctx + "'");
  }
  return ms;
}

/// Comma-separated list of method tokens.
[[nodiscard]] inline std::vector<MethodSpec> parse_methods(std::string_view list) {
  std::vector<MethodSpec> out;
  for (const auto& tok : detail::split(list, ',')) {
    if (!tok.empty()) out.push_back(parse_method(tok));
  }
  if (out.empty()) raise(ErrorKind::InvalidArgument, "no methods selected");
  return out;
}

struct ErrorStats {
  double max_abs = 0.0;
  double rms = 0.0;
  int used_samples = 0;
  int excluded_samples = 0;
  /// First sample time where |value - ref| > kRelativeErrorFlag * |ref|.
  std::optional<double> first_rel_exceed;
};

struct Column {
  std::string method;
  char component = 'x';
  std::vector<double> values;  // NaN marks an excluded sample
  ErrorStats error;
};

struct ComparisonTable {
  std::string model;
  std::string reference;  // "exact" or "rk"
  std::vector<double> times;
  std::vector<Column> reference_columns;  // x then y
  std::vector<Column> columns;
  nlohmann::json metadata;
};

struct CompareOptions {
  double t0 = 0.0;
  double t1 = 1.0;
  int samples = 101;
  int vim_grid = kDefaultGridSize;
  double reference_tol = kReferenceTol;
  std::string build_version = "unknown";
};

/// Interval used when the caller gives none: [0, 2] for caseI, [0, 1] otherwise.
[[nodiscard]] inline std::pair<double, double> default_interval(std::string_view model_label) {
  if (model_label == "caseI") return {0.0, 2.0};
  return {0.0, 1.0};
}

namespace detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Sampled {
  std::vector<double> x;
  std::optional<std::vector<double>> y;
};

inline Sampled sample_rk(const ModelSpec& m, const std::vector<double>& times, double t0, double t1, double tol) {
  const auto tr = integrate(m, t1, tol, IntegrateOptions{t0, std::nullopt});
  Sampled s{std::vector<double>(times.size(), kNaN), std::vector<double>(times.size(), kNaN)};
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > tr.t_end()) continue;
    const auto st = tr.state_at(times[i]);
    s.x[i] = st.x;
    (*s.y)[i] = st.y;
  }
  return s;
}

inline Sampled sample_method(const MethodSpec& ms, const ModelSpec& m, const std::optional<ExactSolution>& exact,
                             const std::vector<double>& times, const CompareOptions& opts) {
  const std::size_t n = times.size();
  switch (ms.kind) {
    case MethodKind::Exact: {
      if (!exact) raise(ErrorKind::InvalidArgument, "model '" + m.label + "' has no closed-form solution");
      Sampled s{std::vector<double>(n), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        const auto p = exact_eval(*exact, times[i]);
        s.x[i] = p.x;
        (*s.y)[i] = p.y;
      }
      return s;
    }
    case MethodKind::Rk: return sample_rk(m, times, opts.t0, opts.t1, ms.tol);
    case MethodKind::Series: {
      const auto sol = solve_series<Rational>(m, ms.order);
      const auto sx = series_cast<double>(sol.x);
      const auto sy = series_cast<double>(sol.y);
      Sampled s{std::vector<double>(n), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = series_eval(sx, times[i]);
        (*s.y)[i] = series_eval(sy, times[i]);
      }
      return s;
    }
    case MethodKind::Pade: {
      const auto sol = solve_series<Rational>(m, 2 * (ms.m + ms.n) + 1);
      auto approx_for = [&](const PowerSeries<Rational>& full) {
        std::optional<PowerSeries<Rational>> work;
        if (!ms.var || *ms.var == Var::Z) {
          try {
            work = to_even_variable(full);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotEvenSeries || ms.var) throw;
          }
        }
        if (!work) work = full.truncated(ms.m + ms.n);
        return pade_from_series(*work, ms.m, ms.n);
      };
      auto fill = [&](const RationalApproximant<Rational>& a) {
        const auto poles = pade_poles(a);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
          try {
            v[i] = rational_eval(a, times[i], poles);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::NearPole) throw;
            v[i] = kNaN;
          }
        }
        return v;
      };
      return {fill(approx_for(sol.x)), fill(approx_for(sol.y))};
    }
    case MethodKind::Vim: {
      VimConfig cfg;
      cfg.multiplier = ms.multiplier;
      cfg.iterations = ms.iterations;
      cfg.t0 = opts.t0;
      cfg.t1 = opts.t1;
      cfg.grid_size = opts.vim_grid;
      const auto run = vim_iterate(m, cfg);
      const auto& last = run.iterates.back();
      Sampled s{std::vector<double>(n), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = last.x.at(times[i]);
        (*s.y)[i] = last.y.at(times[i]);
      }
      return s;
    }
    case MethodKind::PrintedX3: {
      if (m.label != "example1") raise(ErrorKind::InvalidArgument, "printed_x3 only describes example1");
      Sampled s{std::vector<double>(n), std::nullopt};
      for (std::size_t i = 0; i < n; ++i) s.x[i] = printed_x3_eval(times[i]);
      return s;
    }
  }
  raise(ErrorKind::InvalidArgument, "unknown method");
}

inline ErrorStats score(const std::vector<double>& times, const std::vector<double>& values,
                        const std::vector<double>& ref) {
  ErrorStats e;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !std::isfinite(ref[i])) {
      ++e.excluded_samples;
      continue;
    }
    const double err = std::abs(values[i] - ref[i]);
    e.max_abs = std::max(e.max_abs, err);
    sum_sq += err * err;
    ++e.used_samples;
    if (!e.first_rel_exceed && err > kRelativeErrorFlag * std::abs(ref[i])) e.first_rel_exceed = times[i];
  }
  e.rms = e.used_samples > 0 ? std::sqrt(sum_sq / e.used_samples) : 0.0;
  return e;
}

}  // namespace detail

[[nodiscard]] inline ComparisonTable compare(const ModelSpec& m, const std::optional<ExactSolution>& exact,
                                             const std::vector<MethodSpec>& methods, const CompareOptions& opts) {
  if (!(opts.t1 > opts.t0)) raise(ErrorKind::InvalidArgument, "comparison interval needs t1 > t0");
  if (opts.samples < 2) raise(ErrorKind::InvalidArgument, "comparison needs at least 2 samples");

  ComparisonTable table;
  table.model = m.label;
  table.times.resize(static_cast<std::size_t>(opts.samples));
  for (int i = 0; i < opts.samples; ++i) {
    table.times[i] = opts.t0 + (opts.t1 - opts.t0) * i / (opts.samples - 1);
  }

  detail::Sampled ref;
  if (exact) {
    table.reference = "exact";
    MethodSpec e;
    e.kind = MethodKind::Exact;
    ref = detail::sample_method(e, m, exact, table.times, opts);
  } else {
    table.reference = "rk";
    ref = detail::sample_rk(m, table.times, opts.t0, opts.t1, opts.reference_tol);
    if (!std::isfinite(ref.x.back())) {
      raise(ErrorKind::NoReference, "no closed form and the reference integration diverged before t1");
    }
  }
  table.reference_columns.push_back({table.reference, 'x', ref.x, {}});
  table.reference_columns.push_back({table.reference, 'y', *ref.y, {}});

  for (const auto& ms : methods) {
    auto s = detail::sample_method(ms, m, exact, table.times, opts);
    const auto label = ms.label();
    table.columns.push_back({label, 'x', s.x, detail::score(table.times, s.x, ref.x)});
    if (s.y) table.columns.push_back({label, 'y', *s.y, detail::score(table.times, *s.y, *ref.y)});
  }

  std::vector<std::string> names;
  for (const auto& ms : methods) names.push_back(ms.label());
  table.metadata = {
      {"model", m.label},
      {"reference", table.reference},
      {"interval", {opts.t0, opts.t1}},
      {"samples", opts.samples},
      {"reference_tol", opts.reference_tol},
      {"vim_grid", opts.vim_grid},
      {"near_pole_guard", kNearPoleGuard},
      {"relative_error_flag", kRelativeErrorFlag},
      {"methods", names},
      {"build", opts.build_version},
  };
  return table;
}

namespace detail {

inline std::string csv_number(double v) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

/// Header: t, <ref>_x, <ref>_y, <method>_<c>..., then <method>_<c>_err per method column.
inline void write_csv(std::ostream& os, const ComparisonTable& t) {
  os << 't';
  for (const auto& c : t.reference_columns) os << ',' << "ref_" << c.method << '_' << c.component;
  for (const auto& c : t.columns) os << ',' << c.method << '_' << c.component;
  for (const auto& c : t.columns) os << ',' << c.method << '_' << c.component << "_err";
  os << '\n';
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << detail::csv_number(t.times[i]);
    for (const auto& c : t.reference_columns) os << ',' << detail::csv_number(c.values[i]);
    for (const auto& c : t.columns) os << ',' << detail::csv_number(c.values[i]);
    for (const auto& c : t.columns) {
      const auto& ref = t.reference_columns[c.component == 'x' ? 0 : 1].values;
      const double v = c.values[i];
      os << ',' << detail::csv_number(std::isfinite(v) && std::isfinite(ref[i]) ? std::abs(v - ref[i]) : detail::kNaN);
    }
    os << '\n';
  }
}

/// Summary lines: method, component, max_abs, rms, first time of >10% relative error.
inline void write_summary_csv(std::ostream& os, const ComparisonTable& t) {
  os << "method,component,max_abs_err,rms_err,used,excluded,first_rel_err_over_10pct\n";
  for (const auto& c : t.columns) {
    os << c.method << ',' << c.component << ',' << detail::csv_number(c.error.max_abs) << ','
       << detail::csv_number(c.error.rms) << ',' << c.error.used_samples << ',' << c.error.excluded_samples << ','
       << (c.error.first_rel_exceed ? detail::csv_number(*c.error.first_rel_exceed) : std::string()) << '\n';
  }
}

[[nodiscard]] inline nlohmann::json to_json(const ComparisonTable& t) {
  auto values = [](const std::vector<double>& v) {
    auto arr = nlohmann::json::array();
    for (double d : v) arr.push_back(std::isfinite(d) ? nlohmann::json(d) : nlohmann::json(nullptr));
    return arr;
  };
  nlohmann::json j;
  j["metadata"] = t.metadata;
  j["t"] = t.times;
  for (const auto& c : t.reference_columns) j["reference"][std::string(1, c.component)] = values(c.values);
  auto cols = nlohmann::json::array();
  for (const auto& c : t.columns) {
    nlohmann::json col{{"method", c.method},
                       {"component", std::string(1, c.component)},
                       {"values", values(c.values)},
                       {"max_abs_err", c.error.max_abs},
                       {"rms_err", c.error.rms},
                       {"used_samples", c.error.used_samples},
                       {"excluded_samples", c.error.excluded_samples}};
    col["first_rel_err_over_10pct"] =
        c.error.first_rel_exceed ? nlohmann::json(*c.error.first_rel_exceed) : nlohmann::json(nullptr);
    cols.push_back(std::move(col));
  }
  j["columns"] = std::move(cols);
  return j;
}

}  // namespace lvs
