#pragma once

// Variational iteration on a uniform grid.
//
// Two Lagrange multipliers are supported, both in derivative-free form so no
// sampled iterate is ever differenced:
//
//   Picard (lambda = -1):
//     x_{j+1}(t) = alpha + int_0^t [a x_j - b x_j y_j] ds
//     y_{j+1}(t) = beta  + int_0^t [-c y_j + d x_j y_j] ds
//
//   ExactLinear (lambda absorbs the linear part), A = int a, B = -int c:
//     x_{j+1}(t) = e^{A(t)} alpha - int_0^t e^{A(t)-A(s)} b x_j y_j ds
//     y_{j+1}(t) = e^{B(t)} beta  + int_0^t e^{B(t)-B(s)} d x_j y_j ds
//
// Every integral is a cumulative composite Simpson sum over the grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lvs/error.hpp"
#include "lvs/model.hpp"

namespace lvs {

inline constexpr int kDefaultGridSize = 2001;
inline constexpr int kDefaultMaxIterations = 12;

class GridFunction {
 public:
  GridFunction(double t0, double t1, std::vector<double> values) : t0_(t0), t1_(t1), values_(std::move(values)) {
    if (!(t1_ > t0_)) raise(ErrorKind::InvalidArgument, "grid needs t1 > t0");
    if (values_.size() < 3 || values_.size() % 2 == 0) {
      raise(ErrorKind::InvalidArgument, "grid needs an odd number (>= 3) of nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        raise(ErrorKind::IterateOverflow, "non-finite value at t = " + std::to_string(node(i)));
      }
    }
  }

  [[nodiscard]] double t0() const noexcept { return t0_; }
  [[nodiscard]] double t1() const noexcept { return t1_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double step() const noexcept { return (t1_ - t0_) / static_cast<double>(values_.size() - 1); }
  [[nodiscard]] double node(std::size_t i) const noexcept { return t0_ + step() * static_cast<double>(i); }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }

  /// Value at t in [t0, t1]: exact at nodes, cubic Lagrange in between.
  [[nodiscard]] double at(double t) const {
    if (t < t0_ - 1e-12 * (t1_ - t0_) || t > t1_ + 1e-12 * (t1_ - t0_)) {
      raise(ErrorKind::InvalidArgument, "grid query outside [t0, t1]");
    }
    const double u = (t - t0_) / step();
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9) return values_[static_cast<std::size_t>(nearest)];
    const auto last = static_cast<std::ptrdiff_t>(values_.size()) - 1;
    auto first = static_cast<std::ptrdiff_t>(std::floor(u)) - 1;
    first = std::clamp<std::ptrdiff_t>(first, 0, last - 3);
    double sum = 0.0;
    for (std::ptrdiff_t i = first; i < first + 4; ++i) {
      double w = 1.0;
      for (std::ptrdiff_t j = first; j < first + 4; ++j) {
        if (j != i) w *= (u - static_cast<double>(j)) / static_cast<double>(i - j);
      }
      sum += w * values_[static_cast<std::size_t>(i)];
    }
    return sum;
  }

 private:
  double t0_;
  double t1_;
  std::vector<double> values_;
};

/// F(t_i) = int_{t_0}^{t_i} f for uniformly spaced samples (odd count).
///
/// Even nodes use composite Simpson; the last half-panel at an odd node uses
/// the three-point rule h/12 (-f_{i-2} + 8 f_{i-1} + 5 f_i) (or its mirror at i = 1).
[[nodiscard]] inline std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) raise(ErrorKind::InvalidArgument, "cumulative Simpson needs >= 3 samples");
  out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
  for (std::size_t i = 2; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
  }
  return out;
}

enum class Multiplier { Picard, ExactLinear };

struct VimConfig {
  Multiplier multiplier = Multiplier::Picard;
  int iterations = 3;
  double t0 = 0.0;
  double t1 = 1.0;
  int grid_size = kDefaultGridSize;
  int max_iterations = kDefaultMaxIterations;
};

struct VimIterate {
  GridFunction x;
  GridFunction y;
};

struct VimRun {
  /// iterates[0] is the constant initial guess.
  std::vector<VimIterate> iterates;
  /// Per iterate: max over nodes of the integral-form defect of the system,
  /// |x_j - alpha - int (a x_j - b x_j y_j)| and the same for y.
  std::vector<double> residuals;
};

namespace detail {

inline std::vector<double> sample(const CoefficientFn& f, const std::vector<double>& t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = f.eval(t[i]);
  return out;
}

inline GridFunction checked_grid(double t0, double t1, std::vector<double> values, int iteration) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(values.size() - 1);
      raise(ErrorKind::IterateOverflow,
            "iterate " + std::to_string(iteration) + " overflows at node " + std::to_string(i) + " (t = " + std::to_string(t) + ")");
    }
  }
  return GridFunction(t0, t1, std::move(values));
}

struct SampledModel {
  std::vector<double> t, a, b, c, d;
  double h = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

inline double integral_defect(const SampledModel& sm, const VimIterate& it) {
  const std::size_t n = sm.t.size();
  std::vector<double> fx(n), fy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = it.x[i], y = it.y[i];
    fx[i] = sm.a[i] * x - sm.b[i] * x * y;
    fy[i] = -sm.c[i] * y + sm.d[i] * x * y;
  }
  const auto Ix = cumulative_simpson(fx, sm.h);
  const auto Iy = cumulative_simpson(fy, sm.h);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max({worst, std::abs(it.x[i] - sm.alpha - Ix[i]), std::abs(it.y[i] - sm.beta - Iy[i])});
  }
  return worst;
}

}  // namespace detail

[[nodiscard]] inline VimRun vim_iterate(const ModelSpec& m, const VimConfig& cfg) {
  if (cfg.iterations < 0 || cfg.iterations > cfg.max_iterations) {
    raise(ErrorKind::InvalidArgument, "iterations must lie in [0, " + std::to_string(cfg.max_iterations) + "]");
  }
  if (cfg.grid_size < 3 || cfg.grid_size % 2 == 0) raise(ErrorKind::InvalidArgument, "grid size must be odd and >= 3");
  if (!(cfg.t1 > cfg.t0)) raise(ErrorKind::InvalidArgument, "grid needs t1 > t0");
  if (auto s = m.first_singularity_in(cfg.t0, cfg.t1)) {
    raise(ErrorKind::CoefficientSingular, "coefficient pole at t = " + std::to_string(*s) + " inside the grid");
  }

  const auto n = static_cast<std::size_t>(cfg.grid_size);
  detail::SampledModel sm;
  sm.h = (cfg.t1 - cfg.t0) / static_cast<double>(n - 1);
  sm.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) sm.t[i] = cfg.t0 + sm.h * static_cast<double>(i);
  sm.t.back() = cfg.t1;
  sm.a = detail::sample(m.a, sm.t);
  sm.b = detail::sample(m.b, sm.t);
  sm.c = detail::sample(m.c, sm.t);
  sm.d = detail::sample(m.d, sm.t);
  sm.alpha = m.x0();
  sm.beta = m.y0();

  // e^{A(t)} and e^{B(t)} for the ExactLinear kernel, computed once per run.
  std::vector<double> expA, expB;
  if (cfg.multiplier == Multiplier::ExactLinear) {
    const auto A = cumulative_simpson(sm.a, sm.h);
    auto minus_c = sm.c;
    for (auto& v : minus_c) v = -v;
    const auto B = cumulative_simpson(minus_c, sm.h);
    expA.resize(n);
    expB.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      expA[i] = std::exp(A[i]);
      expB[i] = std::exp(B[i]);
    }
  }

  VimRun run;
  run.iterates.push_back({GridFunction(cfg.t0, cfg.t1, std::vector<double>(n, sm.alpha)),
                          GridFunction(cfg.t0, cfg.t1, std::vector<double>(n, sm.beta))});

  for (int j = 0; j < cfg.iterations; ++j) {
    const auto& cur = run.iterates.back();
    std::vector<double> fx(n), fy(n), nx(n), ny(n);
    if (cfg.multiplier == Multiplier::Picard) {
      for (std::size_t i = 0; i < n; ++i) {
        const double x = cur.x[i], y = cur.y[i];
        fx[i] = sm.a[i] * x - sm.b[i] * x * y;
        fy[i] = -sm.c[i] * y + sm.d[i] * x * y;
      }
      const auto Ix = cumulative_simpson(fx, sm.h);
      const auto Iy = cumulative_simpson(fy, sm.h);
      for (std::size_t i = 0; i < n; ++i) {
        nx[i] = sm.alpha + Ix[i];
        ny[i] = sm.beta + Iy[i];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double xy = cur.x[i] * cur.y[i];
        fx[i] = sm.b[i] * xy / expA[i];
        fy[i] = sm.d[i] * xy / expB[i];
      }
      const auto Ix = cumulative_simpson(fx, sm.h);
      const auto Iy = cumulative_simpson(fy, sm.h);
      for (std::size_t i = 0; i < n; ++i) {
        nx[i] = expA[i] * (sm.alpha - Ix[i]);
        ny[i] = expB[i] * (sm.beta + Iy[i]);
      }
    }
    run.iterates.push_back({detail::checked_grid(cfg.t0, cfg.t1, std::move(nx), j + 1),
                            detail::checked_grid(cfg.t0, cfg.t1, std::move(ny), j + 1)});
  }
  for (const auto& it : run.iterates) run.residuals.push_back(detail::integral_defect(sm, it));
  return run;
}

struct IterationError {
  int iteration = 0;
  double max_err_x = 0.0;
  double max_err_y = 0.0;
};

/// Max-abs deviation of every iterate from the closed form over the grid.
[[nodiscard]] inline std::vector<IterationError> vim_error_profile(const VimRun& run, const ExactSolution& exact) {
  if (run.iterates.empty()) return {};
  const auto& g = run.iterates.front().x;
  if (exact.crosses_singularity(g.t0(), g.t1())) {
    raise(ErrorKind::SingularTime, "grid [" + std::to_string(g.t0()) + ", " + std::to_string(g.t1()) +
                                       "] reaches a singular time of " + exact.preset);
  }
  std::vector<double> ex(g.size()), ey(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = exact_eval(exact, g.node(i));
    ex[i] = p.x;
    ey[i] = p.y;
  }
  std::vector<IterationError> out;
  for (std::size_t j = 0; j < run.iterates.size(); ++j) {
    IterationError e{static_cast<int>(j), 0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
      e.max_err_x = std::max(e.max_err_x, std::abs(run.iterates[j].x[i] - ex[i]));
      e.max_err_y = std::max(e.max_err_y, std::abs(run.iterates[j].y[i] - ey[i]));
    }
    out.push_back(e);
  }
  return out;
}

/// Third VIM iterate x_3(t) of example1 in the closed form found in the
/// literature:
///   256 + (1882/3 - 160 t^2 - 64 t^4) e^{-t^2/2} - (72 + 32 t^2) e^{-3t^2/2}
///       - (804 + 416 t^2 + 64 t^4) e^{-t^2} - (16/3) e^{-2 t^2}
/// Note that it tends to 256, not 0, as t grows.
[[nodiscard]] inline double printed_x3_eval(double t) {
  const double t2 = t * t;
  const double t4 = t2 * t2;
  const double e1 = std::exp(-t2 / 2.0);
  const double e2 = std::exp(-t2);
  const double e3 = std::exp(-1.5 * t2);
  const double e4 = std::exp(-2.0 * t2);
  // Integer constants first and the thirds together, so t = 0 gives 2 exactly.
  return (256.0 - 72.0 * e3 - 804.0 * e2) + (1882.0 * e1 - 16.0 * e4) / 3.0 - (160.0 * t2 + 64.0 * t4) * e1 -
         32.0 * t2 * e3 - (416.0 * t2 + 64.0 * t4) * e2;
}

}  // namespace lvs
