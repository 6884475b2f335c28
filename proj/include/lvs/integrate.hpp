#pragma once

// Reference solver: Dormand-Prince 5(4) with PI step control and the pair's
// quartic continuous extension. A trajectory whose state exceeds
// kBlowUpCap, or whose step collapses below kMinStep, ends with
// BlowUpDetected instead of an error so the pole location is reported.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvs/error.hpp"
#include "lvs/model.hpp"

namespace lvs {

inline constexpr double kBlowUpCap = 1e8;
inline constexpr double kMinStep = 1e-14;
inline constexpr double kMinTol = 1e-13;
inline constexpr double kMaxTol = 1e-3;

enum class TrajectoryStatus { Completed, BlowUpDetected };

struct ControllerStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

struct State2 {
  double x = 0.0;
  double y = 0.0;
};

class Trajectory {
 public:
  [[nodiscard]] const std::vector<double>& times() const noexcept { return t_; }
  [[nodiscard]] const std::vector<double>& xs() const noexcept { return x_; }
  [[nodiscard]] const std::vector<double>& ys() const noexcept { return y_; }
  [[nodiscard]] std::size_t size() const noexcept { return t_.size(); }
  [[nodiscard]] TrajectoryStatus status() const noexcept { return status_; }
  [[nodiscard]] bool completed() const noexcept { return status_ == TrajectoryStatus::Completed; }
  /// Time of the last accepted step when the run stopped on blow-up.
  [[nodiscard]] std::optional<double> t_stop() const noexcept { return t_stop_; }
  [[nodiscard]] const ControllerStats& stats() const noexcept { return stats_; }
  [[nodiscard]] double t_begin() const { return t_.front(); }
  [[nodiscard]] double t_end() const { return t_.back(); }

  /// Dense output at any t in [t_begin, t_end].
  [[nodiscard]] State2 state_at(double t) const {
    if (t < t_.front() || t > t_.back()) {
      raise(ErrorKind::InvalidArgument, "dense output query t = " + std::to_string(t) + " outside the trajectory");
    }
    if (t_.size() == 1 || t == t_.back()) return {x_.back(), y_.back()};
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(t_.begin(), it)) - 1;
    const double h = t_[i + 1] - t_[i];
    const double theta = (t - t_[i]) / h;
    const double theta1 = 1.0 - theta;
    auto interp = [&](const std::array<double, 5>& r) {
      return r[0] + theta * (r[1] + theta1 * (r[2] + theta * (r[3] + theta1 * r[4])));
    };
    return {interp(dense_[i][0]), interp(dense_[i][1])};
  }

 private:
  friend class DormandPrince;
  std::vector<double> t_;
  std::vector<double> x_;
  std::vector<double> y_;
  // Per step and component: Hairer's rcont1..rcont5.
  std::vector<std::array<std::array<double, 5>, 2>> dense_;
  TrajectoryStatus status_ = TrajectoryStatus::Completed;
  std::optional<double> t_stop_;
  ControllerStats stats_;
};

struct IntegrateOptions {
  double t0 = 0.0;
  /// Overrides (alpha, beta) as the state at t0.
  std::optional<State2> initial;
  long max_steps = 2'000'000;
};

class DormandPrince {
 public:
  DormandPrince(const ModelSpec& m, double tol) : model_(m), tol_(tol) {}

  [[nodiscard]] Trajectory run(double t1, const IntegrateOptions& opts) {
    Trajectory tr;
    double t = opts.t0;
    std::array<double, 2> y = opts.initial ? std::array<double, 2>{opts.initial->x, opts.initial->y}
                                           : std::array<double, 2>{model_.x0(), model_.y0()};
    tr.t_.push_back(t);
    tr.x_.push_back(y[0]);
    tr.y_.push_back(y[1]);

    std::array<double, 2> k1{};
    if (!rhs(t, y, k1, tr.stats_)) return stop(tr, t);
    double h = initial_step(t, y, k1, t1 - t, tr.stats_);
    double facold = 1e-4;

    while (t < t1) {
      if (tr.stats_.accepted + tr.stats_.rejected >= opts.max_steps) {
        raise(ErrorKind::InvalidArgument, "step budget exhausted before t1");
      }
      if (h < kMinStep) return stop(tr, t);
      bool last = false;
      if (t + 1.01 * h >= t1) {
        h = t1 - t;
        last = true;
      }

      Stages st;
      st.k[0] = k1;
      const bool ok = stages(t, y, h, st, tr.stats_);
      double err = ok ? error_norm(y, st, h) : std::numeric_limits<double>::infinity();

      if (!ok || !std::isfinite(err)) {
        ++tr.stats_.rejected;
        h *= 0.25;
        continue;
      }

      const double fac11 = std::pow(err, kExpo1);
      if (err <= 1.0) {
        facold = std::max(err, 1e-4);
        ++tr.stats_.accepted;
        const double t_new = last ? t1 : t + h;
        append_dense(tr, y, st, h);
        y = st.y_new;
        t = t_new;
        k1 = st.k[6];
        tr.t_.push_back(t);
        tr.x_.push_back(y[0]);
        tr.y_.push_back(y[1]);
        if (std::max(std::abs(y[0]), std::abs(y[1])) > kBlowUpCap) return stop(tr, t);
        double fac = fac11 / std::pow(facold, kBeta);
        fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
        h = h / fac;
      } else {
        ++tr.stats_.rejected;
        h = h / std::min(1.0 / kFacMin, fac11 / kSafety);
      }
    }
    return tr;
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kFacMin = 0.2;
  static constexpr double kFacMax = 10.0;
  static constexpr double kBeta = 0.04;
  static constexpr double kExpo1 = 0.2 - kBeta * 0.75;

  struct Stages {
    std::array<std::array<double, 2>, 7> k{};
    std::array<double, 2> y_new{};
  };

  static Trajectory stop(Trajectory& tr, double t) {
    tr.status_ = TrajectoryStatus::BlowUpDetected;
    tr.t_stop_ = t;
    return std::move(tr);
  }

  bool rhs(double t, const std::array<double, 2>& y, std::array<double, 2>& out, ControllerStats& stats) const {
    ++stats.rhs_evals;
    try {
      const auto d = rhs_eval(model_, t, y[0], y[1]);
      out = {d.dx, d.dy};
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CoefficientSingular) return false;
      throw;
    }
    return std::isfinite(out[0]) && std::isfinite(out[1]);
  }

  // Larger of the absolute and relative errors: relative below 1, absolute above.
  // Components never change sign, so relative control stays meaningful as they decay.
  double scale(double a, double b) const {
    return tol_ * std::max(std::min(1.0, std::max(std::abs(a), std::abs(b))), std::numeric_limits<double>::min());
  }

  double initial_step(double t, const std::array<double, 2>& y, const std::array<double, 2>& f0, double span,
                      ControllerStats& stats) const {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = scale(y[i], y[i]);
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(f0[i]) / sc);
    }
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    std::array<double, 2> y1{y[0] + h0 * f0[0], y[1] + h0 * f0[1]};
    std::array<double, 2> f1{};
    if (!rhs(t + h0, y1, f1, stats)) return h0 * 1e-3;
    double d2 = 0.0;
    for (int i = 0; i < 2; ++i) d2 = std::max(d2, std::abs(f1[i] - f0[i]) / scale(y[i], y[i]) / h0);
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  bool stages(double t, const std::array<double, 2>& y, double h, Stages& st, ControllerStats& stats) const {
    auto& k = st.k;
    auto at = [&](std::initializer_list<std::pair<int, double>> terms) {
      std::array<double, 2> out = y;
      for (const auto& [idx, coef] : terms) {
        out[0] += h * coef * k[idx][0];
        out[1] += h * coef * k[idx][1];
      }
      return out;
    };
    if (!rhs(t + h / 5.0, at({{0, 1.0 / 5.0}}), k[1], stats)) return false;
    if (!rhs(t + 3.0 * h / 10.0, at({{0, 3.0 / 40.0}, {1, 9.0 / 40.0}}), k[2], stats)) return false;
    if (!rhs(t + 4.0 * h / 5.0, at({{0, 44.0 / 45.0}, {1, -56.0 / 15.0}, {2, 32.0 / 9.0}}), k[3], stats)) return false;
    if (!rhs(t + 8.0 * h / 9.0,
             at({{0, 19372.0 / 6561.0}, {1, -25360.0 / 2187.0}, {2, 64448.0 / 6561.0}, {3, -212.0 / 729.0}}), k[4],
             stats)) {
      return false;
    }
    if (!rhs(t + h,
             at({{0, 9017.0 / 3168.0}, {1, -355.0 / 33.0}, {2, 46732.0 / 5247.0}, {3, 49.0 / 176.0},
                 {4, -5103.0 / 18656.0}}),
             k[5], stats)) {
      return false;
    }
    st.y_new = at({{0, 35.0 / 384.0}, {2, 500.0 / 1113.0}, {3, 125.0 / 192.0}, {4, -2187.0 / 6784.0}, {5, 11.0 / 84.0}});
    return rhs(t + h, st.y_new, k[6], stats);
  }

  double error_norm(const std::array<double, 2>& y, const Stages& st, double h) const {
    // Difference of the fifth- and embedded fourth-order solutions.
    static constexpr std::array<double, 7> e{71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                             -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      double acc = 0.0;
      for (int s = 0; s < 7; ++s) acc += e[s] * st.k[s][i];
      worst = std::max(worst, std::abs(h * acc) / scale(y[i], st.y_new[i]));
    }
    return worst;
  }

  void append_dense(Trajectory& tr, const std::array<double, 2>& y, const Stages& st, double h) const {
    static constexpr double d1 = -12715105075.0 / 11282082432.0;
    static constexpr double d3 = 87487479700.0 / 32700410799.0;
    static constexpr double d4 = -10690763975.0 / 1880347072.0;
    static constexpr double d5 = 701980252875.0 / 199316789632.0;
    static constexpr double d6 = -1453857185.0 / 822651844.0;
    static constexpr double d7 = 69997945.0 / 29380423.0;
    std::array<std::array<double, 5>, 2> r{};
    for (int i = 0; i < 2; ++i) {
      const auto& k = st.k;
      const double ydiff = st.y_new[i] - y[i];
      const double bspl = h * k[0][i] - ydiff;
      r[i][0] = y[i];
      r[i][1] = ydiff;
      r[i][2] = bspl;
      r[i][3] = ydiff - h * k[6][i] - bspl;
      r[i][4] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] + d6 * k[5][i] + d7 * k[6][i]);
    }
    tr.dense_.push_back(r);
  }

  const ModelSpec& model_;
  double tol_;
};

/// Integrates from opts.t0 to t1 at mixed absolute/relative tolerance tol.
[[nodiscard]] inline Trajectory integrate(const ModelSpec& m, double t1, double tol, const IntegrateOptions& opts = {}) {
  if (!(t1 > opts.t0)) raise(ErrorKind::InvalidArgument, "integration needs t1 > t0");
  if (!(tol >= kMinTol && tol <= kMaxTol)) {
    raise(ErrorKind::InvalidArgument, "tolerance must lie in [1e-13, 1e-3]");
  }
  return DormandPrince(m, tol).run(t1, opts);
}

// ---------------------------------------------------------------------------
// Autonomous case.

enum class EquilibriumClass { Saddle, Center, StableNode, UnstableNode, StableFocus, UnstableFocus, Degenerate };

[[nodiscard]] constexpr std::string_view to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::Saddle: return "Saddle";
    case EquilibriumClass::Center: return "Center";
    case EquilibriumClass::StableNode: return "StableNode";
    case EquilibriumClass::UnstableNode: return "UnstableNode";
    case EquilibriumClass::StableFocus: return "StableFocus";
    case EquilibriumClass::UnstableFocus: return "UnstableFocus";
    case EquilibriumClass::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

struct EquilibriumPoint {
  double x = 0.0;
  double y = 0.0;
  std::array<std::complex<double>, 2> eigenvalues{};
  EquilibriumClass classification = EquilibriumClass::Degenerate;
};

/// Eigenvalues and class of the 2x2 Jacobian [[j11, j12], [j21, j22]].
[[nodiscard]] inline EquilibriumPoint classify_linearization(double x, double y, double j11, double j12, double j21,
                                                             double j22) {
  const double tr = j11 + j22;
  const double det = j11 * j22 - j12 * j21;
  const double disc = tr * tr - 4.0 * det;
  const double scale = std::max({std::abs(j11), std::abs(j12), std::abs(j21), std::abs(j22), 1e-300});
  const double eps = 1e-12 * scale;

  EquilibriumPoint p{x, y, {}, EquilibriumClass::Degenerate};
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Larger-magnitude root first, the other from det / root to avoid cancellation.
    const double r1 = tr >= 0.0 ? 0.5 * (tr + s) : 0.5 * (tr - s);
    const double r2 = r1 != 0.0 ? det / r1 : 0.0;
    p.eigenvalues = {std::complex<double>(std::max(r1, r2), 0.0), std::complex<double>(std::min(r1, r2), 0.0)};
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    p.eigenvalues = {std::complex<double>(0.5 * tr, im), std::complex<double>(0.5 * tr, -im)};
  }

  if (std::abs(det) <= eps * scale) {
    p.classification = EquilibriumClass::Degenerate;
  } else if (det < 0.0) {
    p.classification = EquilibriumClass::Saddle;
  } else if (disc < 0.0) {
    if (std::abs(tr) <= eps) {
      p.classification = EquilibriumClass::Center;
    } else {
      p.classification = tr < 0.0 ? EquilibriumClass::StableFocus : EquilibriumClass::UnstableFocus;
    }
  } else {
    p.classification = tr < 0.0 ? EquilibriumClass::StableNode : EquilibriumClass::UnstableNode;
  }
  return p;
}

/// (0, 0) and, when b d != 0, (c/d, a/b) with their linearizations.
[[nodiscard]] inline std::vector<EquilibriumPoint> equilibria(const ModelSpec& m) {
  if (!m.is_autonomous()) raise(ErrorKind::NotAutonomous, "equilibria need constant coefficients");
  const double a = to_double(m.a.constant_value());
  const double b = to_double(m.b.constant_value());
  const double c = to_double(m.c.constant_value());
  const double d = to_double(m.d.constant_value());

  auto at = [&](double xs, double ys) {
    return classify_linearization(xs, ys, a - b * ys, -b * xs, d * ys, -c + d * xs);
  };
  std::vector<EquilibriumPoint> out{at(0.0, 0.0)};
  if (b * d != 0.0) out.push_back(at(to_double(Rational(m.c.constant_value() / m.d.constant_value())),
                                     to_double(Rational(m.a.constant_value() / m.b.constant_value()))));
  return out;
}

/// First integral V = d x - c ln x + b y - a ln y of the constant-coefficient system.
[[nodiscard]] inline double conserved_quantity(const ModelSpec& m, double x, double y) {
  if (!m.is_autonomous()) raise(ErrorKind::NotAutonomous, "first integral needs constant coefficients");
  if (!(x > 0.0) || !(y > 0.0)) raise(ErrorKind::DomainError, "first integral needs x > 0 and y > 0");
  const double a = to_double(m.a.constant_value());
  const double b = to_double(m.b.constant_value());
  const double c = to_double(m.c.constant_value());
  const double d = to_double(m.d.constant_value());
  return d * x - c * std::log(x) + b * y - a * std::log(y);
}

}  // namespace lvs
