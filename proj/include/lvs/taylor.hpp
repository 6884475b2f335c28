#pragma once

#include <vector>

#include "lvs/model.hpp"
#include "lvs/series.hpp"

namespace lvs {

template <Scalar S>
struct SeriesSolution {
  PowerSeries<S> x;
  PowerSeries<S> y;
};

/// Power-series solution about t = 0 by the Taylor recurrence
///
///   x_{k+1} = [(A X)_k - (B X Y)_k] / (k + 1)
///   y_{k+1} = [-(C Y)_k + (D X Y)_k] / (k + 1)
///
/// where A..D are the coefficient series at the same order and (.)_k is the
/// k-th Cauchy coefficient. Coefficient k+1 depends only on coefficients <= k.
template <Scalar S>
[[nodiscard]] SeriesSolution<S> solve_series(const ModelSpec& m, int order) {
  if (order < 1) raise(ErrorKind::InvalidArgument, "series order must be >= 1");
  const auto A = coefficient_taylor<S>(m.a, order);
  const auto B = coefficient_taylor<S>(m.b, order);
  const auto C = coefficient_taylor<S>(m.c, order);
  const auto D = coefficient_taylor<S>(m.d, order);

  const auto n = static_cast<std::size_t>(order) + 1;
  std::vector<S> x(n, S(0));
  std::vector<S> y(n, S(0));
  std::vector<S> xy(n, S(0));
  x[0] = from_rational<S>(m.alpha);
  y[0] = from_rational<S>(m.beta);

  for (int k = 0; k < order; ++k) {
    S prod(0);
    for (int i = 0; i <= k; ++i) prod += x[i] * y[k - i];
    xy[k] = prod;

    S ax(0), bxy(0), cy(0), dxy(0);
    for (int i = 0; i <= k; ++i) {
      ax += A[i] * x[k - i];
      bxy += B[i] * xy[k - i];
      cy += C[i] * y[k - i];
      dxy += D[i] * xy[k - i];
    }
    const S step(k + 1);
    x[k + 1] = (ax - bxy) / step;
    y[k + 1] = (dxy - cy) / step;
  }
  return {PowerSeries<S>(std::move(x)), PowerSeries<S>(std::move(y))};
}

}  // namespace lvs
