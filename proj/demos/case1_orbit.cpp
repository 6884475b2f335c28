// Constant-coefficient orbit from (14, 18): equilibria and drift of the first integral.

#include <algorithm>
#include <cmath>
#include <iostream>

#include "lvs/integrate.hpp"

int main() {
  const auto model = lvs::preset("caseI").model;
  for (const auto& p : lvs::equilibria(model)) {
    std::cout << '(' << p.x << ", " << p.y << ") " << lvs::to_string(p.classification) << '\n';
  }
  const auto tr = lvs::integrate(model, 50.0, 1e-10);
  const double v0 = lvs::conserved_quantity(model, tr.xs().front(), tr.ys().front());
  double drift = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    drift = std::max(drift, std::abs(lvs::conserved_quantity(model, tr.xs()[i], tr.ys()[i]) - v0));
  }
  std::cout << "steps " << tr.stats().accepted << " (rejected " << tr.stats().rejected << "), max |V - V0| = " << drift
            << '\n';
}
