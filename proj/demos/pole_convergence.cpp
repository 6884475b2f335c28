// Pade poles of the example1 solution approaching the blow-up time.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>

#include "lvs/pade.hpp"

int main() {
  const auto model = lvs::preset("example1").model;
  const double exact = 2.0 * std::numbers::ln2;
  std::cout << "t_c^2 = 2 ln 2 = " << std::setprecision(12) << exact << '\n';
  for (const auto& e : lvs::pole_study(model, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}})) {
    std::cout << '[' << e.m << '/' << e.n << "](z)  ";
    if (e.pole) {
      std::cout << std::setprecision(12) << e.pole->location << "  error " << std::setprecision(3)
                << std::abs(e.pole->location - exact) << '\n';
    } else {
      std::cout << (e.error ? *e.error : "no positive pole") << '\n';
    }
  }
}
