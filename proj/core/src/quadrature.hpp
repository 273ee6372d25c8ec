#pragma once

#include "charmat/hilbert.hpp"

namespace charmat::detail {

// Composite trapezoid rule with `steps` equal panels; summed left to right.
template <typename F>
Complex trapezoid(const F& integrand, double a, double b, int steps) {
  const double h = (b - a) / steps;
  Complex sum = 0.5 * (integrand(a) + integrand(b));
  for (int k = 1; k < steps; ++k) sum += integrand(a + k * h);
  return sum * h;
}

}  // namespace charmat::detail
