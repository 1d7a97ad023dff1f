#pragma once

#include <cmath>

#include "telag/errors.hpp"

namespace telag {

// Digamma via the recurrence psi(x) = psi(x+1) - 1/x until x >= 6, then the
// asymptotic series with Bernoulli terms through 1/x^14. Absolute error is
// below 1e-12 for x >= 1.
inline double digamma(double x) {
  if (!(x > 0.0)) throw ConfigError("digamma requires x > 0");
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double z = inv * inv;
  const double tail =
      z * (1.0 / 12.0 -
           z * (1.0 / 120.0 -
                z * (1.0 / 252.0 -
                     z * (1.0 / 240.0 -
                          z * (1.0 / 132.0 -
                               z * (691.0 / 32760.0 - z * (1.0 / 12.0)))))));
  return result + std::log(x) - 0.5 * inv - tail;
}

}  // namespace telag
