#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace ballred_test {

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-30);
  return std::abs(got - want) / scale;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline double uniform(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(rng());
}

}  // namespace ballred_test
