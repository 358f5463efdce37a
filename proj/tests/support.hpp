#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "bergman/poly.hpp"

namespace testing {

using bergman::cplx;

/// Fixed-seed generator so every run draws the same samples.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Uniform sample of the disk |z| < r.
inline cplx disk_point(double r = 1.0) {
  const double rad = r * std::sqrt(uniform(0.0, 1.0));
  return std::polar(rad, uniform(0.0, 6.283185307179586));
}

inline std::vector<cplx> disk_points(int n, double r = 1.0) {
  std::vector<cplx> v;
  for (int i = 0; i < n; ++i) v.push_back(disk_point(r));
  return v;
}

/// beta drawn from (-1, 0) away from the endpoints.
inline double random_beta() { return uniform(-0.98, -0.02); }

}  // namespace testing
