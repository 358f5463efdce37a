#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "bergman/errors.hpp"

namespace bergman {

/// log Gamma(x) for x > 0.
inline double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("E_LNGAMMA_DOMAIN", "ln_gamma requires x > 0, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

/// log B(s, t) = lnG(s) + lnG(t) - lnG(s+t).
inline double ln_beta(double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) {
    throw DomainError("E_BETA_DOMAIN", "beta function requires s > 0 and t > 0");
  }
  return std::lgamma(s) + std::lgamma(t) - std::lgamma(s + t);
}

/// Euler beta function B(s, t), evaluated in the log domain so that
/// B(alpha+1, n+beta+1) stays representable for large n.
inline double beta_fn(double s, double t) { return std::exp(ln_beta(s, t)); }

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

/// Generalized binomial coefficient prod_{j<n} (a-j)/(j+1).
///
/// For integer a >= 0 and n <= a the value is accumulated in 128-bit
/// integer arithmetic and is exact whenever it fits; n > a gives exactly 0.
inline double gen_binom(double a, int n) {
  if (n < 0) throw DomainError("E_BINOM_DOMAIN", "gen_binom requires n >= 0");
  if (n == 0) return 1.0;
  if (is_integer(a) && a >= 0.0) {
    const auto ia = static_cast<std::int64_t>(a);
    if (n > ia) return 0.0;
    const int k = static_cast<int>(std::min<std::int64_t>(n, ia - n));
    unsigned __int128 r = 1;
    constexpr auto kMax = ~static_cast<unsigned __int128>(0);
    bool exact = true;
    for (int j = 0; j < k; ++j) {
      const auto num = static_cast<unsigned __int128>(ia - j);
      if (r > kMax / num) {
        exact = false;
        break;
      }
      r = r * num / static_cast<unsigned __int128>(j + 1);
    }
    if (exact) return static_cast<double>(r);
  }
  double r = 1.0;
  for (int j = 0; j < n; ++j) r *= (a - j) / (j + 1);
  return r;
}

/// Certified majorant of sum_{n>N} |binom(a, n)| * r^n for a > 0, N >= a
/// and 0 <= r <= 1.
///
/// For j >= a the ratio |binom(a,j+1)/binom(a,j)| = (j-a)/(j+1) is below one,
/// so the terms decrease. On the unit circle the comparison
/// |binom(a,n)| <= |binom(a,N)| ((N+1)/(n+1))^{a+1} summed against the
/// integral of x^{-(a+1)} gives |binom(a,N)| (N+1)/a; inside the disk the
/// geometric bound |binom(a,N)| r^{N+1}/(1-r) is used when smaller.
inline double binom_tail_bound(double a, int N, double r = 1.0) {
  if (is_integer(a) && a >= 0.0 && N >= static_cast<int>(a)) return 0.0;
  if (!(a > 0.0) || N < a) {
    return std::numeric_limits<double>::infinity();
  }
  const double bN = std::abs(gen_binom(a, N));
  double bound = bN * (N + 1.0) / a;
  if (r < 1.0) {
    bound = std::min(bound, bN * std::pow(r, N + 1.0) / (1.0 - r));
  }
  return bound;
}

}  // namespace bergman
