#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "bergman/analytic.hpp"
#include "bergman/errors.hpp"
#include "bergman/poly.hpp"
#include "bergman/roots.hpp"

namespace bergman {

/// Parameter window from the comparison of T_beta f with a0/beta + a1 z/(1+beta)
/// on |z| = r0: no zero of T_beta f in the disk for beta2 < beta < 0 and
/// exactly one simple zero for -1 < beta < beta1.
struct RoucheBounds {
  double r0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  /// -|a0| / (|a0| + r0 |a1|)
  double midpoint = 0.0;
  /// every sign change of psi located on the scan, ascending
  std::vector<double> sign_changes;
};

/// psi(beta) = | |a0|/beta + |a1| r0/(1+beta) | - sum_{n>=2} |a_n| r0^n/(n+beta).
///
/// When f carries a tail bound (r0 <= 1) the discarded terms are added to the
/// subtracted sum, so psi is a certified lower bound of the exact function.
inline double rouche_psi(const TruncatedSeries& f, double r0, double beta) {
  const double a0 = std::abs(f[0]);
  const double a1 = std::abs(f[1]);
  double tail = 0.0;
  double rn = r0 * r0;
  for (int n = 2; n <= f.truncation_order(); ++n) {
    tail += std::abs(f[n]) * rn / (n + beta);
    rn *= r0;
  }
  if (!f.is_exact()) tail += f.tail_bound() / (f.truncation_order() + 1.0 + beta);
  return std::abs(a0 / beta + a1 * r0 / (1.0 + beta)) - tail;
}

/// Locates beta1 <= midpoint <= beta2 as the outermost zeros of psi: a sign
/// scan on a 1e-3 grid over [-1+1e-6, -1e-6] followed by bisection to 1e-11.
inline RoucheBounds rouche_bounds(const TruncatedSeries& f, double r0) {
  const double a0 = std::abs(f[0]);
  const double a1 = std::abs(f[1]);
  if (a0 == 0.0 && a1 == 0.0) throw DomainError("E_ROUCHE_DEGENERATE", "f(0) and f'(0) both vanish");
  if (!(r0 > 0.0)) throw DomainError("E_R0_RANGE", "r0 must be positive");
  if (!f.is_exact() && r0 > 1.0) {
    throw DomainError("E_R0_RANGE", "series with a tail bound are certified only for r0 <= 1");
  }
  RoucheBounds rb;
  rb.r0 = r0;
  rb.midpoint = -a0 / (a0 + r0 * a1);

  constexpr double kBuffer = 1e-6;
  constexpr double kStep = 1e-3;
  const double lo = -1.0 + kBuffer;
  const double hi = -kBuffer;
  const int cells = static_cast<int>(std::ceil((hi - lo) / kStep));
  auto psi = [&](double b) { return rouche_psi(f, r0, b); };

  double x0 = lo;
  double v0 = psi(x0);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = i == cells ? hi : lo + i * kStep;
    const double v1 = psi(x1);
    if ((v0 > 0.0) != (v1 > 0.0)) {
      double a = x0;
      double b = x1;
      double va = v0;
      while (b - a > 1e-11) {
        const double c = 0.5 * (a + b);
        const double vc = psi(c);
        if ((vc > 0.0) == (va > 0.0)) {
          a = c;
          va = vc;
        } else {
          b = c;
        }
      }
      rb.sign_changes.push_back(0.5 * (a + b));
    }
    x0 = x1;
    v0 = v1;
  }

  if (rb.sign_changes.empty()) {
    // psi >= 0 throughout (no tail); the only zero is the midpoint itself
    rb.beta1 = rb.beta2 = rb.midpoint;
  } else {
    rb.beta1 = std::min(rb.sign_changes.front(), rb.midpoint);
    rb.beta2 = std::max(rb.sign_changes.back(), rb.midpoint);
  }
  return rb;
}

inline RoucheBounds rouche_bounds(const ComplexPoly& f, double r0) {
  return rouche_bounds(TruncatedSeries(f), r0);
}

enum class ZeroVerdict { NoZero, OneSimpleZero, Unknown };

inline const char* to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::NoZero: return "no_zero";
    case ZeroVerdict::OneSimpleZero: return "one_simple_zero";
    case ZeroVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

inline ZeroVerdict zero_window_verdict(const RoucheBounds& rb, double beta) {
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("E_BETA_RANGE", "beta must lie in (-1, 0)");
  if (beta > rb.beta2) return ZeroVerdict::NoZero;
  if (beta < rb.beta1) return ZeroVerdict::OneSimpleZero;
  return ZeroVerdict::Unknown;
}

struct WindowCheck {
  ZeroVerdict verdict = ZeroVerdict::Unknown;
  /// argument-principle count of T_beta f in |z| < r0 (definite verdicts only)
  std::optional<int> count;
  bool consistent = true;
};

/// Verdict for a polynomial f, cross-checked against a direct zero count.
inline WindowCheck zero_window_verdict(const ComplexPoly& f, double r0, double beta) {
  const auto rb = rouche_bounds(f, r0);
  WindowCheck wc;
  wc.verdict = zero_window_verdict(rb, beta);
  if (wc.verdict == ZeroVerdict::Unknown) return wc;
  const auto tf = apply_T_beta(f, beta);
  wc.count = count_zeros_disk(tf, cplx{0.0}, r0).count;
  const int expected = wc.verdict == ZeroVerdict::NoZero ? 0 : 1;
  wc.consistent = *wc.count == expected;
  return wc;
}

}  // namespace bergman
