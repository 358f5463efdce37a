#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "bergman/curves.hpp"
#include "bergman/errors.hpp"
#include "bergman/kernel.hpp"
#include "bergman/roots.hpp"

namespace bergman {

/// eta_0 = tan(pi/4 + pi/(alpha+2)); J_{alpha,0} has no zeros with 1 < |xi| < eta_0.
inline double eta_zero(int alpha) { return std::tan(std::numbers::pi / 4.0 + std::numbers::pi / (alpha + 2.0)); }

/// Radius strictly between 1 and the next closed-form zero modulus of
/// I_{alpha,0}, J_{alpha,0} beyond the unit circle (and below eta_0 when
/// eta_0 > 1), so that counts in |xi| < eta are closed-disk counts at beta = 0.
inline double hat_radius(int alpha) {
  double next = std::numeric_limits<double>::infinity();
  const auto zs = closed_form_zeros_beta0(alpha);
  for (const auto* v : {&zs.even, &zs.odd}) {
    for (const cplx z : *v) {
      if (std::abs(z) > 1.0 + 1e-9) next = std::min(next, std::abs(z));
    }
  }
  const double e0 = eta_zero(alpha);
  if (e0 > 1.0) next = std::min(next, e0);
  return std::isfinite(next) ? 0.5 * (1.0 + next) : 2.0;
}

/// Zeros of p in |xi| < radius. A root within 1e-8 of the contour triggers
/// one retry at radius - 1e-6 and one at radius + 1e-6 before failing.
inline int count_zeros_open_disk(const ComplexPoly& p, double radius, bool* perturbed = nullptr) {
  if (perturbed) *perturbed = false;
  for (const double r : {radius, radius - 1e-6, radius + 1e-6}) {
    try {
      return count_zeros_disk(p, cplx{0.0}, r).count;
    } catch (const SingularError&) {
      if (perturbed) *perturbed = true;
    }
  }
  throw SingularError("E_ROOT_ON_CONTOUR", "roots on the contour at every perturbed radius");
}

struct EvenOddSample {
  double beta = 0.0;
  int eps = 0;    // zeros of I in the open unit disk
  int theta = 0;  // zeros of J in the open unit disk
  int eps_eta = 0;  // zeros of I in |xi| < eta
  int theta_eta = 0;
  bool perturbed = false;
};

struct EvenOddReport {
  int alpha = 0;
  /// tabulated counts at beta = 0
  EvenOddCounts table;
  /// the same four counts from the argument principle on I_{alpha,0}, J_{alpha,0}
  EvenOddCounts counted;
  double eta0 = 0.0;
  /// scaling radius used for the closed-disk counts (hat_radius)
  double eta = 0.0;
  std::vector<EvenOddSample> samples;

  /// r != 0 (case 1) and r != 2 (case 2), alpha = 4 tau + r
  bool case1_applicable = false;
  bool case2_applicable = false;

  /// Empirical thresholds: eps constant for beta > beta4, theta constant for
  /// beta < beta3 (case 1); eps constant for beta < beta5, theta constant for
  /// beta > beta6 (case 2). Empty when the case is skipped.
  std::optional<double> beta3, beta4, beta5, beta6;

  /// limit counts at the outermost samples
  bool eps_limit_zero = false;        // eps -> eps_{alpha,0}, beta -> 0^-
  bool theta_limit_minus_one = false; // theta -> eps_{alpha,0} + 1, beta -> -1^+
  bool eps_limit_minus_one = false;   // eps -> theta_{alpha,0} + 1, beta -> -1^+
  bool theta_limit_zero = false;      // theta -> theta_{alpha,0}, beta -> 0^-
  /// the same four limits for the eta-scaled counts against the closed-disk counts
  bool eps_eta_limit_zero = false;
  bool theta_eta_limit_minus_one = false;
  bool eps_eta_limit_minus_one = false;
  bool theta_eta_limit_zero = false;
};

/// Counts at beta = 0 via the argument principle. Closed-disk counts use the
/// radius eta, since no further zeros lie in 1 < |xi| < eta0.
inline EvenOddCounts count_even_odd_beta0(int alpha, double eta) {
  const auto eo = build_even_odd(KernelParams::make(alpha, 0.0));
  EvenOddCounts c;
  c.eps = count_zeros_open_disk(eo.I, 1.0);
  c.theta = count_zeros_open_disk(eo.J, 1.0);
  c.eps_hat = count_zeros_open_disk(eo.I, eta);
  c.theta_hat = count_zeros_open_disk(eo.J, eta);
  return c;
}

namespace detail {

/// Largest sample beta whose count differs from `ref`, or the grid's lower
/// neighbour when none does.
inline double last_change_from_right(const std::vector<EvenOddSample>& s, int EvenOddSample::*field, int ref) {
  double b = -1.0;
  for (const auto& x : s) {
    if (x.*field != ref) b = x.beta;
  }
  return b;
}

/// Smallest sample beta whose count differs from `ref`, or 0 when none does.
inline double first_change_from_left(const std::vector<EvenOddSample>& s, int EvenOddSample::*field, int ref) {
  for (const auto& x : s) {
    if (x.*field != ref) return x.beta;
  }
  return 0.0;
}

}  // namespace detail

/// Scans beta over `grid` counting zeros of the even and odd numerators.
inline EvenOddReport even_odd_thresholds(int alpha, const BetaGrid& grid = BetaGrid::geometric(200, 1e-6)) {
  if (alpha < 0 || alpha > kMaxTraceAlpha) throw DomainError("E_ALPHA_RANGE", "alpha must be a nonnegative integer");
  EvenOddReport rep;
  rep.alpha = alpha;
  rep.table = even_odd_count_table(alpha);
  rep.eta0 = eta_zero(alpha);
  rep.eta = hat_radius(alpha);
  rep.counted = count_even_odd_beta0(alpha, rep.eta);
  const int r = alpha % 4;
  rep.case1_applicable = r != 0;
  rep.case2_applicable = r != 2;

  for (const double b : grid.betas) {
    const auto eo = build_even_odd(KernelParams::make(alpha, b));
    EvenOddSample s;
    s.beta = b;
    bool p1 = false, p2 = false, p3 = false, p4 = false;
    s.eps = count_zeros_open_disk(eo.I, 1.0, &p1);
    s.theta = count_zeros_open_disk(eo.J, 1.0, &p2);
    s.eps_eta = count_zeros_open_disk(eo.I, rep.eta, &p3);
    s.theta_eta = count_zeros_open_disk(eo.J, rep.eta, &p4);
    s.perturbed = p1 || p2 || p3 || p4;
    rep.samples.push_back(s);
  }
  if (rep.samples.empty()) return rep;

  const auto& c0 = rep.counted;
  const auto& lo = rep.samples.front();
  const auto& hi = rep.samples.back();
  if (rep.case1_applicable) {
    rep.beta4 = detail::last_change_from_right(rep.samples, &EvenOddSample::eps, c0.eps);
    rep.beta3 = detail::first_change_from_left(rep.samples, &EvenOddSample::theta, c0.eps + 1);
    rep.eps_limit_zero = hi.eps == c0.eps;
    rep.theta_limit_minus_one = lo.theta == c0.eps + 1;
    rep.eps_eta_limit_zero = hi.eps_eta == c0.eps_hat;
    rep.theta_eta_limit_minus_one = lo.theta_eta == c0.eps_hat + 1;
  }
  if (rep.case2_applicable) {
    rep.beta5 = detail::first_change_from_left(rep.samples, &EvenOddSample::eps, c0.theta + 1);
    rep.beta6 = detail::last_change_from_right(rep.samples, &EvenOddSample::theta, c0.theta);
    rep.eps_limit_minus_one = lo.eps == c0.theta + 1;
    rep.theta_limit_zero = hi.theta == c0.theta;
    rep.eps_eta_limit_minus_one = lo.eps_eta == c0.theta_hat + 1;
    rep.theta_eta_limit_zero = hi.theta_eta == c0.theta_hat;
  }
  return rep;
}

}  // namespace bergman
