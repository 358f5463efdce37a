#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/params.hpp"
#include "bergman/poly.hpp"
#include "bergman/special.hpp"

namespace bergman {

/// P_alpha(z) = (1 - z)^{alpha+1} for integer alpha.
inline ComplexPoly p_alpha(int alpha) { return ComplexPoly::one_minus_z_pow(alpha + 1); }

/// (1 - z)^{e} as a series truncated at order N (e > 0 real). Exact for
/// integer e; otherwise the tail bound is the binomial tail majorant.
inline TruncatedSeries one_minus_z_pow_series(double e, int N) {
  if (is_integer(e) && e >= 0.0) {
    const int ie = static_cast<int>(e);
    auto c = ComplexPoly::one_minus_z_pow(ie).coeffs();
    c.resize(static_cast<std::size_t>(std::max(N, ie)) + 1, cplx{0.0});
    return TruncatedSeries(std::move(c), 0.0);
  }
  std::vector<cplx> c(static_cast<std::size_t>(N) + 1);
  double b = 1.0;
  for (int n = 0; n <= N; ++n) {
    c[n] = (n % 2 == 0) ? b : -b;
    b *= (e - n) / (n + 1);
  }
  return TruncatedSeries(std::move(c), binom_tail_bound(e, N));
}

/// Closed-form numerator Q_{alpha,beta} of the kernel for integer alpha.
///
///   beta in N:  Q = (alpha+1) B(alpha+1, beta+1)
///   otherwise:  Q = beta0 B(alpha+1,beta+1)/B(alpha+1,beta0+1)
///                   * sum_{n=0}^{alpha+1} binom(alpha+1,n) (-xi)^n / (n+beta0)
inline ComplexPoly build_Q(const KernelParams& p) {
  const int alpha = require_integer_alpha(p, "build_Q");
  if (p.beta_is_integer()) {
    return ComplexPoly{cplx{(alpha + 1) * beta_fn(alpha + 1.0, p.beta() + 1.0)}};
  }
  const double b0 = p.beta0();
  const double scale = b0 * std::exp(ln_beta(alpha + 1.0, p.beta() + 1.0) - ln_beta(alpha + 1.0, b0 + 1.0));
  std::vector<cplx> c(static_cast<std::size_t>(alpha) + 2);
  for (int n = 0; n <= alpha + 1; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    c[n] = scale * sign * gen_binom(alpha + 1.0, n) / (n + b0);
  }
  return ComplexPoly(std::move(c));
}

/// Q_{alpha,beta} from the degree-raising recurrence
///   Q_{a+1} = [xi(1-xi) Q_a' + (a+beta-m+2 + (m-beta) xi) Q_a] / (a+beta+2)
/// seeded with Q_0 = ((m-beta) xi + beta - m + 1) / (beta+1).
inline ComplexPoly build_Q_recurrence(const KernelParams& p) {
  const int alpha = require_integer_alpha(p, "build_Q_recurrence");
  const double beta = p.beta();
  const double c1 = p.m() - beta;  // = -beta0
  std::vector<cplx> q{cplx{(beta - p.m() + 1.0) / (beta + 1.0)}, cplx{c1 / (beta + 1.0)}};
  for (int a = 0; a < alpha; ++a) {
    const double c0 = a + beta - p.m() + 2.0;
    const double denom = a + beta + 2.0;
    std::vector<cplx> next(q.size() + 1, cplx{0.0});
    for (int n = 0; n < static_cast<int>(next.size()); ++n) {
      const cplx qn = n < static_cast<int>(q.size()) ? q[n] : cplx{0.0};
      const cplx qm = n >= 1 ? q[n - 1] : cplx{0.0};
      next[n] = ((n + c0) * qn + (c1 - (n - 1.0)) * qm) / denom;
    }
    q = std::move(next);
  }
  return ComplexPoly(std::move(q));
}

/// Closed form cross-checked against the recurrence; throws if the two
/// constructions disagree by more than `tol` (relative, coefficientwise).
inline ComplexPoly build_Q_checked(const KernelParams& p, double tol = 1e-12) {
  auto closed = build_Q(p);
  const auto rec = build_Q_recurrence(p);
  const double diff = max_relative_difference(rec, closed);
  if (!(diff <= tol)) {
    throw ConvergenceError("E_Q_DUAL_MISMATCH",
                           "closed-form and recurrence Q disagree: " + std::to_string(diff));
  }
  return closed;
}

/// G_{alpha,beta0} truncated at a fixed order N:
/// coefficients (-1)^n binom(alpha+1,n)/(n+beta0), exact when alpha is an
/// integer and N >= alpha+1.
inline TruncatedSeries build_G_order(double alpha, double beta0, int N) {
  const double a = alpha + 1.0;
  if (is_integer(alpha)) N = std::min(N, static_cast<int>(alpha) + 1);
  std::vector<cplx> c(static_cast<std::size_t>(N) + 1);
  double b = 1.0;
  for (int n = 0; n <= N; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    c[n] = sign * (is_integer(alpha) ? gen_binom(a, n) : b) / (n + beta0);
    b *= (a - n) / (n + 1);
  }
  double tail = 0.0;
  if (!is_integer(alpha)) tail = binom_tail_bound(a, N) / (N + 1.0 + beta0);
  return TruncatedSeries(std::move(c), tail);
}

/// Smallest order N >= max(2 alpha + 10, alpha + 1) whose certified tail
/// sum_{n>N} |binom(alpha+1,n)| r^n / (n+beta0) is below tol.
inline int g_truncation_order(double alpha, double beta0, double tol, int max_order, double r = 1.0) {
  const double a = alpha + 1.0;
  int N = static_cast<int>(std::ceil(std::max(2.0 * alpha + 10.0, a)));
  double b = std::abs(gen_binom(a, N));
  const double rN = std::log(std::max(r, 1e-300));
  for (; N <= max_order; ++N) {
    double bound = b * (N + 1.0) / a;
    if (r < 1.0) bound = std::min(bound, b * std::exp((N + 1.0) * rN) / (1.0 - r));
    bound /= (N + 1.0 + beta0);
    if (bound < tol) return N;
    b *= std::abs((a - N) / (N + 1.0));
  }
  throw ConvergenceError("E_G_TRUNCATION",
                         "G series needs more than " + std::to_string(max_order) +
                             " terms to reach tail tolerance " + std::to_string(tol));
}

/// G_{alpha,beta} = beta^{-1} Q_{alpha,beta} (m = 0), as a truncated series.
///
/// Integer alpha gives the exact polynomial of degree alpha+1. For real
/// alpha the order is chosen by g_truncation_order so that tail_bound < tol.
inline TruncatedSeries build_G(const KernelParams& p, double truncation_tol = 1e-12,
                               int max_order = 1 << 20) {
  if (p.beta_is_integer()) {
    throw DomainError("E_BETA_INTEGER", "G is undefined for integer beta (Q is constant there)");
  }
  if (!(truncation_tol > 0.0)) throw DomainError("E_TOLERANCE", "truncation tolerance must be positive");
  if (p.alpha_is_integer()) return build_G_order(p.alpha(), p.beta0(), p.alpha_int() + 1);
  const int N = g_truncation_order(p.alpha(), p.beta0(), truncation_tol, max_order);
  return build_G_order(p.alpha(), p.beta0(), N);
}

/// T_beta f = sum a_n z^n / (n + beta).
inline TruncatedSeries apply_T_beta(const TruncatedSeries& f, double beta) {
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("E_BETA_RANGE", "T_beta requires -1 < beta < 0");
  std::vector<cplx> c(f.coeffs());
  for (std::size_t n = 0; n < c.size(); ++n) c[n] /= (static_cast<double>(n) + beta);
  const int N = f.truncation_order();
  return TruncatedSeries(std::move(c), f.tail_bound() / (N + 1.0 + beta));
}

inline ComplexPoly apply_T_beta(const ComplexPoly& f, double beta) {
  return apply_T_beta(TruncatedSeries(f), beta).to_poly();
}

/// max_z |z (T_beta f)'(z) - f(z) + beta T_beta f(z)| over the samples, using
/// the formal derivative of the truncated series.
inline double check_tbeta_derivative(const TruncatedSeries& f, double beta, std::span<const cplx> samples) {
  const auto t = apply_T_beta(f, beta);
  double worst = 0.0;
  for (const cplx z : samples) {
    worst = std::max(worst, std::abs(z * t.derivative(z) - f(z) + beta * t(z)));
  }
  return worst;
}

struct IdentityResidual {
  double residual = 0.0;
  /// Certified truncation contribution; rounding is not included.
  double bound = 0.0;
};

/// Residual of xi F'(xi) + beta0 F(xi) - (1 - xi)^{alpha+1} for F = G_{alpha,beta0}.
///
/// The identity holds coefficientwise up to the truncation order, so the
/// only non-rounding contribution is the binomial tail at the sample radius.
inline IdentityResidual check_ode_z1(double alpha, double beta0, std::span<const cplx> samples) {
  if (!(alpha > -1.0)) throw DomainError("E_ALPHA_RANGE", "alpha must exceed -1");
  if (!(beta0 > -1.0 && beta0 < 0.0)) throw DomainError("E_BETA_RANGE", "beta0 must lie in (-1, 0)");
  double r = 0.0;
  for (const cplx z : samples) r = std::max(r, std::abs(z));
  if (r > 1.0) throw DomainError("E_SAMPLE_DISK", "ODE samples must lie in the closed unit disk");
  const double a = alpha + 1.0;
  int N = static_cast<int>(alpha) + 1;
  double bound = 0.0;
  if (!is_integer(alpha)) {
    constexpr int kMaxOrder = 1 << 18;
    try {
      N = g_truncation_order(alpha, beta0, 1e-15, kMaxOrder, r);
    } catch (const ConvergenceError&) {
      N = kMaxOrder;
    }
    bound = binom_tail_bound(a, N, r);
  }
  const auto F = build_G_order(alpha, beta0, N);
  IdentityResidual out;
  out.bound = bound;
  for (const cplx z : samples) {
    const cplx lhs = z * F.derivative(z) + beta0 * F(z);
    out.residual = std::max(out.residual, std::abs(lhs - std::pow(1.0 - z, a)));
  }
  return out;
}

/// G_{alpha+1,beta} = ((alpha+2) G_{alpha,beta} + (1 - xi)^{alpha+2}) / (alpha+beta+2).
inline TruncatedSeries step_recurrence_G(const TruncatedSeries& g_prev, double alpha, double beta) {
  const double denom = alpha + beta + 2.0;
  int N = g_prev.truncation_order();
  if (is_integer(alpha)) N = std::max(N, static_cast<int>(alpha) + 2);
  const auto pw = one_minus_z_pow_series(alpha + 2.0, N);
  std::vector<cplx> c(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) c[n] = ((alpha + 2.0) * g_prev[n] + pw[n]) / denom;
  const double tail = ((alpha + 2.0) * g_prev.tail_bound() + pw.tail_bound()) / std::abs(denom);
  return TruncatedSeries(std::move(c), tail);
}

/// Same step through the first-order form
///   G_{alpha+1,beta} = (xi(1-xi) G' + (alpha+beta+2 - beta xi) G) / (alpha+beta+2).
/// The input must be G_{alpha,beta} itself; its binomial tail sets the bound.
inline TruncatedSeries step_recurrence_G_differential(const TruncatedSeries& g_prev, double alpha, double beta) {
  const double denom = alpha + beta + 2.0;
  const int N = g_prev.truncation_order();
  const int out_order = is_integer(alpha) ? N + 1 : N;
  std::vector<cplx> c(static_cast<std::size_t>(out_order) + 1);
  for (int n = 0; n <= out_order; ++n) {
    c[n] = ((n + denom) * g_prev[n] - (n - 1.0 + beta) * g_prev[n - 1]) / denom;
  }
  double tail = 0.0;
  if (!g_prev.is_exact()) {
    const double growth = 2.0 + (alpha + 2.0 - 2.0 * beta) / (N + 1.0 + beta);
    tail = growth * binom_tail_bound(alpha + 1.0, N) / std::abs(denom);
  }
  return TruncatedSeries(std::move(c), tail);
}

/// Convolution identity
///   sum_{k<=n} binom(alpha+2,k) (-1)^k / B(alpha+1, n-k+beta+1)
///     = beta / B(alpha+1,beta+1) binom(alpha+1,n) (-1)^n / (n+beta).
///
/// Returns the worst relative residual over n <= n_max. Both sides are
/// multiplied by B(alpha+1,beta+1), turning each reciprocal beta value into
/// the product prod_{i<j} (alpha+beta+2+i)/(beta+1+i); the alternating sum
/// cancels by many orders of magnitude, so it is accumulated in quad
/// precision. Where the right side vanishes exactly (integer alpha,
/// n > alpha+1) the residual is taken relative to the sum of |terms|.
inline double convolution_identity_check(double alpha, double beta, int n_max) {
  if (!(alpha > -1.0)) throw DomainError("E_ALPHA_RANGE", "alpha must exceed -1");
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("E_BETA_RANGE", "beta must lie in (-1, 0)");
  if (n_max < 0) throw DomainError("E_N_RANGE", "n_max must be nonnegative");
  using quad = __float128;
  const quad qa = alpha;
  const quad qb = beta;
  std::vector<quad> ratio(static_cast<std::size_t>(n_max) + 1);  // B(a+1,b+1)/B(a+1,j+b+1)
  std::vector<quad> binom2(static_cast<std::size_t>(n_max) + 1);  // binom(alpha+2, k)
  std::vector<quad> binom1(static_cast<std::size_t>(n_max) + 1);  // binom(alpha+1, n)
  ratio[0] = binom2[0] = binom1[0] = 1;
  for (int j = 1; j <= n_max; ++j) {
    ratio[j] = ratio[j - 1] * (qa + qb + 2 + (j - 1)) / (qb + 1 + (j - 1));
    binom2[j] = binom2[j - 1] * (qa + 2 - (j - 1)) / j;
    binom1[j] = binom1[j - 1] * (qa + 1 - (j - 1)) / j;
  }
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    quad sum = 0;
    quad abs_sum = 0;
    for (int k = 0; k <= n; ++k) {
      const quad term = binom2[k] * ratio[n - k];
      sum += (k % 2 == 0) ? term : -term;
      abs_sum += term < 0 ? -term : term;
    }
    const quad rhs = qb * binom1[n] * ((n % 2 == 0) ? 1 : -1) / (n + qb);
    quad diff = sum - rhs;
    if (diff < 0) diff = -diff;
    const quad scale = rhs != 0 ? (rhs < 0 ? -rhs : rhs) : abs_sum;
    worst = std::max(worst, static_cast<double>(diff / scale));
  }
  return worst;
}

}  // namespace bergman
