#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergman/analytic.hpp"
#include "bergman/errors.hpp"
#include "bergman/params.hpp"
#include "bergman/poly.hpp"
#include "bergman/special.hpp"

namespace bergman {

/// base^e, by binary exponentiation when e is a small integer.
inline cplx cpow(cplx base, double e) {
  if (is_integer(e) && std::abs(e) <= 256.0) {
    auto k = static_cast<long>(std::abs(e));
    cplx r{1.0};
    cplx b = base;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return e < 0.0 ? 1.0 / r : r;
  }
  return std::pow(base, e);
}

struct KernelValue {
  cplx value;
  /// xi = w * conj(z)
  cplx argument;
  KernelParams params;
};

namespace detail {

/// G_{alpha,beta0}(xi) for real alpha, summed until the certified tail at
/// radius |xi| drops below `tol`.
inline cplx eval_G_series(double alpha, double beta0, cplx xi, double tol) {
  const double r = std::abs(xi);
  const int N = g_truncation_order(alpha, beta0, tol, 1 << 22, r);
  return build_G_order(alpha, beta0, N)(xi);
}

/// The m = 0 kernel K_{alpha,beta0}(xi) = Q_{alpha,beta0}(xi)/(1-xi)^{alpha+2}.
inline cplx reduced_kernel(const KernelParams& p, cplx xi, double tol) {
  const double a = p.alpha();
  const cplx denom = cpow(1.0 - xi, a + 2.0);
  if (p.beta_is_integer()) return 1.0 / denom;
  const auto red = p.reduced();
  if (p.alpha_is_integer()) return build_Q(red)(xi) / denom;
  return p.beta0() * eval_G_series(a, p.beta0(), xi, tol) / denom;
}

}  // namespace detail

/// Kernel as a function of xi = w conj(z).
///
/// m >= 1 goes through the m = 0 kernel with the prefactor
/// B(alpha+1,beta+1)/B(alpha+1,beta0+1) xi^{-m}.
inline KernelValue eval_kernel_xi(const KernelParams& p, cplx xi, double tol = 1e-15) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("E_XI_DISK", "kernel argument must lie in the open unit disk");
  if (std::abs(1.0 - xi) < 1e-12) {
    throw SingularError("E_KERNEL_DIAGONAL", "kernel is singular at xi = 1 (|1 - xi| < 1e-12)");
  }
  if (p.m() >= 1 && xi == cplx{0.0}) {
    throw SingularError("E_KERNEL_ORIGIN", "kernel with m >= 1 has a pole at xi = 0");
  }
  cplx value = detail::reduced_kernel(p, xi, tol);
  if (p.m() >= 1) {
    const double pref = std::exp(ln_beta(p.alpha() + 1.0, p.beta() + 1.0) -
                                 ln_beta(p.alpha() + 1.0, p.beta0() + 1.0));
    value *= pref / cpow(xi, p.m());
  }
  return {value, xi, p};
}

inline KernelValue eval_kernel(const KernelParams& p, cplx w, cplx z, double tol = 1e-15) {
  if (!(std::abs(w) < 1.0) || !(std::abs(z) < 1.0)) {
    throw DomainError("E_POINT_DISK", "kernel arguments must lie in the open unit disk");
  }
  return eval_kernel_xi(p, w * std::conj(z), tol);
}

/// Orthonormal basis element e_n(z) = sqrt(B(a+1,b+1)/B(a+1,n+b+1)) z^n, n >= -m.
inline cplx basis_element(const KernelParams& p, int n, cplx z) {
  if (n < -p.m()) throw DomainError("E_BASIS_INDEX", "basis index must satisfy n >= -m");
  const double a1 = p.alpha() + 1.0;
  const double c = std::exp(0.5 * (ln_beta(a1, p.beta() + 1.0) - ln_beta(a1, n + p.beta() + 1.0)));
  return c * cpow(z, n);
}

/// Partial sum sum_{n=-m}^{terms-1-m} e_n(w) conj(e_n(z)) written in xi.
inline cplx kernel_basis_series(const KernelParams& p, cplx xi, int terms) {
  const double a1 = p.alpha() + 1.0;
  const double lb = ln_beta(a1, p.beta() + 1.0);
  cplx sum{0.0};
  for (int i = terms - 1; i >= 0; --i) {
    const int n = i - p.m();
    sum += std::exp(lb - ln_beta(a1, n + p.beta() + 1.0)) * cpow(xi, n);
  }
  return sum;
}

/// beta (1 + beta) G_{alpha,beta}(xi) from the expansion
///   (1+beta) - beta(1+alpha) xi + beta(1+beta) sum_{n>=2} binom(alpha+1,n) (-xi)^n/(n+beta),
/// which stays finite as beta -> 0^- and beta -> -1^+.
inline cplx eval_normalized_G(const KernelParams& p, cplx xi) {
  const double beta = p.beta();
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("E_BETA_RANGE", "normalized G requires -1 < beta < 0");
  if (std::abs(xi) > 1.0) throw DomainError("E_XI_DISK", "normalized G requires |xi| <= 1");
  const double alpha = p.alpha();
  const double a = alpha + 1.0;
  const double w = beta * (1.0 + beta);
  int N = 0;
  if (p.alpha_is_integer()) {
    N = p.alpha_int() + 1;
  } else {
    N = g_truncation_order(alpha, beta, 1e-17 / std::abs(w), 1 << 22, std::abs(xi));
  }
  cplx tail{0.0};
  cplx pw = xi * xi;
  double b = a * (a - 1.0) / 2.0;
  for (int n = 2; n <= N; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double bn = p.alpha_is_integer() ? gen_binom(a, n) : b;
    tail += sign * bn / (n + beta) * pw;
    pw *= xi;
    b *= (a - n) / (n + 1.0);
  }
  return (1.0 + beta) - beta * a * xi + w * tail;
}

/// Numerators of the even and odd kernels:
///   I(xi) = (1+xi)^{alpha+2} Q(xi) + (1-xi)^{alpha+2} Q(-xi)
///   J(xi) = (1+xi)^{alpha+2} Q(xi) - (1-xi)^{alpha+2} Q(-xi)
struct EvenOddPolys {
  ComplexPoly I;
  ComplexPoly J;
  KernelParams params;
};

/// Requires integer alpha and -1 < beta <= 0. With A = (1+xi)^{alpha+2} Q the
/// coefficients are I_n = 2 A_n (n even), J_n = 2 A_n (n odd); the other
/// parity is exactly zero.
inline EvenOddPolys build_even_odd(const KernelParams& p) {
  const int alpha = require_integer_alpha(p, "build_even_odd");
  if (p.beta() > 0.0) throw DomainError("E_BETA_RANGE", "even/odd numerators require -1 < beta <= 0");
  const auto q = build_Q(p);
  const auto plus = ComplexPoly::one_minus_z_pow(alpha + 2).scaled(cplx{-1.0});  // (1+xi)^{alpha+2}
  const auto A = plus * q;
  std::vector<cplx> ic(A.coeffs().size(), cplx{0.0});
  std::vector<cplx> jc(A.coeffs().size(), cplx{0.0});
  for (int n = 0; n <= A.degree(); ++n) {
    (n % 2 == 0 ? ic : jc)[n] = 2.0 * A[n];
  }
  return {ComplexPoly(std::move(ic)), ComplexPoly(std::move(jc)), p};
}

struct ClosedFormZeros {
  /// z_k = -i tan((2k+1) pi / (2(alpha+2))), zeros of I_{alpha,0}
  std::vector<cplx> even;
  /// w_k = -i tan(k pi / (alpha+2)), zeros of J_{alpha,0}; w_0 = 0
  std::vector<cplx> odd;
};

/// Indices where the cosine vanishes (tangent poles) are dropped.
inline ClosedFormZeros closed_form_zeros_beta0(int alpha) {
  if (alpha < 0) throw DomainError("E_ALPHA_RANGE", "closed-form zeros need alpha in N");
  ClosedFormZeros out;
  const double P = alpha + 2.0;
  const cplx mi{0.0, -1.0};
  for (int k = 0; k <= alpha + 1; ++k) {
    if (2 * k + 1 != alpha + 2) {
      out.even.push_back(mi * std::tan((2 * k + 1) * std::numbers::pi / (2.0 * P)));
    }
    if (2 * k != alpha + 2) out.odd.push_back(mi * std::tan(k * std::numbers::pi / P));
  }
  return out;
}

struct EvenOddCounts {
  int eps = 0;        // zeros of I_{alpha,0} in the open disk
  int theta = 0;      // zeros of J_{alpha,0} in the open disk
  int eps_hat = 0;    // ... in the closed disk
  int theta_hat = 0;
};

/// Tabulated counts for alpha = 4 tau + r.
inline EvenOddCounts even_odd_count_table(int alpha) {
  const int tau = alpha / 4;
  const int r = alpha % 4;
  EvenOddCounts c;
  c.eps = r == 0 ? 2 * tau : 2 * tau + 2;
  c.theta = r <= 2 ? 2 * tau + 1 : 2 * tau + 3;
  c.eps_hat = 2 * tau + 2;
  c.theta_hat = r <= 1 ? 2 * tau + 1 : 2 * tau + 3;
  return c;
}

}  // namespace bergman
