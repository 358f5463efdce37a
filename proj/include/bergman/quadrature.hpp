#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/kernel.hpp"
#include "bergman/params.hpp"
#include "bergman/special.hpp"

namespace bergman {

/// Gauss rule for the weight t^beta (1-t)^alpha on (0, 1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 0.0;  // exponent of (1 - t)
  double beta = 0.0;   // exponent of t

  int size() const noexcept { return static_cast<int>(nodes.size()); }

  template <typename F>
  auto integrate(F&& f) const {
    decltype(f(0.0) * 1.0) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }

  /// sum_i w_i t_i^k
  double moment(int k) const {
    return integrate([k](double t) { return std::pow(t, k); });
  }
};

namespace detail {

/// Three-term recurrence of the monic Jacobi polynomials for
/// (1-x)^a (1+x)^b on [-1, 1], mapped to t = (1+x)/2.
struct JacobiRecurrence {
  std::vector<double> diag;  // a_j
  std::vector<double> off;   // sqrt(b_j), j = 1..n-1 (off[0] unused)
};

inline JacobiRecurrence jacobi_recurrence(double a, double b, int n) {
  JacobiRecurrence r;
  r.diag.resize(n);
  r.off.assign(n, 0.0);
  const double ab = a + b;
  for (int j = 0; j < n; ++j) {
    double x = 0.0;
    if (j == 0) {
      x = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * j + ab;
      x = (b * b - a * a) / (s * (s + 2.0));
    }
    r.diag[j] = 0.5 * (1.0 + x);
  }
  for (int j = 1; j < n; ++j) {
    double bj = 0.0;
    if (j == 1) {
      bj = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      const double s = 2.0 * j + ab;
      bj = 4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    r.off[j] = 0.5 * std::sqrt(bj);
  }
  return r;
}

/// Orthonormal p_0..p_{n} at t; returns {p_n, p_n', sum_{j<n} p_j^2}.
struct OrthoEval {
  double pn = 0.0;
  double dpn = 0.0;
  double christoffel_sum = 0.0;
};

inline OrthoEval ortho_eval(const JacobiRecurrence& r, double mu0, double t, int n, double off_n) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(mu0);
  double dp_prev = 0.0;
  double dp = 0.0;
  OrthoEval e;
  for (int j = 0; j < n; ++j) {
    e.christoffel_sum += p * p;
    const double bj = j >= 1 ? r.off[j] : 0.0;
    const double bnext = j + 1 < n ? r.off[j + 1] : off_n;
    const double p_next = ((t - r.diag[j]) * p - bj * p_prev) / bnext;
    const double dp_next = ((t - r.diag[j]) * dp + p - bj * dp_prev) / bnext;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  e.pn = p;
  e.dpn = dp;
  return e;
}

}  // namespace detail

/// Golub-Welsch rule for t^beta (1-t)^alpha on (0,1) with n nodes.
///
/// Nodes come from the symmetric tridiagonal Jacobi matrix; each node is
/// then polished by Newton on the orthonormal p_n and its weight recomputed
/// as the Christoffel number 1 / sum_{j<n} p_j(t)^2, which keeps small
/// weights near the endpoints accurate to full relative precision.
inline QuadratureRule gauss_jacobi_rule(double alpha, double beta, int n_nodes) {
  if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("E_QUAD_EXPONENT", "Jacobi exponents must exceed -1");
  if (n_nodes < 1) throw DomainError("E_QUAD_NODES", "node count must be positive");
  const int n = n_nodes;
  const auto rec = detail::jacobi_recurrence(alpha, beta, n + 1);
  const double mu0 = beta_fn(beta + 1.0, alpha + 1.0);

  Eigen::VectorXd d(n);
  Eigen::VectorXd e(std::max(n - 1, 0));
  for (int j = 0; j < n; ++j) d[j] = rec.diag[j];
  for (int j = 1; j < n; ++j) e[j - 1] = rec.off[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("E_QUAD_EIGEN", "tridiagonal eigensolve failed for n = " + std::to_string(n));
  }

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto ev = detail::ortho_eval(rec, mu0, t, n, rec.off[n]);
      if (ev.dpn == 0.0) break;
      const double step = ev.pn / ev.dpn;
      const double next = t - step;
      if (!(next > 0.0 && next < 1.0)) break;
      t = next;
      if (std::abs(step) <= 1e-17 * std::max(t, 1e-300)) break;
    }
    const auto ev = detail::ortho_eval(rec, mu0, t, n, rec.off[n]);
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / ev.christoffel_sum;
  }
  return rule;
}

/// Worst relative error of the moments k = 0..2n-1 against B(k+beta+1, alpha+1).
inline double rule_moment_error(const QuadratureRule& rule) {
  double worst = 0.0;
  for (int k = 0; k <= 2 * rule.size() - 1; ++k) {
    const double exact = beta_fn(k + rule.beta + 1.0, rule.alpha + 1.0);
    worst = std::max(worst, std::abs(rule.moment(k) - exact) / exact);
  }
  return worst;
}

/// Rule with the default 64 nodes, doubling (up to 512) until the moment
/// self-check passes `tol`.
inline QuadratureRule gauss_jacobi_rule_checked(double alpha, double beta, double tol = 1e-12) {
  for (int n = 64; n <= 512; n *= 2) {
    auto rule = gauss_jacobi_rule(alpha, beta, n);
    if (rule_moment_error(rule) <= tol) return rule;
  }
  throw ConvergenceError("E_QUAD_SELF_CHECK", "Jacobi rule failed its moment self-check up to 512 nodes");
}

/// |<K(., z), e_n> - conj(e_n(z))| with the inner product of the weighted space.
///
/// In polar form w = sqrt(t) e^{i theta}, dmu = t^beta (1-t)^alpha dt dtheta / (2 pi B(alpha+1,beta+1)).
/// The angular mean of K(w, z) conj(w^n) is taken with the trapezoidal rule
/// (exponentially accurate for this analytic periodic integrand) and the
/// radial integral with `rule`, which must carry the exponents (beta0, alpha);
/// the factor t^m of the weight moves into the integrand.
inline double verify_reproducing(const KernelParams& p, cplx z, int n, const QuadratureRule& rule) {
  if (!(std::abs(z) < 1.0)) throw DomainError("E_POINT_DISK", "z must lie in the open unit disk");
  if (n < -p.m()) throw DomainError("E_BASIS_INDEX", "basis index must satisfy n >= -m");
  if (rule.alpha != p.alpha() || rule.beta != p.beta0()) {
    throw DomainError("E_QUAD_EXPONENT", "quadrature exponents must match (alpha, beta0)");
  }
  constexpr int kAngles = 128;
  const double a1 = p.alpha() + 1.0;
  const double lb = ln_beta(a1, p.beta() + 1.0);
  const double cn = std::exp(0.5 * (lb - ln_beta(a1, n + p.beta() + 1.0)));
  const cplx zc = std::conj(z);
  const auto radial = [&](double t) {
    const double r = std::sqrt(t);
    cplx mean{0.0};
    for (int j = 0; j < kAngles; ++j) {
      const double th = 2.0 * std::numbers::pi * j / kAngles;
      const cplx w = std::polar(r, th);
      mean += eval_kernel_xi(p, w * zc).value * std::polar(1.0, -n * th);
    }
    return mean / static_cast<double>(kAngles) * std::pow(r, n) * std::pow(t, p.m());
  };
  const cplx inner = cn * std::exp(-lb) * rule.integrate(radial);
  return std::abs(inner - std::conj(basis_element(p, n, z)));
}

/// |sum_i w_i t_i^{n+m} - B(n+beta+1, alpha+1)| / B(n+beta+1, alpha+1) for a
/// rule with exponents (beta0, alpha): the squared norm of e_n equals one
/// exactly when this vanishes.
inline double norm_moment_residual(const KernelParams& p, int n, const QuadratureRule& rule) {
  if (n < -p.m()) throw DomainError("E_BASIS_INDEX", "basis index must satisfy n >= -m");
  if (rule.alpha != p.alpha() || rule.beta != p.beta0()) {
    throw DomainError("E_QUAD_EXPONENT", "quadrature exponents must match (alpha, beta0)");
  }
  const double exact = beta_fn(n + p.beta() + 1.0, p.alpha() + 1.0);
  const int e = n + p.m();
  const double approx = rule.integrate([e](double t) { return std::pow(t, e); });
  return std::abs(approx - exact) / exact;
}

}  // namespace bergman
