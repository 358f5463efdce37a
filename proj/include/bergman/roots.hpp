#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/poly.hpp"

namespace bergman {

/// All roots of a polynomial, one entry per root (count == degree).
struct RootSet {
  std::vector<cplx> roots;
  /// |p(root)| for each root
  std::vector<double> residuals;
  /// cluster id per root; roots sharing an id have overlapping inclusion disks
  std::vector<int> cluster;
  bool clustered = false;
  int aberth_sweeps = 0;

  std::size_t size() const noexcept { return roots.size(); }
};

struct RootOptions {
  int max_sweeps = 200;
  int polish_steps = 20;
  /// Initial circle phase; keeps real polynomials from starting with real iterates.
  double phase = 0.4;
};

/// Thrown when the Aberth iteration hits its cap; carries the best iterate.
class RootFindingError : public ConvergenceError {
 public:
  RootFindingError(const std::string& message, RootSet best)
      : ConvergenceError("E_ROOTS_NO_CONVERGENCE", message), best_(std::move(best)) {}
  const RootSet& best() const noexcept { return best_; }

 private:
  RootSet best_;
};

namespace detail {

/// Residual acceptance threshold 1e-10 * max|c| * max(1,|z|)^deg.
inline double root_residual_limit(const ComplexPoly& p, cplx z) {
  return 1e-10 * p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(z)), p.degree());
}

/// For real coefficients: snaps roots whose own conjugate is their nearest
/// conjugate partner onto the real axis and averages conjugate pairs, so the
/// set is exactly closed under conjugation.
inline void symmetrize_conjugates(std::vector<cplx>& roots) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    const cplx c = std::conj(roots[i]);
    int best = i;
    double best_d = std::abs(c - roots[i]);
    for (int j = 0; j < n; ++j) {
      const double dj = std::abs(c - roots[j]);
      if (j != i && dj < best_d) {
        best = j;
        best_d = dj;
      }
    }
    partner[i] = best;
  }
  for (int i = 0; i < n; ++i) {
    const int j = partner[i];
    if (j == i) {
      roots[i] = cplx{roots[i].real(), 0.0};
    } else if (partner[j] == i && i < j) {
      const cplx upper = roots[i].imag() >= 0.0 ? roots[i] : std::conj(roots[i]);
      const cplx other = roots[j].imag() >= 0.0 ? roots[j] : std::conj(roots[j]);
      const cplx avg = 0.5 * (upper + other);
      roots[i] = roots[i].imag() >= 0.0 ? avg : std::conj(avg);
      roots[j] = std::conj(roots[i]);
    }
  }
}

inline void label_clusters(const ComplexPoly& p, RootSet& rs) {
  const int n = static_cast<int>(rs.roots.size());
  const auto dp = p.derivative();
  std::vector<double> radius(n);
  for (int i = 0; i < n; ++i) {
    const cplx d = dp(rs.roots[i]);
    const double eps_floor = 4.0 * std::numeric_limits<double>::epsilon() * p.abs_sum(std::abs(rs.roots[i]));
    const double val = std::max(rs.residuals[i], eps_floor);
    radius[i] = std::abs(d) > 0.0 ? n * val / std::abs(d) : std::numeric_limits<double>::infinity();
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(rs.roots[i] - rs.roots[j]) <= radius[i] + radius[j]) parent[find(i)] = find(j);
    }
  }
  rs.cluster.resize(n);
  std::vector<int> size(n, 0);
  for (int i = 0; i < n; ++i) ++size[find(i)];
  for (int i = 0; i < n; ++i) {
    rs.cluster[i] = find(i);
    if (size[rs.cluster[i]] > 1) rs.clustered = true;
  }
}

/// Winding number of p around the circle as the sum of principal increments
/// of arg p between samples. Arcs are bisected until each is shorter than half
/// the distance to the nearest root and turns arg p by at most 0.5 rad.
inline double winding_by_arg_tracking(const ComplexPoly& p, const std::vector<cplx>& roots, cplx center,
                                      double radius) {
  const auto point = [&](double t) { return center + std::polar(radius, t); };
  const auto dist = [&](cplx x) {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx r : roots) d = std::min(d, std::abs(x - r));
    return d;
  };
  struct Arc {
    double t0, t1;
    cplx p0, p1;
    int depth;
  };
  constexpr int kStart = 256;
  double total = 0.0;
  std::vector<Arc> stack;
  for (int j = kStart - 1; j >= 0; --j) {
    const double t0 = 2.0 * std::numbers::pi * j / kStart;
    const double t1 = 2.0 * std::numbers::pi * (j + 1) / kStart;
    stack.push_back({t0, t1, p(point(t0)), p(point(t1)), 0});
  }
  while (!stack.empty()) {
    const Arc a = stack.back();
    stack.pop_back();
    const double turn = std::arg(a.p1 / a.p0);
    const double len = radius * (a.t1 - a.t0);
    const double tm = 0.5 * (a.t0 + a.t1);
    if (a.depth < 60 && (std::abs(turn) > 0.5 || len > 0.5 * dist(point(tm)))) {
      const cplx pm = p(point(tm));
      stack.push_back({tm, a.t1, pm, a.p1, a.depth + 1});
      stack.push_back({a.t0, tm, a.p0, pm, a.depth + 1});
      continue;
    }
    total += turn;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace detail

/// Simultaneous Aberth-Ehrlich iteration followed by Newton polishing.
///
/// Initial iterates are the d-th roots of unity rotated by `phase` and scaled
/// by the Cauchy bound 1 + max|c_n / c_d|, so results are deterministic.
/// An iterate is frozen once |p(z)| falls to the Horner rounding level.
inline RootSet find_roots(const ComplexPoly& p, const RootOptions& opt = {}) {
  const int d = p.degree();
  if (d < 1) throw DomainError("E_ROOTS_DEGREE", "find_roots needs degree >= 1");
  const cplx lead = p.leading();
  double cauchy = 0.0;
  for (int n = 0; n < d; ++n) cauchy = std::max(cauchy, std::abs(p[n] / lead));
  cauchy += 1.0;

  RootSet rs;
  rs.roots.resize(d);
  for (int k = 0; k < d; ++k) {
    rs.roots[k] = std::polar(cauchy, 2.0 * std::numbers::pi * k / d + opt.phase);
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(d, false);
  int sweeps = 0;
  for (; sweeps < opt.max_sweeps; ++sweeps) {
    bool all_done = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      const cplx z = rs.roots[i];
      const auto [pv, dpv] = p.eval_with_derivative(z);
      if (std::abs(pv) <= 4.0 * kEps * p.abs_sum(std::abs(z))) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const cplx ratio = pv / dpv;
      cplx s{0.0};
      for (int j = 0; j < d; ++j) {
        if (j != i) s += 1.0 / (z - rs.roots[j]);
      }
      const cplx step = ratio / (1.0 - ratio * s);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) rs.roots[i] = z - step;
    }
    if (all_done) break;
  }
  rs.aberth_sweeps = sweeps;

  for (int i = 0; i < d; ++i) {
    cplx z = rs.roots[i];
    double best = std::abs(p(z));
    for (int it = 0; it < opt.polish_steps; ++it) {
      const auto [pv, dpv] = p.eval_with_derivative(z);
      if (dpv == cplx{0.0}) break;
      const cplx next = z - pv / dpv;
      const double nv = std::abs(p(next));
      if (!(nv < best)) break;
      z = next;
      best = nv;
    }
    rs.roots[i] = z;
  }

  if (p.has_real_coeffs()) detail::symmetrize_conjugates(rs.roots);

  rs.residuals.resize(d);
  bool ok = true;
  for (int i = 0; i < d; ++i) {
    rs.residuals[i] = std::abs(p(rs.roots[i]));
    if (!(rs.residuals[i] <= detail::root_residual_limit(p, rs.roots[i]))) ok = false;
  }
  detail::label_clusters(p, rs);
  if (!ok && !rs.clustered) {
    throw RootFindingError("Aberth iteration did not converge after " + std::to_string(sweeps) + " sweeps",
                           rs);
  }
  return rs;
}

/// Zero count inside the circle |xi - center| = radius.
struct DiskZeroCount {
  cplx center;
  double radius = 0.0;
  int count = 0;
  /// winding number before rounding
  double winding_raw = 0.0;
  int samples = 0;
};

/// Argument-principle count: trapezoidal rule for (1/2 pi i) \oint p'/p, with
/// the sample count doubled from 256 until consecutive estimates agree to 0.05.
/// If 2^16 samples do not settle it (a root close to the contour), the
/// winding is taken from adaptive arg tracking instead and `samples` is -1.
/// Roots within 1e-8 * radius of the contour are rejected up front.
inline DiskZeroCount count_zeros_disk(const ComplexPoly& p, cplx center, double radius) {
  if (!(radius > 0.0)) throw DomainError("E_RADIUS", "contour radius must be positive");
  if (p.is_zero()) throw DomainError("E_ZERO_POLY", "cannot count zeros of the zero polynomial");
  DiskZeroCount out{center, radius, 0, 0.0, 0};
  if (p.degree() == 0) return out;

  const auto rs = find_roots(p);
  for (const cplx r : rs.roots) {
    if (std::abs(std::abs(r - center) - radius) < 1e-8 * radius) {
      throw SingularError("E_ROOT_ON_CONTOUR", "a root lies within 1e-8*radius of the contour");
    }
  }

  const auto winding = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const cplx u = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
      const cplx xi = center + radius * u;
      const auto [pv, dpv] = p.eval_with_derivative(xi);
      acc += (dpv / pv * radius * u).real();
    }
    return acc / m;
  };

  int m = 256;
  double prev = winding(m);
  double cur = prev;
  bool stable = false;
  while (m < (1 << 16)) {
    m *= 2;
    cur = winding(m);
    if (std::abs(cur - prev) < 0.05) {
      stable = true;
      break;
    }
    prev = cur;
  }
  if (!stable) {
    // a root close to the contour: track arg p along arcs refined near it
    double nearest = std::numeric_limits<double>::infinity();
    for (const cplx r : rs.roots) nearest = std::min(nearest, std::abs(std::abs(r - center) - radius));
    cur = detail::winding_by_arg_tracking(p, rs.roots, center, radius);
    m = -1;
    stable = nearest > 0.0;
  }
  const double rounded = std::round(cur);
  if (!stable || std::abs(cur - rounded) >= 0.25) {
    throw ConvergenceError("E_WINDING_UNSTABLE", "winding number did not stabilize: " + std::to_string(cur));
  }
  out.count = static_cast<int>(rounded);
  out.winding_raw = cur;
  out.samples = m;
  return out;
}

}  // namespace bergman
