#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bergman/analytic.hpp"
#include "bergman/errors.hpp"
#include "bergman/params.hpp"
#include "bergman/poly.hpp"
#include "bergman/roots.hpp"

namespace bergman {

/// Largest alpha accepted by the tracer and measure exports.
inline constexpr int kMaxTraceAlpha = 150;

/// Strictly increasing beta samples inside (-1, 0).
struct BetaGrid {
  std::vector<double> betas;

  /// Geometric offsets from both endpoints, from `min_offset` up to 0.5;
  /// the two halves meet at -0.5.
  static BetaGrid geometric(int points = 400, double min_offset = 1e-6) {
    if (points < 3) throw DomainError("E_GRID", "geometric grid needs at least 3 points");
    if (!(min_offset > 0.0 && min_offset < 0.5)) throw DomainError("E_GRID", "grid offset must lie in (0, 0.5)");
    BetaGrid g;
    const int left = points / 2;
    const int right = points - left;
    const double ratio = min_offset / 0.5;
    for (int i = 0; i < left; ++i) {
      const double u = left == 1 ? 0.5 : min_offset * std::pow(0.5 / min_offset, static_cast<double>(i) / (left - 1));
      g.betas.push_back(-1.0 + u);
    }
    g.betas.back() = -0.5;
    for (int j = 1; j <= right; ++j) g.betas.push_back(-0.5 * std::pow(ratio, static_cast<double>(j) / right));
    return g;
  }

  /// `points` equally spaced interior points of (-1, 0).
  static BetaGrid uniform(int points) {
    if (points < 1) throw DomainError("E_GRID", "uniform grid needs at least 1 point");
    BetaGrid g;
    for (int i = 1; i <= points; ++i) g.betas.push_back(-1.0 + static_cast<double>(i) / (points + 1));
    return g;
  }

  static BetaGrid from_values(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > -1.0 && values[i] < 0.0)) throw DomainError("E_BETA_RANGE", "grid values must lie in (-1, 0)");
      if (i > 0 && values[i] == values[i - 1]) throw DomainError("E_GRID", "grid values must be distinct");
    }
    if (values.empty()) throw DomainError("E_GRID", "grid is empty");
    return BetaGrid{std::move(values)};
  }
};

struct CurveSample {
  double beta = 0.0;
  cplx z;
  /// relative RK4 mismatch against the previous sample (set by refine_by_ode)
  std::optional<double> ode_deviation;
  int ode_substeps = 0;
};

/// One connected component of the zero set of G_{alpha,beta}, beta in (-1,0).
struct ZeroCurve {
  int alpha = 0;
  int k = 0;
  std::vector<CurveSample> samples;
  /// sample indices where the ODE integration met |f| < 1e-12
  std::vector<std::size_t> anomalies;
};

/// G_{alpha,beta} for integer alpha as an exact polynomial of degree alpha+1.
inline ComplexPoly g_polynomial(int alpha, double beta) {
  if (alpha < 0 || alpha > kMaxTraceAlpha) {
    throw DomainError("E_ALPHA_RANGE", "alpha must be an integer in [0, " + std::to_string(kMaxTraceAlpha) + "]");
  }
  if (!(beta > -1.0 && beta < 0.0)) throw DomainError("E_BETA_RANGE", "beta must lie in (-1, 0)");
  return build_G(KernelParams::make(alpha, beta)).to_poly();
}

namespace detail {

/// arg(-z) shifted into [-pi/(alpha+1), 2 pi - pi/(alpha+1)); ascending order
/// follows the pattern exp(i (2k - alpha - 1) pi / (alpha + 1)).
inline double label_angle(cplx z, int alpha) {
  double phi = std::arg(-z);
  if (phi < -std::numbers::pi / (alpha + 1)) phi += 2.0 * std::numbers::pi;
  return phi;
}

inline std::vector<int> label_order(const std::vector<cplx>& roots, int alpha) {
  std::vector<int> idx(roots.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return label_angle(roots[a], alpha) < label_angle(roots[b], alpha);
  });
  return idx;
}

/// perm[i] = index in `next` matched to prev[i]; empty when some match is
/// ambiguous (second-nearest closer than twice the nearest) or not one-to-one.
inline std::vector<int> match_roots(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
  const std::size_t n = prev.size();
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(prev[i] - next[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = static_cast<int>(j);
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (d2 < 2.0 * d1 || used[best]) return {};
    used[best] = true;
    perm[i] = best;
  }
  return perm;
}

inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a == -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace detail

/// Continues the alpha+1 zeros of G_{alpha,beta} across `grid`.
///
/// Roots are solved independently at each beta and matched to the previous
/// sample by nearest neighbour. An ambiguous match inserts the midpoint beta
/// into every curve, down to a minimum step of 1e-9. Components are labelled
/// at the sample nearest beta = -1e-4.
inline std::vector<ZeroCurve> trace_curves(int alpha, const BetaGrid& grid) {
  if (grid.betas.empty()) throw DomainError("E_GRID", "grid is empty");
  const auto& betas = grid.betas;
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) throw DomainError("E_GRID", "grid must be strictly increasing");
  }
  const auto solve = [alpha](double b) { return find_roots(g_polynomial(alpha, b)).roots; };

  std::vector<double> row_beta{betas.front()};
  std::vector<std::vector<cplx>> rows{solve(betas.front())};
  for (std::size_t idx = 1; idx < betas.size(); ++idx) {
    std::vector<double> pending{betas[idx]};
    while (!pending.empty()) {
      const double b = pending.back();
      const double last = row_beta.back();
      auto next = solve(b);
      const auto perm = detail::match_roots(rows.back(), next);
      if (perm.empty()) {
        const double half = 0.5 * (b - last);
        if (half < 1e-9) {
          throw ConvergenceError("E_MATCH_AMBIGUOUS",
                                 "root matching stayed ambiguous down to the minimum beta step near beta = " +
                                     std::to_string(b));
        }
        pending.push_back(last + half);
        continue;
      }
      std::vector<cplx> ordered(next.size());
      for (std::size_t i = 0; i < perm.size(); ++i) ordered[i] = next[perm[i]];
      rows.push_back(std::move(ordered));
      row_beta.push_back(b);
      pending.pop_back();
    }
  }

  std::size_t ref = 0;
  for (std::size_t i = 1; i < row_beta.size(); ++i) {
    if (std::abs(row_beta[i] + 1e-4) < std::abs(row_beta[ref] + 1e-4)) ref = i;
  }
  const auto order = detail::label_order(rows[ref], alpha);

  std::vector<ZeroCurve> curves(alpha + 1);
  for (int k = 0; k <= alpha; ++k) {
    curves[k].alpha = alpha;
    curves[k].k = k;
    curves[k].samples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      curves[k].samples.push_back({row_beta[i], rows[i][order[k]], std::nullopt, 0});
    }
  }
  return curves;
}

/// Checks each consecutive sample pair against RK4 integration of
///   X' = X / f(X) * sum_n a_n X^n / (n + beta)^2,
/// doubling the substep count (up to 4096) until the relative deviation
/// drops below 1e-3. The returned copy carries the deviations.
inline ZeroCurve refine_by_ode(const ZeroCurve& curve, const ComplexPoly& f) {
  if (f.degree() < 1) throw DomainError("E_CONSTANT_F", "constant f has no zero curves to refine");
  ZeroCurve out = curve;
  out.anomalies.clear();
  const int d = f.degree();
  bool anomaly = false;
  const auto rhs = [&](double b, cplx x) {
    cplx s{0.0};
    cplx pw{1.0};
    for (int n = 0; n <= d; ++n) {
      s += f[n] * pw / ((n + b) * (n + b));
      pw *= x;
    }
    const cplx fx = f(x);
    if (std::abs(fx) < 1e-12) {
      anomaly = true;
      return cplx{0.0};
    }
    return x / fx * s;
  };
  const auto integrate = [&](double b0, cplx x, double b1, int steps) {
    const double h = (b1 - b0) / steps;
    for (int i = 0; i < steps; ++i) {
      const double b = b0 + i * h;
      const cplx k1 = rhs(b, x);
      const cplx k2 = rhs(b + 0.5 * h, x + 0.5 * h * k1);
      const cplx k3 = rhs(b + 0.5 * h, x + 0.5 * h * k2);
      const cplx k4 = rhs(b + h, x + h * k3);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
  };

  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const auto& a = out.samples[i - 1];
    auto& b = out.samples[i];
    anomaly = false;
    double dev = std::numeric_limits<double>::infinity();
    int steps = 1;
    for (; steps <= 4096; steps *= 2) {
      const cplx x = integrate(a.beta, a.z, b.beta, steps);
      dev = std::abs(x - b.z) / std::max(std::abs(b.z), 1e-300);
      if (anomaly || dev < 1e-3) break;
    }
    if (anomaly) out.anomalies.push_back(i);
    b.ode_deviation = dev;
    b.ode_substeps = std::min(steps, 4096);
  }
  return out;
}

/// Root of beta -> G_{alpha,beta}(-1) = sum_n binom(alpha+1,n)/(n+beta),
/// which decreases from +inf to -inf on (-1, 0).
inline double solve_s_alpha(int alpha) {
  if (alpha < 0) throw DomainError("E_ALPHA_RANGE", "alpha must be a nonnegative integer");
  const auto g = [alpha](double b) {
    double s = 0.0;
    for (int n = alpha + 1; n >= 0; --n) s += gen_binom(alpha + 1.0, n) / (n + b);
    return s;
  };
  double lo = -1.0 + 1e-15;
  double hi = -1e-15;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct AsymptoteSample {
  double beta = 0.0;
  /// |X| / predicted modulus
  double ratio = 0.0;
  /// |arg(X) - predicted argument|, wrapped to [0, pi]
  double angle_error = 0.0;
  /// branch integer from the nearest-angle fit
  int branch = 0;
};

struct AsymptoteReport {
  int k = 0;
  /// the 5 samples closest to beta = 0, outermost last
  std::vector<AsymptoteSample> near_zero;
  /// the 5 samples closest to beta = -1, outermost last
  std::vector<AsymptoteSample> near_minus_one;
  /// branch integers j_k and s_k inferred at the outermost samples
  int j_k = 0;
  int s_k = 0;
  /// the two outermost samples agree on the branch integer
  bool j_stable = false;
  bool s_stable = false;
};

/// Compares traced curves of P_alpha with the leading-order asymptotes
///   beta -> 0^-:  ((alpha+1)/(-beta))^{1/(alpha+1)} e^{i(2k-alpha-1)pi/(alpha+1)}
///   beta -> -1^+: (alpha(alpha+1)/(1+beta))^{1/alpha} e^{i(2k-alpha-1)pi/alpha}, k >= 1
///                 -(1+beta)/(alpha+1), k = 0.
inline std::vector<AsymptoteReport> check_asymptotics(const std::vector<ZeroCurve>& curves, int alpha) {
  constexpr double pi = std::numbers::pi;
  constexpr int kTake = 5;
  const int p = alpha + 1;
  const double theta_p = std::arg(cplx{(p % 2 == 0) ? 1.0 : -1.0});
  const double theta_1 = pi;  // arg of a_1 = -(alpha+1)
  std::vector<AsymptoteReport> out;
  for (const auto& c : curves) {
    if (c.alpha != alpha) throw DomainError("E_CURVE_ALPHA", "curve alpha does not match");
    AsymptoteReport rep;
    rep.k = c.k;
    const int k = c.k;
    const int n = static_cast<int>(c.samples.size());
    const int take = std::min(kTake, n);
    for (int i = n - take; i < n; ++i) {
      const auto& s = c.samples[i];
      const double mod = std::pow(p / -s.beta, 1.0 / p);
      const double ang = (2.0 * k - p) * pi / p;
      int j = static_cast<int>(std::lround((p * std::arg(s.z) + theta_p) / (2.0 * pi)));
      j = ((j % p) + p) % p;
      rep.near_zero.push_back({s.beta, std::abs(s.z) / mod, std::abs(detail::wrap_angle(std::arg(s.z) - ang)), j});
    }
    for (int i = take - 1; i >= 0; --i) {
      const auto& s = c.samples[i];
      const double u = 1.0 + s.beta;
      AsymptoteSample a{s.beta, 0.0, 0.0, 0};
      if (k == 0 || alpha == 0) {
        const double mod = u / p;
        a.ratio = std::abs(s.z) / mod;
        a.angle_error = std::abs(detail::wrap_angle(std::arg(s.z) - pi));
      } else {
        const double mod = std::pow(alpha * static_cast<double>(p) / u, 1.0 / alpha);
        const double ang = (2.0 * k - p) * pi / alpha;
        a.ratio = std::abs(s.z) / mod;
        a.angle_error = std::abs(detail::wrap_angle(std::arg(s.z) - ang));
        int sk = static_cast<int>(std::lround((alpha * std::arg(s.z) - theta_1 + theta_p - pi) / (2.0 * pi)));
        a.branch = ((sk % alpha) + alpha) % alpha;
      }
      rep.near_minus_one.push_back(a);
    }
    if (!rep.near_zero.empty()) {
      rep.j_k = rep.near_zero.back().branch;
      rep.j_stable = rep.near_zero.size() >= 2 && rep.near_zero[rep.near_zero.size() - 2].branch == rep.j_k;
    }
    if (!rep.near_minus_one.empty()) {
      rep.s_k = rep.near_minus_one.back().branch;
      rep.s_stable =
          rep.near_minus_one.size() >= 2 && rep.near_minus_one[rep.near_minus_one.size() - 2].branch == rep.s_k;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

struct MinModulus {
  int k = 0;
  double t = 0.0;      // minimizing beta
  double R = 0.0;      // |X(t)|
  double theta = 0.0;  // arg X(t)
  /// |sum_{j,l} a_j a_l R^{j+l} cos(theta (j-l)) / (j+t)^2| over the sum of absolute terms
  double stationarity = 0.0;
  bool at_boundary = false;
  bool unimodal = true;
};

/// Normalized stationarity sum of |X|^2 along the curve of P_alpha at beta = t.
inline double stationarity_residual(int alpha, double t, double R, double theta) {
  const auto f = p_alpha(alpha);
  double s = 0.0;
  double scale = 0.0;
  for (int j = 0; j <= alpha + 1; ++j) {
    for (int l = 0; l <= alpha + 1; ++l) {
      const double term = f[j].real() * f[l].real() / ((j + t) * (j + t)) * std::pow(R, j + l);
      s += term * std::cos(theta * (j - l));
      scale += std::abs(term);
    }
  }
  return std::abs(s) / scale;
}

/// Minimum of |X_{alpha,k}| along a traced curve, k >= 1. The discrete
/// minimizer is refined by golden-section search on fresh root solves; a
/// minimum at the first or last sample is reported without refinement.
inline MinModulus find_min_modulus(const ZeroCurve& curve) {
  if (curve.k < 1) throw DomainError("E_CURVE_INDEX", "curve 0 has no interior minimum modulus");
  const auto& s = curve.samples;
  if (s.size() < 3) throw DomainError("E_GRID", "need at least 3 samples");
  MinModulus mm;
  mm.k = curve.k;
  std::size_t imin = 0;
  int local_minima = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i].z) < std::abs(s[imin].z)) imin = i;
    const bool left = i == 0 || std::abs(s[i].z) < std::abs(s[i - 1].z);
    const bool right = i + 1 == s.size() || std::abs(s[i].z) < std::abs(s[i + 1].z);
    if (left && right) ++local_minima;
  }
  mm.unimodal = local_minima == 1;
  if (imin == 0 || imin + 1 == s.size()) {
    mm.at_boundary = true;
    mm.t = s[imin].beta;
    mm.R = std::abs(s[imin].z);
    mm.theta = std::arg(s[imin].z);
    mm.stationarity = stationarity_residual(curve.alpha, mm.t, mm.R, mm.theta);
    return mm;
  }

  cplx ref = s[imin].z;
  const auto root_at = [&](double b) {
    const auto roots = find_roots(g_polynomial(curve.alpha, b)).roots;
    cplx best = roots.front();
    for (const cplx r : roots) {
      if (std::abs(r - ref) < std::abs(best - ref)) best = r;
    }
    return best;
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = s[imin - 1].beta;
  double b = s[imin + 1].beta;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = std::abs(root_at(c));
  double fd = std::abs(root_at(d));
  while (b - a > 1e-10 * std::max(1.0, std::abs(a))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = std::abs(root_at(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = std::abs(root_at(d));
    }
  }
  mm.t = 0.5 * (a + b);
  const cplx x = root_at(mm.t);
  mm.R = std::abs(x);
  mm.theta = std::arg(x);
  mm.stationarity = stationarity_residual(curve.alpha, mm.t, mm.R, mm.theta);
  return mm;
}

struct MeasurePoint {
  cplx z;
  double weight = 0.0;
};

/// Zeros of G_{alpha,beta}, each with weight 1/(alpha+1), in label order.
inline std::vector<MeasurePoint> empirical_measure(int alpha, double beta) {
  const auto roots = find_roots(g_polynomial(alpha, beta)).roots;
  const auto order = detail::label_order(roots, alpha);
  std::vector<MeasurePoint> out;
  out.reserve(roots.size());
  for (const int i : order) out.push_back({roots[i], 1.0 / (alpha + 1)});
  return out;
}

struct CurveDiagnostics {
  int alpha = 0;
  double s_alpha = 0.0;
  /// one entry per k = 1..alpha
  std::vector<MinModulus> t_min;
  /// max_k t - min_k t over interior minima
  double t_spread = 0.0;
  std::vector<AsymptoteReport> asymptotes;
};

inline CurveDiagnostics diagnose_curves(const std::vector<ZeroCurve>& curves, int alpha) {
  CurveDiagnostics dg;
  dg.alpha = alpha;
  dg.s_alpha = solve_s_alpha(alpha);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& c : curves) {
    if (c.k == 0) continue;
    dg.t_min.push_back(find_min_modulus(c));
    if (!dg.t_min.back().at_boundary) {
      lo = std::min(lo, dg.t_min.back().t);
      hi = std::max(hi, dg.t_min.back().t);
    }
  }
  dg.t_spread = hi >= lo ? hi - lo : 0.0;
  dg.asymptotes = check_asymptotics(curves, alpha);
  return dg;
}

}  // namespace bergman
