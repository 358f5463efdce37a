#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/analytic.hpp"
#include "bergman/curves.hpp"
#include "bergman/errors.hpp"
#include "bergman/evenodd.hpp"
#include "bergman/io.hpp"
#include "bergman/kernel.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rouche.hpp"

namespace bergman {

enum class Command { KernelEval, Roots, Trace, Rouche, EvenOdd, SAlpha, Measure, Verify };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::KernelEval: return "kernel-eval";
    case Command::Roots: return "roots";
    case Command::Trace: return "trace";
    case Command::Rouche: return "rouche";
    case Command::EvenOdd: return "even-odd";
    case Command::SAlpha: return "s-alpha";
    case Command::Measure: return "measure";
    case Command::Verify: return "verify";
  }
  return "?";
}

enum class Format { Csv, Json, Svg };

inline const char* format_extension(Format f) {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
  }
  return "txt";
}

struct RunConfig {
  Command command = Command::KernelEval;
  std::optional<double> alpha;
  /// upper end of an alpha family (trace only)
  std::optional<int> alpha_to;
  std::optional<double> beta;
  std::optional<cplx> xi;
  std::optional<cplx> w;
  std::optional<cplx> z;
  double r0 = 1.0;
  /// default | geometric:N[:offset] | uniform:N | list:b1;b2;...
  std::string grid = "default";
  /// restrict trace output to one component
  std::optional<int> k;
  /// also run the ODE consistency pass (trace)
  bool refine = false;
  double tol = 1e-12;
  Format format = Format::Csv;
  /// explicit output file; otherwise the output directory, otherwise stdout
  std::optional<std::string> out;
  std::optional<std::string> out_dir;
};

inline BetaGrid parse_grid(const std::string& spec) {
  const auto fail = [&] { return DomainError("E_GRID_SPEC", "unrecognized grid spec '" + spec + "'"); };
  const auto num = [&](const std::string& s) {
    try {
      return parse_double(s);
    } catch (const IoError&) {
      throw fail();
    }
  };
  if (spec == "default") return BetaGrid::geometric();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw fail();
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "geometric") {
    const auto c2 = rest.find(':');
    const int n = static_cast<int>(num(rest.substr(0, c2)));
    const double off = c2 == std::string::npos ? 1e-6 : num(rest.substr(c2 + 1));
    return BetaGrid::geometric(n, off);
  }
  if (kind == "uniform") return BetaGrid::uniform(static_cast<int>(num(rest)));
  if (kind == "list") {
    std::vector<double> v;
    std::string cur;
    for (const char c : rest + ";") {
      if (c == ';') {
        if (!cur.empty()) v.push_back(num(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    return BetaGrid::from_values(std::move(v));
  }
  throw fail();
}

namespace detail {

inline double need(const std::optional<double>& v, const char* name) {
  if (!v) throw DomainError("E_MISSING_ARG", std::string("--") + name + " is required");
  return *v;
}

inline int need_int_alpha(const RunConfig& c) {
  const double a = need(c.alpha, "alpha");
  if (!(a > -1.0)) throw DomainError("E_ALPHA_RANGE", "alpha must satisfy alpha > -1");
  if (!is_integer(a)) throw DomainError("E_ALPHA_NOT_INTEGER", "this command requires integer alpha");
  if (a > kMaxTraceAlpha) throw DomainError("E_ALPHA_RANGE", "alpha exceeds the supported maximum 150");
  return static_cast<int>(a);
}

/// beta in (-1, 0): rejects beta <= -1 and integer beta with distinct codes.
inline double need_g_beta(const RunConfig& c) {
  const double b = need(c.beta, "beta");
  if (!(b > -1.0)) throw DomainError("E_BETA_RANGE", "beta must satisfy beta > -1");
  if (is_integer(b)) throw DomainError("E_BETA_INTEGER", "G is undefined for integer beta");
  if (!(b < 0.0)) throw DomainError("E_BETA_RANGE", "this command requires -1 < beta < 0");
  return b;
}

inline std::int64_t i64(int v) { return v; }

struct Output {
  std::string content;
  std::string stem;
};

inline Output render(const Table& t, Format f, const std::string& stem, const nlohmann::ordered_json& extra = {}) {
  if (f == Format::Svg) throw DomainError("E_FORMAT", "svg output is available for trace and measure only");
  if (f == Format::Json) return {to_json(t, extra).dump(2) + "\n", stem};
  return {to_csv(t), stem};
}

inline std::string alpha_tag(double a) {
  return is_integer(a) ? std::to_string(static_cast<long long>(a)) : format_double(a);
}

inline Output cmd_kernel_eval(const RunConfig& c) {
  const auto p = KernelParams::make(need(c.alpha, "alpha"), need(c.beta, "beta"));
  if (!c.xi && !(c.w && c.z)) throw DomainError("E_MISSING_ARG", "kernel-eval needs --xi or both --w and --z");
  const auto kv = c.xi ? eval_kernel_xi(p, *c.xi) : eval_kernel(p, *c.w, *c.z);
  Table t{"bergman.kernel_value", 1, {"alpha", "beta", "xi_re", "xi_im", "re", "im"}, {}};
  t.rows.push_back({p.alpha(), p.beta(), kv.argument.real(), kv.argument.imag(), kv.value.real(), kv.value.imag()});
  return render(t, c.format, "kernel_alpha" + alpha_tag(p.alpha()));
}

inline Output cmd_roots(const RunConfig& c) {
  const int alpha = need_int_alpha(c);
  const double beta = need_g_beta(c);
  const auto g = g_polynomial(alpha, beta);
  const auto rs = find_roots(g);
  const auto order = label_order(rs.roots, alpha);
  Table t{"bergman.roots", 1, {"alpha", "beta", "index", "re", "im", "residual"}, {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int j = order[i];
    t.rows.push_back({i64(alpha), beta, static_cast<std::int64_t>(i), rs.roots[j].real(), rs.roots[j].imag(),
                      rs.residuals[j]});
  }
  return render(t, c.format, "roots_alpha" + std::to_string(alpha));
}

inline Output cmd_trace(const RunConfig& c) {
  const int a0 = need_int_alpha(c);
  const int a1 = c.alpha_to.value_or(a0);
  if (a1 < a0 || a1 > kMaxTraceAlpha) throw DomainError("E_ALPHA_RANGE", "--alpha-to must lie in [alpha, 150]");
  const auto grid = parse_grid(c.grid);
  std::vector<ZeroCurve> all;
  std::size_t anomalies = 0;
  for (int a = a0; a <= a1; ++a) {
    auto curves = trace_curves(a, grid);
    for (auto& cv : curves) {
      if (c.k && cv.k != *c.k) continue;
      if (c.refine) {
        cv = refine_by_ode(cv, p_alpha(a));
        anomalies += cv.anomalies.size();
      }
      all.push_back(std::move(cv));
    }
  }
  if (all.empty()) throw DomainError("E_CURVE_INDEX", "no curve matches --k");
  if (anomalies > 0) {
    throw ConvergenceError("E_ODE_ANOMALY", "ODE check met |f(X)| < 1e-12 at " + std::to_string(anomalies) +
                                                " samples");
  }
  const std::string stem =
      "curves_alpha" + std::to_string(a0) + (a1 != a0 ? "-" + std::to_string(a1) : std::string{});
  if (c.format == Format::Svg) {
    std::vector<SvgSeries> series;
    for (std::size_t i = 0; i < all.size(); ++i) {
      SvgSeries s;
      s.line = true;
      s.color = palette_color(i);
      for (const auto& smp : all[i].samples) s.points.push_back(smp.z);
      series.push_back(std::move(s));
    }
    return {export_svg_scatter(series, {"zero curves", 3.0}), stem};
  }
  nlohmann::ordered_json extra;
  if (c.refine) {
    double worst = 0.0;
    for (const auto& cv : all) {
      for (const auto& s : cv.samples) worst = std::max(worst, s.ode_deviation.value_or(0.0));
    }
    extra["max_ode_deviation"] = worst;
  }
  return render(curves_table(all), c.format, stem, extra);
}

inline Table rouche_table() { return {"bergman.rouche", 1, {"alpha", "r0", "beta1", "beta2", "midpoint", "sign_changes"}, {}}; }

inline void rouche_row(Table& t, double alpha, double r0) {
  const TruncatedSeries f = is_integer(alpha)
                                ? TruncatedSeries(p_alpha(static_cast<int>(alpha)))
                                : one_minus_z_pow_series(alpha + 1.0, g_truncation_order(alpha, 0.0, 1e-13, 1 << 22));
  const auto rb = rouche_bounds(f, r0);
  t.rows.push_back({alpha, r0, rb.beta1, rb.beta2, rb.midpoint, static_cast<std::int64_t>(rb.sign_changes.size())});
}

inline Output cmd_rouche(const RunConfig& c) {
  if (!(c.r0 > 0.0)) throw DomainError("E_R0_RANGE", "r0 must be positive");
  if (c.beta) {
    const int alpha = need_int_alpha(c);
    const double beta = need_g_beta(c);
    const auto wc = zero_window_verdict(p_alpha(alpha), c.r0, beta);
    Table t{"bergman.rouche_verdict", 1, {"alpha", "r0", "beta", "verdict", "count", "consistent"}, {}};
    t.rows.push_back({i64(alpha), c.r0, beta, std::string(to_string(wc.verdict)),
                      wc.count ? Cell{static_cast<std::int64_t>(*wc.count)} : Cell{std::string("na")},
                      std::string(wc.consistent ? "true" : "false")});
    return render(t, c.format, "rouche_verdict_alpha" + std::to_string(alpha));
  }
  auto t = rouche_table();
  if (c.alpha) {
    const double a = *c.alpha;
    if (!(a > -1.0)) throw DomainError("E_ALPHA_RANGE", "alpha must satisfy alpha > -1");
    rouche_row(t, a, c.r0);
    return render(t, c.format, "rouche_alpha" + alpha_tag(a));
  }
  for (int a = 2; a <= 9; ++a) rouche_row(t, a, c.r0);
  return render(t, c.format, "rouche_table");
}

inline nlohmann::ordered_json counts_json(const EvenOddCounts& k) {
  return {{"eps", k.eps}, {"theta", k.theta}, {"eps_hat", k.eps_hat}, {"theta_hat", k.theta_hat}};
}

inline Output cmd_even_odd(const RunConfig& c) {
  const int alpha = need_int_alpha(c);
  const auto grid = c.grid == "default" ? BetaGrid::geometric(200, 1e-6) : parse_grid(c.grid);
  const auto rep = even_odd_thresholds(alpha, grid);
  Table t{"bergman.even_odd", 1, {"alpha", "beta", "eps", "theta", "eps_eta", "theta_eta"}, {}};
  for (const auto& s : rep.samples) {
    t.rows.push_back({i64(alpha), s.beta, i64(s.eps), i64(s.theta), i64(s.eps_eta), i64(s.theta_eta)});
  }
  const auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json("skipped");
  };
  nlohmann::ordered_json extra;
  extra["table"] = counts_json(rep.table);
  extra["counted"] = counts_json(rep.counted);
  extra["eta0"] = rep.eta0;
  extra["eta"] = rep.eta;
  extra["case1"] = rep.case1_applicable ? "applicable" : "skipped";
  extra["case2"] = rep.case2_applicable ? "applicable" : "skipped";
  extra["beta3"] = opt(rep.beta3);
  extra["beta4"] = opt(rep.beta4);
  extra["beta5"] = opt(rep.beta5);
  extra["beta6"] = opt(rep.beta6);
  extra["limits"] = {{"eps_zero", rep.eps_limit_zero},
                     {"theta_minus_one", rep.theta_limit_minus_one},
                     {"eps_minus_one", rep.eps_limit_minus_one},
                     {"theta_zero", rep.theta_limit_zero},
                     {"eps_eta_zero", rep.eps_eta_limit_zero},
                     {"theta_eta_minus_one", rep.theta_eta_limit_minus_one},
                     {"eps_eta_minus_one", rep.eps_eta_limit_minus_one},
                     {"theta_eta_zero", rep.theta_eta_limit_zero}};
  return render(t, c.format, "even_odd_alpha" + std::to_string(alpha), extra);
}

inline Output cmd_s_alpha(const RunConfig& c) {
  Table t{"bergman.s_alpha", 1, {"alpha", "s_alpha"}, {}};
  if (c.alpha) {
    const int a = need_int_alpha(c);
    t.rows.push_back({i64(a), solve_s_alpha(a)});
    return render(t, c.format, "s_alpha" + std::to_string(a));
  }
  for (int a = 0; a <= 9; ++a) t.rows.push_back({i64(a), solve_s_alpha(a)});
  return render(t, c.format, "s_alpha_table");
}

inline Output cmd_measure(const RunConfig& c) {
  const int alpha = need_int_alpha(c);
  const double beta = need_g_beta(c);
  const auto pts = empirical_measure(alpha, beta);
  const std::string stem = "measure_alpha" + std::to_string(alpha);
  if (c.format == Format::Svg) {
    SvgSeries s;
    for (const auto& p : pts) s.points.push_back(p.z);
    return {export_svg_scatter({s}, {"zeros of G, alpha = " + std::to_string(alpha), 4.0}), stem};
  }
  Table t{"bergman.measure", 1, {"alpha", "beta", "index", "re", "im", "weight"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    t.rows.push_back({i64(alpha), beta, static_cast<std::int64_t>(i), pts[i].z.real(), pts[i].z.imag(), pts[i].weight});
  }
  return render(t, c.format, stem);
}

inline Output cmd_verify(const RunConfig& c) {
  const auto p = KernelParams::make(need(c.alpha, "alpha"), need(c.beta, "beta"));
  const auto rule = gauss_jacobi_rule(p.alpha(), p.beta0(), 64);
  Table t{"bergman.verify", 1, {"check", "n", "z_re", "z_im", "residual", "tolerance", "pass"}, {}};
  const std::vector<cplx> zs = c.z ? std::vector<cplx>{*c.z} : std::vector<cplx>{{0.1, 0.0}, {0.4, 0.3}, {-0.7, 0.0}};
  for (const cplx z : zs) {
    for (int n = -p.m(); n <= 10; ++n) {
      const double r = verify_reproducing(p, z, n, rule);
      t.rows.push_back({std::string("reproducing"), i64(n), z.real(), z.imag(), r, 1e-8,
                        std::string(r < 1e-8 ? "true" : "false")});
    }
  }
  for (int n = -p.m(); n <= 30; ++n) {
    const double r = norm_moment_residual(p, n, rule);
    t.rows.push_back({std::string("norm_moment"), i64(n), 0.0, 0.0, r, 1e-12, std::string(r < 1e-12 ? "true" : "false")});
  }
  return render(t, c.format, "verify_alpha" + alpha_tag(p.alpha()));
}

}  // namespace detail

/// 0 success, 2 invalid input, 3 numerical failure, 1 I/O or unexpected failure.
inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Domain:
    case ErrorKind::Singular: return 2;
    case ErrorKind::Convergence: return 3;
    case ErrorKind::Io: return 1;
  }
  return 1;
}

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

inline std::string diagnostic_json(const std::string& code, const std::string& kind, const std::string& message,
                                   int exit_code) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"kind", kind}, {"message", message}, {"exit_code", exit_code}};
  return j.dump();
}

/// Runs one command. The result goes to `config.out`, else to a file in the
/// output directory (`out_dir`, else $BERGMAN_OUT_DIR), else to `out`.
/// Failures are written to `err` as one JSON object.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    detail::Output o;
    switch (config.command) {
      case Command::KernelEval: o = detail::cmd_kernel_eval(config); break;
      case Command::Roots: o = detail::cmd_roots(config); break;
      case Command::Trace: o = detail::cmd_trace(config); break;
      case Command::Rouche: o = detail::cmd_rouche(config); break;
      case Command::EvenOdd: o = detail::cmd_even_odd(config); break;
      case Command::SAlpha: o = detail::cmd_s_alpha(config); break;
      case Command::Measure: o = detail::cmd_measure(config); break;
      case Command::Verify: o = detail::cmd_verify(config); break;
    }
    std::optional<std::string> path = config.out;
    if (!path) {
      std::optional<std::string> dir = config.out_dir;
      if (!dir) {
        if (const char* env = std::getenv("BERGMAN_OUT_DIR"); env && *env) dir = env;
      }
      if (dir) path = (std::filesystem::path(*dir) / (o.stem + "." + format_extension(config.format))).string();
    }
    if (path) {
      write_text_file(*path, o.content);
    } else {
      out << o.content;
      out.flush();
    }
    return 0;
  } catch (const Error& e) {
    const int code = exit_code_for(e);
    err << diagnostic_json(e.code(), kind_name(e.kind()), e.what(), code) << '\n';
    return code;
  } catch (const std::exception& e) {
    err << diagnostic_json("E_INTERNAL", "internal", e.what(), 1) << '\n';
    return 1;
  }
}

}  // namespace bergman
