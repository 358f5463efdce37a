#pragma once

#include <CLI11.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "bergman/cli.hpp"

namespace bergman {

/// "re" or "re,im"
inline cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s), 0.0};
  return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

/// Either a RunConfig or the exit code to return immediately (help, usage error).
using ParseResult = std::variant<RunConfig, int>;

inline ParseResult parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Bergman kernels: evaluation, zero curves and zero counts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bergman 1.0.0");

  RunConfig cfg;
  std::optional<std::string> xi, w, z, format;

  const std::map<std::string, Command> commands{
      {"kernel-eval", Command::KernelEval}, {"roots", Command::Roots},     {"trace", Command::Trace},
      {"rouche", Command::Rouche},          {"even-odd", Command::EvenOdd}, {"s-alpha", Command::SAlpha},
      {"measure", Command::Measure},        {"verify", Command::Verify}};
  const std::map<std::string, std::string> help{
      {"kernel-eval", "evaluate the reproducing kernel"},
      {"roots", "zeros of G for integer alpha"},
      {"trace", "zero curves over beta in (-1, 0)"},
      {"rouche", "parameter window (beta1, beta2) for P_alpha"},
      {"even-odd", "zero counts of the even and odd kernel numerators"},
      {"s-alpha", "beta at which the real zero curve crosses -1"},
      {"measure", "empirical zero measure of G"},
      {"verify", "reproducing property and norm checks by quadrature"}};

  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
    sub->add_option("--alpha", cfg.alpha, "weight exponent alpha > -1");
    sub->add_option("--beta", cfg.beta, "weight exponent beta > -1");
    sub->add_option("--format", format, "csv | json | svg");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--out-dir", cfg.out_dir, "output directory (default $BERGMAN_OUT_DIR)");
    if (cmd == Command::KernelEval) {
      sub->add_option("--xi", xi, "kernel argument xi = w conj(z), as re or re,im");
      sub->add_option("--w", w, "first point, re or re,im");
      sub->add_option("--z", z, "second point, re or re,im");
    }
    if (cmd == Command::Verify) sub->add_option("--z", z, "evaluation point, re or re,im");
    if (cmd == Command::Rouche) sub->add_option("--r0", cfg.r0, "disk radius (default 1)");
    if (cmd == Command::Trace || cmd == Command::EvenOdd) {
      sub->add_option("--grid", cfg.grid, "default | geometric:N[:offset] | uniform:N | list:b1;b2;...");
    }
    if (cmd == Command::Trace) {
      sub->add_option("--alpha-to", cfg.alpha_to, "trace every alpha in [alpha, alpha-to]");
      sub->add_option("--k", cfg.k, "export only component k");
      sub->add_flag("--refine", cfg.refine, "check the curves against the parameter ODE");
    }
  }

  try {
    app.parse(argc, argv);
    if (xi) cfg.xi = parse_complex(*xi);
    if (w) cfg.w = parse_complex(*w);
    if (z) cfg.z = parse_complex(*z);
    if (format) {
      if (*format == "csv") cfg.format = Format::Csv;
      else if (*format == "json") cfg.format = Format::Json;
      else if (*format == "svg") cfg.format = Format::Svg;
      else throw DomainError("E_FORMAT", "unknown format '" + *format + "'");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "bergman 1.0.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << diagnostic_json("E_USAGE", "usage", e.what(), 2) << '\n';
    return 2;
  } catch (const Error& e) {
    err << diagnostic_json(e.code(), kind_name(e.kind()), e.what(), 2) << '\n';
    return 2;
  }
  return cfg;
}

}  // namespace bergman
