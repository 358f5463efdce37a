#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bergman/curves.hpp"
#include "bergman/errors.hpp"

namespace bergman {

using Cell = std::variant<double, std::int64_t, std::string>;

/// A named, versioned table: the unit of every CSV and JSON export.
struct Table {
  std::string schema;
  int version = 1;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g: enough digits for strtod to recover the exact double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += t.columns[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw IoError("E_CSV_SHAPE", "row width does not match the header");
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      const auto s = format_cell(row[j]);
      if (s.find_first_of(",\n") != std::string::npos) throw IoError("E_CSV_CELL", "cell contains a separator");
      out += s;
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json cell_to_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

/// {"schema", "version", "columns", "rows"}, plus `extra` keys when given.
inline nlohmann::ordered_json to_json(const Table& t, const nlohmann::ordered_json& extra = {}) {
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["version"] = t.version;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_to_json(c));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  if (extra.is_object()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  }
  return j;
}

/// Header and raw string cells of a CSV document.
struct CsvDocument {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline CsvDocument parse_csv(const std::string& text) {
  CsvDocument doc;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("E_CSV_EMPTY", "CSV input is empty");
  doc.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != doc.columns.size()) throw IoError("E_CSV_SHAPE", "row width does not match the header");
    doc.rows.push_back(std::move(cells));
  }
  return doc;
}

inline double parse_double(const std::string& s) {
  const char* b = s.c_str();
  char* e = nullptr;
  const double v = std::strtod(b, &e);
  if (e == b || *e != '\0') throw IoError("E_CSV_NUMBER", "not a number: '" + s + "'");
  return v;
}

/// Tidy curve rows sorted by beta, then k.
inline Table curves_table(const std::vector<ZeroCurve>& curves) {
  struct Row {
    int alpha;
    double beta;
    int k;
    cplx z;
  };
  std::vector<Row> rows;
  for (const auto& c : curves) {
    for (const auto& s : c.samples) rows.push_back({c.alpha, s.beta, c.k, s.z});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.k < b.k;
  });
  Table t{"bergman.curves", 1, {"alpha", "beta", "k", "re", "im"}, {}};
  t.rows.reserve(rows.size());
  for (const auto& r : rows) {
    t.rows.push_back({std::int64_t{r.alpha}, r.beta, std::int64_t{r.k}, r.z.real(), r.z.imag()});
  }
  return t;
}

inline std::string export_curves(const std::vector<ZeroCurve>& curves) {
  if (curves.empty()) throw DomainError("E_EMPTY_EXPORT", "no curves to export");
  return to_csv(curves_table(curves));
}

struct CurveRow {
  int alpha = 0;
  double beta = 0.0;
  int k = 0;
  double re = 0.0;
  double im = 0.0;
  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

inline std::vector<CurveRow> parse_curves_csv(const std::string& text) {
  const auto doc = parse_csv(text);
  if (doc.columns != std::vector<std::string>{"alpha", "beta", "k", "re", "im"}) {
    throw IoError("E_CSV_HEADER", "expected header alpha,beta,k,re,im");
  }
  std::vector<CurveRow> out;
  out.reserve(doc.rows.size());
  for (const auto& r : doc.rows) {
    out.push_back({static_cast<int>(parse_double(r[0])), parse_double(r[1]), static_cast<int>(parse_double(r[2])),
                   parse_double(r[3]), parse_double(r[4])});
  }
  return out;
}

inline std::vector<CurveRow> curve_rows(const std::vector<ZeroCurve>& curves) {
  const auto t = curves_table(curves);
  std::vector<CurveRow> out;
  for (const auto& r : t.rows) {
    out.push_back({static_cast<int>(std::get<std::int64_t>(r[0])), std::get<double>(r[1]),
                   static_cast<int>(std::get<std::int64_t>(r[2])), std::get<double>(r[3]), std::get<double>(r[4])});
  }
  return out;
}

struct SvgSeries {
  std::vector<cplx> points;
  std::string color = "#1f77b4";
  /// draw a polyline through the points instead of markers
  bool line = false;
};

struct SvgStyle {
  std::string title;
  double marker_radius = 3.0;
};

namespace detail {

inline std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string svg_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Standalone 800x800 SVG: frame, axes through the origin when visible, tick
/// labels at the data bounds, then one layer per series.
inline std::string export_svg_scatter(const std::vector<SvgSeries>& series, const SvgStyle& style = {}) {
  constexpr double kSize = 800.0;
  constexpr double kMargin = 60.0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const auto& s : series) {
    for (const cplx p : s.points) {
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
        throw DomainError("E_SVG_POINT", "SVG export requires finite points");
      }
      if (!any) {
        xmin = xmax = p.real();
        ymin = ymax = p.imag();
        any = true;
      }
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
  }
  if (!any) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const auto widen = [](double& lo, double& hi) {
    double pad = 0.05 * (hi - lo);
    if (pad == 0.0) pad = std::max(1.0, std::abs(lo)) * 0.5;
    lo -= pad;
    hi += pad;
  };
  widen(xmin, xmax);
  widen(ymin, ymax);
  const double span = kSize - 2.0 * kMargin;
  const auto sx = [&](double x) { return kMargin + (x - xmin) / (xmax - xmin) * span; };
  const auto sy = [&](double y) { return kSize - kMargin - (y - ymin) / (ymax - ymin) * span; };
  using detail::svg_num;

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    o += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::svg_escape(style.title) + "</text>\n";
  }
  o += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  o += "<rect x=\"" + svg_num(kMargin) + "\" y=\"" + svg_num(kMargin) + "\" width=\"" + svg_num(span) +
       "\" height=\"" + svg_num(span) + "\"/>\n";
  if (xmin < 0.0 && xmax > 0.0) {
    o += "<line x1=\"" + svg_num(sx(0.0)) + "\" y1=\"" + svg_num(kMargin) + "\" x2=\"" + svg_num(sx(0.0)) +
         "\" y2=\"" + svg_num(kSize - kMargin) + "\" stroke-dasharray=\"4 4\"/>\n";
  }
  if (ymin < 0.0 && ymax > 0.0) {
    o += "<line x1=\"" + svg_num(kMargin) + "\" y1=\"" + svg_num(sy(0.0)) + "\" x2=\"" + svg_num(kSize - kMargin) +
         "\" y2=\"" + svg_num(sy(0.0)) + "\" stroke-dasharray=\"4 4\"/>\n";
  }
  o += "</g>\n";
  o += "<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  const auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };
  o += "<text x=\"" + svg_num(kMargin) + "\" y=\"" + svg_num(kSize - kMargin + 20) + "\">" + label(xmin) + "</text>\n";
  o += "<text x=\"" + svg_num(kSize - kMargin) + "\" y=\"" + svg_num(kSize - kMargin + 20) +
       "\" text-anchor=\"end\">" + label(xmax) + "</text>\n";
  o += "<text x=\"" + svg_num(kMargin - 6) + "\" y=\"" + svg_num(kSize - kMargin) + "\" text-anchor=\"end\">" +
       label(ymin) + "</text>\n";
  o += "<text x=\"" + svg_num(kMargin - 6) + "\" y=\"" + svg_num(kMargin + 12) + "\" text-anchor=\"end\">" +
       label(ymax) + "</text>\n";
  o += "<text x=\"400\" y=\"" + svg_num(kSize - 15) + "\" text-anchor=\"middle\">Re</text>\n";
  o += "<text x=\"20\" y=\"400\" text-anchor=\"middle\">Im</text>\n";
  o += "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    o += "<g id=\"series" + std::to_string(i) + "\">\n";
    if (s.line) {
      o += "<polyline fill=\"none\" stroke=\"" + detail::svg_escape(s.color) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = 0; j < s.points.size(); ++j) {
        if (j) o += ' ';
        o += svg_num(sx(s.points[j].real())) + "," + svg_num(sy(s.points[j].imag()));
      }
      o += "\"/>\n";
    } else {
      for (const cplx p : s.points) {
        o += "<circle cx=\"" + svg_num(sx(p.real())) + "\" cy=\"" + svg_num(sy(p.imag())) + "\" r=\"" +
             svg_num(style.marker_radius) + "\" fill=\"" + detail::svg_escape(s.color) + "\"/>\n";
      }
    }
    o += "</g>\n";
  }
  o += "</svg>\n";
  return o;
}

/// Fixed palette, indexed modulo its size.
inline const char* palette_color(std::size_t i) {
  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kColors[i % 10];
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("E_IO_OPEN", "cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("E_IO_WRITE", "write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("E_IO_OPEN", "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace bergman
