#ifndef BOHM_IO_SVG_HPP
#define BOHM_IO_SVG_HPP

// Minimal deterministic SVG line plots. Output depends only on the input
// values: numbers are printed with fixed precision and no timestamps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bohm/error.hpp"

namespace bohm::io {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f4e9c";
  bool bars = false;
};

struct PlotStyle {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 400;
  /// Vertical marker lines (e.g. the lens plane), in data coordinates.
  std::vector<double> vlines;
  bool equal_aspect = false;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    default: out += c;
    }
  }
  return out;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

} // namespace detail

inline std::string render_svg(const std::vector<Series> &series, const PlotStyle &style) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  std::size_t points = 0;
  for (const auto &s : series) {
    if (s.x.size() != s.y.size()) throw DomainError("svg: series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
      ++points;
    }
  }
  if (points == 0) throw DomainError("svg: nothing to plot");
  for (double v : style.vlines) {
    x0 = std::min(x0, v);
    x1 = std::max(x1, v);
  }
  if (std::any_of(series.begin(), series.end(), [](const Series &s) { return s.bars; })) y0 = std::min(y0, 0.0);
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
  const double pad_y = 0.05 * (y1 - y0);
  y0 -= pad_y;
  y1 += pad_y;

  const double left = 70, right = 20, top = 36, bottom = 50;
  double pw = style.width - left - right, ph = style.height - top - bottom;
  if (style.equal_aspect) {
    const double s = std::min(pw / (x1 - x0), ph / (y1 - y0));
    pw = s * (x1 - x0);
    ph = s * (y1 - y0);
  }
  auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty())
    out += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"20\" text-anchor=\"middle\">" +
           detail::escape(style.title) + "</text>\n";
  out += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" + detail::num(pw) +
         "\" height=\"" + detail::num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0, yv = y0 + (y1 - y0) * i / 4.0;
    out += "<text x=\"" + detail::num(X(xv)) + "\" y=\"" + detail::num(top + ph + 16) +
           "\" text-anchor=\"middle\">" + detail::tick_label(xv) + "</text>\n";
    out += "<text x=\"" + detail::num(left - 6) + "\" y=\"" + detail::num(Y(yv) + 4) + "\" text-anchor=\"end\">" +
           detail::tick_label(yv) + "</text>\n";
  }
  out += "<text x=\"" + detail::num(left + pw / 2) + "\" y=\"" + detail::num(top + ph + 38) +
         "\" text-anchor=\"middle\">" + detail::escape(style.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + detail::num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         detail::num(top + ph / 2) + ")\">" + detail::escape(style.y_label) + "</text>\n";
  if (y0 < 0.0 && y1 > 0.0)
    out += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(Y(0)) + "\" x2=\"" + detail::num(left + pw) +
           "\" y2=\"" + detail::num(Y(0)) + "\" stroke=\"#bbbbbb\"/>\n";
  for (double v : style.vlines)
    out += "<line class=\"lens\" x1=\"" + detail::num(X(v)) + "\" y1=\"" + detail::num(top) + "\" x2=\"" +
           detail::num(X(v)) + "\" y2=\"" + detail::num(top + ph) + "\" stroke=\"#999999\" stroke-width=\"2\"/>\n";

  for (const auto &s : series) {
    if (s.bars) {
      const double w = s.x.size() > 1 ? (s.x[1] - s.x[0]) : 1.0;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double top_y = Y(std::max(s.y[i], 0.0)), base = Y(std::min(s.y[i], 0.0));
        out += "<rect x=\"" + detail::num(X(s.x[i] - w / 2)) + "\" y=\"" + detail::num(top_y) + "\" width=\"" +
               detail::num(std::max(0.0, X(s.x[i] + w / 2) - X(s.x[i] - w / 2))) + "\" height=\"" +
               detail::num(base - top_y) + "\" fill=\"" + s.color + "\"/>\n";
      }
      continue;
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out += (i ? " " : "") + detail::num(X(s.x[i])) + "," + detail::num(Y(s.y[i]));
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace bohm::io

#endif // BOHM_IO_SVG_HPP
