#include "artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cli {

namespace {

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, precision);
  return std::string(buf, ptr);
}

std::string fmt_label(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 4);
  return std::string(buf, ptr);
}

}  // namespace

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const double* data, std::size_t rows, std::size_t cols) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << header[c] << (c + 1 < header.size() ? "," : "\n");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out << fmt_double(data[r * cols + c]) << (c + 1 < cols ? "," : "\n");
    }
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series) {
  constexpr double kLeft = 64.0, kRight = 784.0, kTop = 32.0, kBottom = 352.0;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    if (s.ys.empty()) continue;
    xmin = std::min(xmin, s.x0);
    xmax = std::max(xmax, s.x0 + static_cast<double>(s.ys.size() - 1));
    for (double y : s.ys) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto sy = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\">\n";
  svg += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + title + "</text>\n";

  // gridlines and tick labels
  for (int i = 0; i <= 4; ++i) {
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double py = sy(fy);
    svg += "<line x1=\"" + fmt_fixed(kLeft, 2) + "\" y1=\"" + fmt_fixed(py, 2) +
           "\" x2=\"" + fmt_fixed(kRight, 2) + "\" y2=\"" + fmt_fixed(py, 2) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_fixed(kLeft - 6.0, 2) + "\" y=\"" +
           fmt_fixed(py + 3.0, 2) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
           fmt_label(fy) + "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double px = sx(fx);
    svg += "<line x1=\"" + fmt_fixed(px, 2) + "\" y1=\"" + fmt_fixed(kTop, 2) +
           "\" x2=\"" + fmt_fixed(px, 2) + "\" y2=\"" + fmt_fixed(kBottom, 2) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt_fixed(px, 2) + "\" y=\"" + fmt_fixed(kBottom + 14.0, 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
           fmt_label(fx) + "</text>\n";
  }

  // axes
  svg += "<line x1=\"" + fmt_fixed(kLeft, 2) + "\" y1=\"" + fmt_fixed(kTop, 2) +
         "\" x2=\"" + fmt_fixed(kLeft, 2) + "\" y2=\"" + fmt_fixed(kBottom, 2) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt_fixed(kLeft, 2) + "\" y1=\"" + fmt_fixed(kBottom, 2) +
         "\" x2=\"" + fmt_fixed(kRight, 2) + "\" y2=\"" + fmt_fixed(kBottom, 2) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"424\" y=\"388\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + x_label + "</text>\n";
  svg += "<text x=\"14\" y=\"200\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 14 200)\">" + y_label + "</text>\n";

  for (const auto& s : series) {
    if (s.ys.empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"";
    for (std::size_t i = 0; i < s.ys.size(); ++i) {
      if (i) svg += " ";
      svg += fmt_fixed(sx(s.x0 + static_cast<double>(i)), 2) + "," +
             fmt_fixed(sy(s.ys[i]), 2);
    }
    svg += "\"/>\n";
  }

  // legend, top-right inside the plot area
  double ly = kTop + 14.0;
  for (const auto& s : series) {
    svg += "<line x1=\"620\" y1=\"" + fmt_fixed(ly - 4.0, 2) + "\" x2=\"648\" y2=\"" +
           fmt_fixed(ly - 4.0, 2) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += "/>\n";
    svg += "<text x=\"654\" y=\"" + fmt_fixed(ly, 2) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
    ly += 16.0;
  }

  svg += "</svg>\n";
  write_text_file(path, svg);
}

}  // namespace cli
