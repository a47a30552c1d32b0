#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cli {

// Shortest decimal that round-trips the exact double (std::to_chars).
std::string fmt_double(double v);

// Comma-separated, header row, "\n" endings, one fmt_double cell per value.
// Throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const double* data, std::size_t rows, std::size_t cols);

void write_text_file(const std::string& path, const std::string& contents);

struct PlotSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  double x0 = 0.0;  // x position of ys[0]; samples advance by 1
  std::vector<double> ys;
};

// Fixed 800x400 polyline chart with axes, ticks and a legend. Output is a
// pure function of the inputs, so identical data gives identical bytes.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series);

}  // namespace cli
