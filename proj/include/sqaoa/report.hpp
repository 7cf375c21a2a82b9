#pragma once

#include <string>
#include <vector>

namespace sqaoa::csv {

// Minimal CSV with '#' comment lines before the header row. No quoting:
// fields in this toolkit never contain commas or newlines.
struct Table {
  std::vector<std::string> comments; // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  static Table parse(const std::string& text);
};

std::string fmt_fixed(double v, int decimals);

} // namespace sqaoa::csv

namespace sqaoa::svg {

// Grid heatmap, gamma on x (outer index), beta on y, origin bottom-left.
std::string heatmap(const std::vector<double>& gammas, const std::vector<double>& betas,
                    const std::vector<double>& values_row_major, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel);

struct Series {
  std::string label;
  std::vector<double> ys;
  std::vector<double> yerr; // optional, same length or empty
};

std::string line_plot(const std::vector<double>& xs, const std::vector<Series>& series,
                      const std::string& title, const std::string& xlabel,
                      const std::string& ylabel);

} // namespace sqaoa::svg
