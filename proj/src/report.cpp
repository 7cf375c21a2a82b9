#include "sqaoa/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sqaoa::csv {

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid the "-0.000000" artifact so outputs stay byte-stable.
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string Table::to_string() const {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::logic_error("CSV row width does not match header");
    for (size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

} // namespace

Table Table::parse(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t start = line.find_first_not_of("# ");
      t.comments.push_back(start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    if (!have_header) {
      t.columns = split_fields(line);
      have_header = true;
    } else {
      auto row = split_fields(line);
      if (row.size() != t.columns.size())
        throw std::invalid_argument("CSV row width does not match header");
      t.rows.push_back(std::move(row));
    }
  }
  if (!have_header) throw std::invalid_argument("CSV has no header row");
  return t;
}

} // namespace sqaoa::csv

namespace sqaoa::svg {

namespace {

std::string fmt(double v) { return csv::fmt_fixed(v, 2); }

// Two-segment color ramp: dark blue -> teal -> yellow.
std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  double r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = 20 + u * (40 - 20);
    g = 30 + u * (160 - 30);
    b = 90 + u * (150 - 90);
  } else {
    const double u = (t - 0.5) / 0.5;
    r = 40 + u * (250 - 40);
    g = 160 + u * (220 - 160);
    b = 150 + u * (40 - 150);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r), static_cast<int>(g),
                static_cast<int>(b));
  return buf;
}

} // namespace

std::string heatmap(const std::vector<double>& gammas, const std::vector<double>& betas,
                    const std::vector<double>& values_row_major, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel) {
  const int nx = static_cast<int>(gammas.size());
  const int ny = static_cast<int>(betas.size());
  const int cell = 42, margin_l = 70, margin_b = 55, margin_t = 40, margin_r = 120;
  const int w = margin_l + nx * cell + margin_r;
  const int h = margin_t + ny * cell + margin_b;

  double vmin = values_row_major.empty() ? 0.0 : values_row_major[0];
  double vmax = vmin;
  for (double v : values_row_major) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double span = (vmax > vmin) ? (vmax - vmin) : 1.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"monospace\" font-size=\"12\">\n";
  out << "<text x=\"" << margin_l << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  for (int gi = 0; gi < nx; ++gi) {
    for (int bi = 0; bi < ny; ++bi) {
      const double v = values_row_major[gi * ny + bi];
      const int x = margin_l + gi * cell;
      const int y = margin_t + (ny - 1 - bi) * cell;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
          << cell << "\" fill=\"" << ramp_color((v - vmin) / span) << "\"><title>g="
          << fmt(gammas[gi]) << " b=" << fmt(betas[bi]) << " v=" << fmt(v)
          << "</title></rect>\n";
    }
  }
  for (int gi = 0; gi < nx; ++gi)
    out << "<text x=\"" << margin_l + gi * cell + 4 << "\" y=\"" << margin_t + ny * cell + 16
        << "\" transform=\"rotate(45 " << margin_l + gi * cell + 4 << " "
        << margin_t + ny * cell + 16 << ")\">" << fmt(gammas[gi]) << "</text>\n";
  for (int bi = 0; bi < ny; ++bi)
    out << "<text x=\"" << margin_l - 46 << "\" y=\"" << margin_t + (ny - 1 - bi) * cell + 26
        << "\">" << fmt(betas[bi]) << "</text>\n";
  out << "<text x=\"" << margin_l + nx * cell / 2 << "\" y=\"" << h - 8 << "\">" << xlabel
      << "</text>\n";
  out << "<text x=\"12\" y=\"" << margin_t + ny * cell / 2 << "\">" << ylabel << "</text>\n";
  out << "<text x=\"" << margin_l + nx * cell + 10 << "\" y=\"" << margin_t + 10
      << "\">max " << fmt(vmax) << "</text>\n";
  out << "<rect x=\"" << margin_l + nx * cell + 10 << "\" y=\"" << margin_t + 20
      << "\" width=\"18\" height=\"" << ny * cell - 40 << "\" fill=\"url(#ramp)\"/>\n";
  out << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
  for (int s = 0; s <= 4; ++s)
    out << "<stop offset=\"" << 25 * s << "%\" stop-color=\"" << ramp_color(s / 4.0)
        << "\"/>";
  out << "</linearGradient></defs>\n";
  out << "<text x=\"" << margin_l + nx * cell + 10 << "\" y=\"" << margin_t + ny * cell - 6
      << "\">min " << fmt(vmin) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string line_plot(const std::vector<double>& xs, const std::vector<Series>& series,
                      const std::string& title, const std::string& xlabel,
                      const std::string& ylabel) {
  const int w = 560, h = 400, ml = 70, mr = 150, mt = 40, mb = 55;
  const int pw = w - ml - mr, ph = h - mt - mb;

  double xmin = xs.front(), xmax = xs.back();
  double ymin = 0.0, ymax = 0.0;
  for (const auto& s : series)
    for (size_t i = 0; i < s.ys.size(); ++i) {
      const double e = s.yerr.empty() ? 0.0 : s.yerr[i];
      ymax = std::max(ymax, s.ys[i] + e);
      ymin = std::min(ymin, s.ys[i] - e);
    }
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymax *= 1.05;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  const char* colors[] = {"#c03020", "#2050c0", "#108040", "#806010"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"monospace\" font-size=\"12\">\n";
  out << "<text x=\"" << ml << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << ml - 55 << "\" y=\"" << py(yv) + 4 << "\">" << fmt(yv)
        << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << ml + pw << "\" y2=\""
        << py(yv) << "\" stroke=\"#ddd\"/>\n";
  }
  for (double x : xs)
    out << "<text x=\"" << px(x) - 12 << "\" y=\"" << mt + ph + 18 << "\">" << fmt(x)
        << "</text>\n";

  int si = 0;
  for (const auto& s : series) {
    const char* col = colors[si % 4];
    out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) out << px(xs[i]) << "," << py(s.ys[i]) << " ";
    out << "\"/>\n";
    for (size_t i = 0; i < xs.size(); ++i) {
      out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(s.ys[i])
          << "\" r=\"3\" fill=\"" << col << "\"/>\n";
      if (!s.yerr.empty() && s.yerr[i] > 0.0) {
        out << "<line x1=\"" << px(xs[i]) << "\" y1=\"" << py(s.ys[i] - s.yerr[i])
            << "\" x2=\"" << px(xs[i]) << "\" y2=\"" << py(s.ys[i] + s.yerr[i])
            << "\" stroke=\"" << col << "\"/>\n";
      }
    }
    out << "<text x=\"" << ml + pw + 10 << "\" y=\"" << mt + 16 + 18 * si << "\" fill=\""
        << col << "\">" << s.label << "</text>\n";
    ++si;
  }
  out << "<text x=\"" << ml + pw / 2 - 20 << "\" y=\"" << h - 10 << "\">" << xlabel
      << "</text>\n";
  out << "<text x=\"10\" y=\"" << mt - 10 << "\">" << ylabel << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

} // namespace sqaoa::svg
