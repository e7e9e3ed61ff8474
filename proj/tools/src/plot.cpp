// Self-contained SVG growth plots on log-log axes.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "incidence/extremal.hpp"
#include "incidence/levels.hpp"
#include "util.hpp"

namespace cli {

using namespace incidence;

namespace {

struct Series {
  std::string label;
  std::string color;
  bool line = false;
  std::vector<std::pair<double, double>> xy;
};

constexpr double kWidth = 640, kHeight = 480, kMargin = 64;

std::string svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                const std::vector<Series>& series, const std::string& config) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const Series& s : series) {
    for (auto [x, y] : s.xy) {
      if (x <= 0 || y <= 0) continue;
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin), xmax = std::max(xmin + 1, std::ceil(xmax));
  ymin = std::floor(ymin), ymax = std::max(ymin + 1, std::ceil(ymax));
  const double pw = kWidth - 2 * kMargin, ph = kHeight - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (std::log10(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kHeight - kMargin - (std::log10(y) - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<!-- " << config << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = xmin; e <= xmax; e += 1) {
    const double x = kMargin + (e - xmin) / (xmax - xmin) * pw;
    os << "<line x1=\"" << x << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << x << "\" y2=\"" << kMargin
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << kHeight - kMargin + 18 << "\" text-anchor=\"middle\" font-size=\"11\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  for (double e = ymin; e <= ymax; e += 1) {
    const double y = kHeight - kMargin - (e - ymin) / (ymax - ymin) * ph;
    os << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
     << kHeight / 2 << ")\">" << ylabel << "</text>\n";

  double legend_y = kMargin + 16;
  for (const Series& s : series) {
    std::vector<std::pair<double, double>> pts;
    for (auto p : s.xy) {
      if (p.first > 0 && p.second > 0) pts.push_back(p);
    }
    if (s.line) {
      std::sort(pts.begin(), pts.end());
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (auto [x, y] : pts) os << px(x) << ',' << py(y) << ' ';
      os << "\"/>\n";
    } else {
      for (auto [x, y] : pts) {
        os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    }
    os << "<text x=\"" << kMargin + 10 << "\" y=\"" << legend_y << "\" font-size=\"12\" fill=\"" << s.color << "\">"
       << s.label << "</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
  return os.str();
}

double cell(const CsvTable& t, std::size_t row, const std::string& name) {
  return std::stod(t.rows[row][t.column(name)]);
}

bool has_column(const CsvTable& t, const std::string& name) {
  return std::find(t.header.begin(), t.header.end(), name) != t.header.end();
}

}  // namespace

int run_plot(const PlotOptions& o, const Common& c) {
  const CsvTable t = read_csv(o.csv);
  const Config cfg{{"command", "plot"}, {"csv", o.csv}, {"family", o.family}, {"d", std::to_string(o.d)}};
  Series measured{"measured", "#1f77b4", false, {}};
  Series reference{"", "#d62728", true, {}};
  std::string xlabel, ylabel;

  if (has_column(t, "incidences")) {
    // Report tables: incidences against n with the bound scaled to the data.
    BoundFormula f;
    f.family = parse_bound_family(o.family);
    f.d = o.d;
    f.delta = o.delta;
    if (f.family == BoundFamily::union_complexity) {
      f.f0 = [](double r) { return union_complexity(UnionFamily::pseudo_disks, r); };
    }
    double fitted = 0;
    std::vector<double> base(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double n = std::max(1.0, cell(t, i, "n")), m = cell(t, i, "m"), k = cell(t, i, "k");
      base[i] = eval_bound(f, n, m, k, 1.0);
      const double inc = cell(t, i, "incidences");
      measured.xy.emplace_back(n, inc);
      if (base[i] > 0) fitted = std::max(fitted, inc / base[i]);
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i) reference.xy.emplace_back(cell(t, i, "n"), fitted * base[i]);
    std::ostringstream label;
    label << std::setprecision(4) << "reference " << o.family << " bound x " << fitted;
    reference.label = label.str();
    xlabel = "n";
    ylabel = "incidences";
  } else if (has_column(t, "observed") && has_column(t, "reference")) {
    // Census tables: observed band counts against r with k F(r).
    double fitted = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double ref = cell(t, i, "reference");
      measured.xy.emplace_back(cell(t, i, "r"), cell(t, i, "observed"));
      if (ref > 0) fitted = std::max(fitted, cell(t, i, "observed") / ref);
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      reference.xy.emplace_back(cell(t, i, "r"), std::max(fitted, 1.0) * cell(t, i, "reference"));
    }
    std::ostringstream label;
    label << std::setprecision(4) << "reference x " << std::max(fitted, 1.0);
    reference.label = label.str();
    xlabel = "r";
    ylabel = "points in the band";
  } else {
    throw InvalidInput("plot needs a report table (n, m, k, incidences) or a census table (r, observed, reference)");
  }
  const std::string title = o.title.empty() ? "growth (log-log)" : o.title;
  const std::string out = svg(title, xlabel, ylabel, {measured, reference}, config_line(cfg));
  Common dest = c;
  if (dest.output.empty()) dest.output = (output_dir(c.out_dir) / "plot.svg").string();
  write_atomically(dest.output, out);
  std::cout << dest.output << "\n";
  return kOk;
}

}  // namespace cli
