#include "core/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "core/errors.hpp"
#include "core/io.hpp"

namespace corrspec {

namespace {

struct PlotPoint {
  double x = 0, mean = 0, sem = 0;
};

struct Series {
  std::string label;
  std::size_t order = 0;
  std::vector<PlotPoint> points;
};

const char* kColors[6] = {"#1f77b4", "#9467bd", "#2ca02c",
                          "#d62728", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fmt_px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
            c == '-' || c == '_')
               ? c
               : '_';
  }
  return out;
}

/// Marker glyph for a series index, centered at (x, y).
std::string marker(std::size_t idx, double x, double y, const char* color) {
  char buf[256];
  switch (idx % 3) {
    case 0:
      std::snprintf(buf, sizeof(buf),
                    "<circle cx='%.2f' cy='%.2f' r='3.2' fill='%s'/>", x, y,
                    color);
      break;
    case 1:
      std::snprintf(buf, sizeof(buf),
                    "<rect x='%.2f' y='%.2f' width='6' height='6' fill='%s'/>",
                    x - 3, y - 3, color);
      break;
    default:
      std::snprintf(buf, sizeof(buf),
                    "<path d='M %.2f %.2f L %.2f %.2f L %.2f %.2f Z' fill='%s'/>",
                    x, y - 3.8, x - 3.5, y + 3.0, x + 3.5, y + 3.0, color);
      break;
  }
  return buf;
}

struct Axis {
  double lo = 0, hi = 1;  // in transformed coordinates (log10 if log scale)
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }

  void fit(double v) {
    const double t = transform(v);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }

  void pad() {
    if (hi <= lo) {
      lo -= log ? 0.3 : 0.5;
      hi += log ? 0.3 : 0.5;
      return;
    }
    const double m = (hi - lo) * 0.06;
    lo -= m;
    hi += m;
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int a = static_cast<int>(std::ceil(lo - 1e-9));
      const int b = static_cast<int>(std::floor(hi + 1e-9));
      const int span = std::max(1, b - a);
      const int step = span > 8 ? (span + 7) / 8 : 1;
      for (int e = a; e <= b; e += step) out.push_back(std::pow(10.0, e));
      if (out.empty()) out.push_back(std::pow(10.0, (lo + hi) / 2.0));
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double k : {1.0, 2.0, 5.0, 10.0}) {
      if (mag * k >= raw) {
        step = mag * k;
        break;
      }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) {
      out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
  }
};

std::string render_panel_svg(const std::string& title,
                             const std::string& x_label,
                             const std::vector<Series>& series, bool log_x,
                             bool log_y) {
  constexpr double W = 720, H = 520;
  constexpr double ML = 78, MR = 30, MT = 48, MB = 64;
  const double PW = W - ML - MR, PH = H - MT - MB;

  Axis ax{std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), log_x};
  Axis ay{std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), log_y};

  // The y floor for log scale: smallest positive quantity seen, so bands
  // that dip to zero can be clamped instead of dropped.
  double min_pos_y = std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    for (const PlotPoint& p : s.points) {
      ax.fit(p.x);
      const double hi = p.mean + 2 * p.sem;
      const double lo = p.mean - 2 * p.sem;
      if (!log_y) {
        ay.fit(hi);
        ay.fit(lo);
      } else {
        for (double v : {p.mean, hi, lo}) {
          if (v > 0) min_pos_y = std::min(min_pos_y, v);
        }
      }
    }
  }
  if (log_y) {
    if (!std::isfinite(min_pos_y)) min_pos_y = 1e-16;
    for (const Series& s : series) {
      for (const PlotPoint& p : s.points) {
        ay.fit(std::max(p.mean - 2 * p.sem, min_pos_y * 0.5));
        ay.fit(std::max(p.mean + 2 * p.sem, min_pos_y * 0.5));
      }
    }
  }
  ax.pad();
  ay.pad();

  const auto X = [&](double v) {
    return ML + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * PW;
  };
  const auto Y = [&](double v) {
    double t = v;
    if (log_y) t = std::max(v, min_pos_y * 0.5);
    return MT + PH - (ay.transform(t) - ay.lo) / (ay.hi - ay.lo) * PH;
  };

  std::string svg;
  svg += "<svg xmlns='http://www.w3.org/2000/svg' width='" + fmt(W) +
         "' height='" + fmt(H) + "' viewBox='0 0 " + fmt(W) + " " + fmt(H) +
         "'>\n";
  svg += "<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + fmt_px(W / 2) +
         "' y='26' text-anchor='middle' font-family='sans-serif' "
         "font-size='16'>" +
         title + "</text>\n";

  // Grid and ticks.
  for (double t : ax.ticks()) {
    const double px = X(t);
    if (px < ML - 0.5 || px > W - MR + 0.5) continue;
    svg += "<line x1='" + fmt_px(px) + "' y1='" + fmt_px(MT) + "' x2='" +
           fmt_px(px) + "' y2='" + fmt_px(MT + PH) +
           "' stroke='#dddddd' stroke-width='1'/>\n";
    svg += "<text x='" + fmt_px(px) + "' y='" + fmt_px(MT + PH + 20) +
           "' text-anchor='middle' font-family='sans-serif' font-size='12'>" +
           fmt(t) + "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = Y(t);
    if (py < MT - 0.5 || py > MT + PH + 0.5) continue;
    svg += "<line x1='" + fmt_px(ML) + "' y1='" + fmt_px(py) + "' x2='" +
           fmt_px(W - MR) + "' y2='" + fmt_px(py) +
           "' stroke='#dddddd' stroke-width='1'/>\n";
    svg += "<text x='" + fmt_px(ML - 8) + "' y='" + fmt_px(py + 4) +
           "' text-anchor='end' font-family='sans-serif' font-size='12'>" +
           fmt(t) + "</text>\n";
  }
  // Frame.
  svg += "<rect x='" + fmt_px(ML) + "' y='" + fmt_px(MT) + "' width='" +
         fmt_px(PW) + "' height='" + fmt_px(PH) +
         "' fill='none' stroke='#333333'/>\n";
  // Axis labels.
  svg += "<text x='" + fmt_px(ML + PW / 2) + "' y='" + fmt_px(H - 16) +
         "' text-anchor='middle' font-family='sans-serif' font-size='14'>" +
         x_label + "</text>\n";
  svg += "<text x='20' y='" + fmt_px(MT + PH / 2) +
         "' text-anchor='middle' font-family='sans-serif' font-size='14' "
         "transform='rotate(-90 20 " +
         fmt_px(MT + PH / 2) + ")'>error (2,inf)</text>\n";

  // Bands, lines, markers.
  for (const Series& s : series) {
    const char* color = kColors[s.order % 6];
    if (s.points.size() >= 2) {
      std::string band = "<path d='";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        band += (i == 0 ? "M " : "L ");
        band += fmt_px(X(s.points[i].x)) + " " +
                fmt_px(Y(s.points[i].mean + 2 * s.points[i].sem)) + " ";
      }
      for (std::size_t i = s.points.size(); i-- > 0;) {
        band += "L " + fmt_px(X(s.points[i].x)) + " " +
                fmt_px(Y(s.points[i].mean - 2 * s.points[i].sem)) + " ";
      }
      band += "Z' fill='" + std::string(color) +
              "' fill-opacity='0.15' stroke='none'/>\n";
      svg += band;
    }
    if (s.points.size() >= 2) {
      std::string line = "<path d='";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        line += (i == 0 ? "M " : "L ");
        line += fmt_px(X(s.points[i].x)) + " " + fmt_px(Y(s.points[i].mean)) +
                " ";
      }
      line += "' fill='none' stroke='" + std::string(color) +
              "' stroke-width='1.8'/>\n";
      svg += line;
    }
    for (const PlotPoint& p : s.points) {
      svg += marker(s.order, X(p.x), Y(p.mean), color) + "\n";
    }
  }

  // Legend.
  const double lx = W - MR - 170, ly0 = MT + 12;
  svg += "<rect x='" + fmt_px(lx - 10) + "' y='" + fmt_px(ly0 - 14) +
         "' width='180' height='" + fmt_px(series.size() * 20 + 10.0) +
         "' fill='white' fill-opacity='0.85' stroke='#999999'/>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ly = ly0 + static_cast<double>(i) * 20;
    svg += marker(series[i].order, lx + 6, ly, kColors[series[i].order % 6]);
    svg += "<text x='" + fmt_px(lx + 18) + "' y='" + fmt_px(ly + 4) +
           "' font-family='sans-serif' font-size='12'>" + series[i].label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::vector<std::filesystem::path> render_plots(
    const ResultTable& table, const std::filesystem::path& out_dir) {
  const PlotSpec& plot = table.config.plot;
  if (plot.x.empty()) {
    throw DomainError("render_plots: sweep has no x-axis field configured");
  }
  const std::vector<SummaryRow> summary = summarize(table);
  if (summary.empty()) throw DomainError("render_plots: empty result table");

  const std::vector<SeriesGroup> groups = group_series(table.config, summary);

  // Collect the groups into panels, converting rows to plot points.
  std::vector<std::string> panel_order;
  std::map<std::string, std::vector<Series>> panels;
  for (const SeriesGroup& g : groups) {
    if (!panels.contains(g.panel)) panel_order.push_back(g.panel);
    Series s;
    s.label = g.series;
    s.order = g.series_order;
    for (const SummaryRow& row : g.rows) {
      s.points.push_back(
          PlotPoint{summary_field(row, plot.x), row.mean, row.sem});
    }
    std::sort(s.points.begin(), s.points.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
    panels[g.panel].push_back(std::move(s));
  }

  std::vector<std::filesystem::path> written;
  for (const std::string& pk : panel_order) {
    std::vector<Series>& series = panels.at(pk);

    const std::string title =
        table.config.experiment + (pk.empty() ? "" : " (" + pk + ")");
    const std::string svg =
        render_panel_svg(title, plot.x, series, plot.log_x, plot.log_y);
    const std::string base =
        sanitize(table.config.experiment + (pk.empty() ? "" : "_" + pk)) +
        ".svg";
    const std::filesystem::path path = out_dir / base;
    atomic_write_text(path, svg);
    written.push_back(path);
  }
  return written;
}

}  // namespace corrspec
