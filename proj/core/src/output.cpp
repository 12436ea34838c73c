#include "qscatter/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qscatter/errors.hpp"
#include "qscatter/units.hpp"
#include "qscatter/version.hpp"

namespace qscatter {

std::string format_num(double v) {
  if (v == 0.0) v = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + target.parent_path().string());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path);
}

namespace {

std::string stamp_lines(const OutputMeta& meta) {
  std::string s = "# ";
  s += kToolName;
  s += " ";
  s += kVersion;
  s += "\n# config-hash: ";
  s += meta.config_hash;
  s += "\n";
  return s;
}

std::string fmt6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Ticks {
  std::vector<double> values;
};

Ticks nice_ticks(double lo, double hi) {
  Ticks t;
  const double range = hi - lo;
  if (!(range > 0.0)) {
    t.values = {lo};
    return t;
  }
  double step = std::pow(10.0, std::floor(std::log10(range / 5.0)));
  const double scaled = range / (5.0 * step);
  if (scaled > 5.0)
    step *= 10.0;
  else if (scaled > 2.0)
    step *= 5.0;
  else if (scaled > 1.0)
    step *= 2.0;
  const double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 1e-9 * range; v += step) t.values.push_back(v);
  return t;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

struct Frame {
  double x0 = 70, y0 = 20, w = 780, h = 460;  // plot box in a 900x560 canvas
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void open_svg(std::string& svg, const OutputMeta& meta) {
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"560\" "
         "viewBox=\"0 0 900 560\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<!-- ";
  svg += kToolName;
  svg += " ";
  svg += kVersion;
  svg += " config-hash: ";
  svg += meta.config_hash;
  svg += " -->\n";
  svg += "<rect width=\"900\" height=\"560\" fill=\"white\"/>\n";
}

void draw_axes(std::string& svg, const Frame& f, const std::string& x_label,
               const std::string& y_label, bool log_x) {
  svg += "<rect x=\"" + fmt6(f.x0) + "\" y=\"" + fmt6(f.y0) + "\" width=\"" + fmt6(f.w) +
         "\" height=\"" + fmt6(f.h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const Ticks xt = nice_ticks(f.xmin, f.xmax);
  for (double v : xt.values) {
    const double x = f.px(v);
    svg += "<line x1=\"" + fmt6(x) + "\" y1=\"" + fmt6(f.y0 + f.h) + "\" x2=\"" + fmt6(x) +
           "\" y2=\"" + fmt6(f.y0 + f.h + 5) + "\" stroke=\"black\"/>\n";
    const double shown = log_x ? std::pow(10.0, v) : v;
    svg += "<text x=\"" + fmt6(x) + "\" y=\"" + fmt6(f.y0 + f.h + 20) +
           "\" text-anchor=\"middle\">" + fmt6(shown) + "</text>\n";
  }
  const Ticks yt = nice_ticks(f.ymin, f.ymax);
  for (double v : yt.values) {
    const double y = f.py(v);
    svg += "<line x1=\"" + fmt6(f.x0 - 5) + "\" y1=\"" + fmt6(y) + "\" x2=\"" + fmt6(f.x0) +
           "\" y2=\"" + fmt6(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt6(f.x0 - 8) + "\" y=\"" + fmt6(y + 4) +
           "\" text-anchor=\"end\">" + fmt6(v) + "</text>\n";
  }
  svg += "<text x=\"" + fmt6(f.x0 + f.w / 2) + "\" y=\"550\" text-anchor=\"middle\">" +
         x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt6(f.y0 + f.h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + fmt6(f.y0 + f.h / 2) +
         ")\">" + y_label + "</text>\n";
}

std::string polyline(const Frame& f, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& color,
                     const std::string& dash) {
  std::string p = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
  if (!dash.empty()) p += " stroke-dasharray=\"" + dash + "\"";
  p += " points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) p += " ";
    p += fmt6(f.px(xs[i])) + "," + fmt6(f.py(ys[i]));
  }
  p += "\"/>\n";
  return p;
}

void viridis(double v, double rgb[3]) {
  static const double stops[][3] = {
      {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
      {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
      {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
      {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};
  constexpr int n = 11;
  v = std::min(1.0, std::max(0.0, v));
  const double pos = v * (n - 1);
  const int i = std::min(n - 2, static_cast<int>(pos));
  const double f = pos - i;
  for (int c = 0; c < 3; ++c) rgb[c] = stops[i][c] * (1.0 - f) + stops[i + 1][c] * f;
}

std::string rgb_hex(const double rgb[3]) {
  char buf[10];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround(rgb[0] * 255.0)),
                static_cast<int>(std::lround(rgb[1] * 255.0)),
                static_cast<int>(std::lround(rgb[2] * 255.0)));
  return buf;
}

}  // namespace

void write_envelope_csv(const std::string& path, const TimeGrid& grid,
                        const std::vector<ComplexEnvelope>& envelopes,
                        const std::vector<std::string>& labels, const OutputMeta& meta) {
  if (envelopes.empty()) throw ValidationError("envelopes", "nothing to write");
  if (labels.size() != envelopes.size())
    throw ShapeError("write_envelope_csv: label count does not match envelope count");
  for (const ComplexEnvelope& e : envelopes)
    if (e.grid != grid) throw ShapeError("write_envelope_csv: envelope grid mismatch");

  std::string csv = stamp_lines(meta);
  csv += "# columns: ";
  for (size_t k = 0; k < labels.size(); ++k) {
    if (k) csv += ", ";
    csv += labels[k];
  }
  csv += "\nt_ns";
  for (size_t k = 0; k < envelopes.size(); ++k) {
    if (k == 0) {
      csv += ",re,im";
    } else {
      const std::string n = std::to_string(k + 1);
      csv += ",re_" + n + ",im_" + n;
    }
  }
  csv += "\n";
  for (int i = 0; i < grid.size(); ++i) {
    csv += format_num(us_to_ns(grid.t(i)));
    for (const ComplexEnvelope& e : envelopes) {
      const Complex v = e.samples[static_cast<size_t>(i)];
      csv += "," + format_num(v.real()) + "," + format_num(v.imag());
    }
    csv += "\n";
  }
  atomic_write_text(path, csv);
}

void write_heatmap_csv(const std::string& path, const RateGridResult& result,
                       const OutputMeta& meta) {
  std::string csv = stamp_lines(meta);
  csv += "gamma_e_mhz,gamma_p_mhz,eps_norm\n";
  for (size_t i = 0; i < result.gamma_e_values.size(); ++i)
    for (size_t j = 0; j < result.gamma_p_values.size(); ++j)
      csv += format_num(angular_to_mhz(result.gamma_e_values[i])) + "," +
             format_num(angular_to_mhz(result.gamma_p_values[j])) + "," +
             format_num(result.eps_norm[i][j]) + "\n";
  atomic_write_text(path, csv);
}

void write_optimal_curve_csv(const std::string& path,
                             const std::vector<OptimalCurvePoint>& points,
                             double gamma_p_fixed, const OutputMeta& meta) {
  std::string csv = stamp_lines(meta);
  csv += "ratio,omega_star_over_gamma_p,eps_min_norm,converged\n";
  for (const OptimalCurvePoint& p : points)
    csv += format_num(p.ratio) + "," + format_num(p.omega_star / gamma_p_fixed) + "," +
           format_num(p.eps_min_normalized) + "," + (p.converged ? "1" : "0") + "\n";
  atomic_write_text(path, csv);
}

void write_line_chart_svg(const std::string& path, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series,
                          bool log_x, const OutputMeta& meta) {
  if (series.empty()) throw ValidationError("series", "nothing to plot");

  Frame f;
  bool first = true;
  for (const PlotSeries& s : series)
    for (size_t i = 0; i < s.xs.size(); ++i) {
      const double x = log_x ? std::log10(s.xs[i]) : s.xs[i];
      const double y = s.ys[i];
      if (first) {
        f.xmin = f.xmax = x;
        f.ymin = f.ymax = y;
        first = false;
      } else {
        f.xmin = std::min(f.xmin, x);
        f.xmax = std::max(f.xmax, x);
        f.ymin = std::min(f.ymin, y);
        f.ymax = std::max(f.ymax, y);
      }
    }
  if (f.xmax == f.xmin) f.xmax = f.xmin + 1.0;
  if (f.ymax == f.ymin) f.ymax = f.ymin + 1.0;
  const double pad = 0.05 * (f.ymax - f.ymin);
  f.ymin -= pad;
  f.ymax += pad;

  std::string svg;
  open_svg(svg, meta);
  draw_axes(svg, f, x_label, y_label, log_x);
  for (size_t k = 0; k < series.size(); ++k) {
    std::vector<double> xs = series[k].xs;
    if (log_x)
      for (double& x : xs) x = std::log10(x);
    svg += polyline(f, xs, series[k].ys, kPalette[k % 8], "");
    const double ly = f.y0 + 16 + 18 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt6(f.x0 + f.w - 150) + "\" y1=\"" + fmt6(ly - 4) + "\" x2=\"" +
           fmt6(f.x0 + f.w - 130) + "\" y2=\"" + fmt6(ly - 4) + "\" stroke=\"" +
           kPalette[k % 8] + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt6(f.x0 + f.w - 124) + "\" y=\"" + fmt6(ly) + "\">" +
           series[k].label + "</text>\n";
  }
  svg += "</svg>\n";
  atomic_write_text(path, svg);
}

void write_heatmap_svg(const std::string& path, const std::string& x_label,
                       const std::string& y_label, const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<PlotSeries>& overlays, const OutputMeta& meta) {
  if (xs.empty() || ys.empty() || values.size() != ys.size())
    throw ShapeError("write_heatmap_svg: inconsistent grid");

  Frame f;
  f.xmin = xs.front();
  f.xmax = xs.back();
  f.ymin = ys.front();
  f.ymax = ys.back();

  auto edge = [](const std::vector<double>& v, size_t i) {
    if (i == 0) return v[0] - (v.size() > 1 ? (v[1] - v[0]) / 2.0 : 0.5);
    if (i >= v.size()) return v.back() + (v.back() - v[v.size() - 2]) / 2.0;
    return (v[i - 1] + v[i]) / 2.0;
  };

  std::string svg;
  open_svg(svg, meta);
  for (size_t i = 0; i < ys.size(); ++i) {
    for (size_t j = 0; j < xs.size(); ++j) {
      const double xl = std::max(f.xmin, edge(xs, j)), xr = std::min(f.xmax, edge(xs, j + 1));
      const double yl = std::max(f.ymin, edge(ys, i)), yr = std::min(f.ymax, edge(ys, i + 1));
      double rgb[3];
      viridis(values[i][j], rgb);
      svg += "<rect x=\"" + fmt6(f.px(xl)) + "\" y=\"" + fmt6(f.py(yr)) + "\" width=\"" +
             fmt6(f.px(xr) - f.px(xl)) + "\" height=\"" + fmt6(f.py(yl) - f.py(yr)) +
             "\" fill=\"" + rgb_hex(rgb) + "\"/>\n";
    }
  }
  for (size_t k = 0; k < overlays.size(); ++k) {
    std::vector<double> ox, oy;
    for (size_t i = 0; i < overlays[k].xs.size(); ++i) {
      const double x = overlays[k].xs[i], y = overlays[k].ys[i];
      if (x >= f.xmin && x <= f.xmax && y >= f.ymin && y <= f.ymax) {
        ox.push_back(x);
        oy.push_back(y);
      }
    }
    if (!ox.empty()) svg += polyline(f, ox, oy, k == 0 ? "#ffffff" : "#00c853", "6,4");
    svg += "<text x=\"" + fmt6(f.x0 + 8) + "\" y=\"" +
           fmt6(f.y0 + 16 + 18 * static_cast<double>(k)) + "\" fill=\"" +
           (k == 0 ? "#ffffff" : "#00c853") + "\">" + overlays[k].label + "</text>\n";
  }
  draw_axes(svg, f, x_label, y_label, false);
  svg += "</svg>\n";
  atomic_write_text(path, svg);
}

}  // namespace qscatter
