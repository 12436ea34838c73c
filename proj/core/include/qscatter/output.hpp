#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qscatter/compare.hpp"
#include "qscatter/model.hpp"

namespace qscatter {

// Fixed 12-significant-digit float formatting shared by all text outputs
// (byte-identical across runs; negative zero normalized away).
std::string format_num(double v);

// FNV-1a 64-bit, hex-encoded; used to stamp outputs with the config they came from.
std::string fnv1a_hex(const std::string& text);

// Writes via a temp file in the destination directory + rename, so readers
// never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& content);

// Header stamp embedded in every output file.
struct OutputMeta {
  std::string config_hash;
};

// t_ns,re,im[,re_2,im_2,...]; one `# columns:` comment names the series.
void write_envelope_csv(const std::string& path, const TimeGrid& grid,
                        const std::vector<ComplexEnvelope>& envelopes,
                        const std::vector<std::string>& labels, const OutputMeta& meta);

// gamma_e_mhz,gamma_p_mhz,eps_norm rows over the sweep grid.
void write_heatmap_csv(const std::string& path, const RateGridResult& result,
                       const OutputMeta& meta);

// ratio,omega_star_over_gamma_p,eps_min_norm,converged rows.
void write_optimal_curve_csv(const std::string& path,
                             const std::vector<OptimalCurvePoint>& points,
                             double gamma_p_fixed, const OutputMeta& meta);

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

void write_line_chart_svg(const std::string& path, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series,
                          bool log_x, const OutputMeta& meta);

// Heatmap of values[i][j] in [0, 1] over (xs[j], ys[i]) cells, with optional
// overlay curves in data coordinates.
void write_heatmap_svg(const std::string& path, const std::string& x_label,
                       const std::string& y_label, const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<PlotSeries>& overlays, const OutputMeta& meta);

}  // namespace qscatter
