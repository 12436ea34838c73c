#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qscatter {

enum class Scenario { Quantum, Classical, Compare, Optimize, SweepRates, OptimalCurve };

enum class Method { Closed, Ode, Master, Series, FirstOrder };

// Everything a run needs, in CLI-facing units (MHz / ns). Defaults of 0 for
// points/brackets/tolerances mean "per-scenario default", resolved by run()
// and echoed back in the JSON summary.
struct RunConfig {
  Scenario scenario = Scenario::Quantum;

  double gamma_e_mhz = 0.0;
  double gamma_p_mhz = 0.0;
  double gamma2_e_mhz = 0.0;  // 0 = radiative limit gamma_e/2
  double gamma2_p_mhz = 0.0;  // 0 = radiative limit gamma_p/2
  std::string preset;

  std::vector<double> detunings_mhz;  // empty = {0}; >1 allowed for `quantum`
  double omega_mhz = 0.0;
  double tmax_ns = 2000.0;
  int points = 0;

  Method method = Method::Closed;
  int series_order = 3;
  bool scattered_only = false;

  double window_factor = 10.0;
  double denom_floor = 0.09;

  // optimize
  double bracket_lo_mhz = 0.0;  // 0 = 0.05 sqrt(ge gp)
  double bracket_hi_mhz = 0.0;  // 0 = 3 sqrt(ge gp)
  double tol_mhz = 0.0;         // 0 = 1e-3 sqrt(ge gp)

  // sweep-rates
  int grid_n = 40;
  double gamma_e_min_mhz = 0.1;
  double gamma_e_max_mhz = 3.0;
  double gamma_p_min_mhz = 0.1;
  double gamma_p_max_mhz = 3.0;

  // optimal-curve
  double ratio_min = 0.05;
  double ratio_max = 20.0;
  int ratio_points = 25;

  std::string out_path;
  std::string json_path;
  std::string plot_path;
  int dump_series = 0;
  unsigned seed = 0;  // reserved; everything is deterministic

  // Canonical JSON echo of the resolved config (stable key order).
  std::string to_json() const;
  std::string config_hash() const;
  void validate() const;
};

// Parses argv into a RunConfig. Returns nullopt after printing help/version
// text to `out`. Throws UsageError on malformed flags and ValidationError on
// out-of-range values. args excludes the program name.
std::optional<RunConfig> parse_config(const std::vector<std::string>& args,
                                      std::ostream& out);

struct RunArtifacts {
  std::string summary_json;              // always set
  std::string series_dump;               // set when --dump-series requested
  std::vector<std::string> files_written;
};

// Executes one scenario: computes, writes any requested files, returns the
// JSON summary text.
RunArtifacts run(const RunConfig& config);

}  // namespace qscatter
