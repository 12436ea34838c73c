#include "qscatter/run.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qscatter/cascade.hpp"
#include "qscatter/classical.hpp"
#include "qscatter/compare.hpp"
#include "qscatter/errors.hpp"
#include "qscatter/output.hpp"
#include "qscatter/quantum.hpp"
#include "qscatter/units.hpp"
#include "qscatter/version.hpp"

namespace qscatter {

namespace {

using Json = nlohmann::ordered_json;

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Quantum: return "quantum";
    case Scenario::Classical: return "classical";
    case Scenario::Compare: return "compare";
    case Scenario::Optimize: return "optimize";
    case Scenario::SweepRates: return "sweep-rates";
    case Scenario::OptimalCurve: return "optimal-curve";
  }
  return "?";
}

std::string method_name(Method m, int series_order) {
  switch (m) {
    case Method::Closed: return "closed";
    case Method::Ode: return "ode";
    case Method::Master: return "master";
    case Method::Series: return "series:" + std::to_string(series_order);
    case Method::FirstOrder: return "first-order";
  }
  return "?";
}

Method parse_method(const std::string& s, int& series_order) {
  if (s == "closed") return Method::Closed;
  if (s == "ode") return Method::Ode;
  if (s == "master") return Method::Master;
  if (s == "first-order") return Method::FirstOrder;
  if (s.rfind("series", 0) == 0) {
    if (s == "series") return Method::Series;
    if (s[6] == ':') {
      try {
        series_order = std::stoi(s.substr(7));
      } catch (...) {
        throw ValidationError("method", "series order must be an integer: " + s);
      }
      if (series_order < 1) throw ValidationError("method", "series order must be >= 1");
      return Method::Series;
    }
  }
  throw ValidationError("method",
                        "unknown method '" + s +
                            "' (expected closed|ode|master|series:N|first-order)");
}

int default_points(Scenario s) {
  switch (s) {
    case Scenario::Optimize:
    case Scenario::OptimalCurve: return 1601;
    case Scenario::SweepRates: return 801;
    default: return 2001;
  }
}

// Scenarios that consume the base rate pair; the sweeps define their rates
// from the axis/ratio flags instead (optimal-curve still fixes the probe).
bool uses_base_rates(Scenario s) {
  return s == Scenario::Quantum || s == Scenario::Classical ||
         s == Scenario::Compare || s == Scenario::Optimize;
}

// Fills every "0 means default" field so run() and the JSON echo agree.
RunConfig resolved(RunConfig cfg) {
  if (cfg.gamma2_e_mhz == 0.0) cfg.gamma2_e_mhz = cfg.gamma_e_mhz / 2.0;
  if (cfg.gamma2_p_mhz == 0.0) cfg.gamma2_p_mhz = cfg.gamma_p_mhz / 2.0;
  if (cfg.detunings_mhz.empty()) cfg.detunings_mhz = {0.0};
  if (cfg.points == 0) cfg.points = default_points(cfg.scenario);
  const double g = std::sqrt(cfg.gamma_e_mhz * cfg.gamma_p_mhz);
  if (cfg.bracket_lo_mhz == 0.0) cfg.bracket_lo_mhz = 0.05 * g;
  if (cfg.bracket_hi_mhz == 0.0) cfg.bracket_hi_mhz = 3.0 * g;
  if (cfg.tol_mhz == 0.0) cfg.tol_mhz = 1e-3 * g;
  return cfg;
}

RateSet rates_from(const RunConfig& cfg) {
  RateSet r;
  r.gamma_e = mhz_to_angular(cfg.gamma_e_mhz);
  r.gamma_p = mhz_to_angular(cfg.gamma_p_mhz);
  r.gamma2_e = mhz_to_angular(cfg.gamma2_e_mhz);
  r.gamma2_p = mhz_to_angular(cfg.gamma2_p_mhz);
  r.validate();
  return r;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  const double f = std::log(hi / lo);
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] = lo * std::exp(f * static_cast<double>(i) / (n - 1));
  return v;
}

}  // namespace

std::string RunConfig::to_json() const {
  Json j;
  j["scenario"] = scenario_name(scenario);
  j["method"] = method_name(method, series_order);
  j["gamma_e_mhz"] = gamma_e_mhz;
  j["gamma_p_mhz"] = gamma_p_mhz;
  j["gamma2_e_mhz"] = gamma2_e_mhz;
  j["gamma2_p_mhz"] = gamma2_p_mhz;
  j["preset"] = preset;
  j["detunings_mhz"] = detunings_mhz;
  j["omega_mhz"] = omega_mhz;
  j["tmax_ns"] = tmax_ns;
  j["points"] = points;
  j["scattered_only"] = scattered_only;
  j["window_factor"] = window_factor;
  j["denom_floor"] = denom_floor;
  j["bracket_lo_mhz"] = bracket_lo_mhz;
  j["bracket_hi_mhz"] = bracket_hi_mhz;
  j["tol_mhz"] = tol_mhz;
  j["grid_n"] = grid_n;
  j["gamma_e_min_mhz"] = gamma_e_min_mhz;
  j["gamma_e_max_mhz"] = gamma_e_max_mhz;
  j["gamma_p_min_mhz"] = gamma_p_min_mhz;
  j["gamma_p_max_mhz"] = gamma_p_max_mhz;
  j["ratio_min"] = ratio_min;
  j["ratio_max"] = ratio_max;
  j["ratio_points"] = ratio_points;
  j["out"] = out_path;
  j["json"] = json_path;
  j["plot"] = plot_path;
  j["dump_series"] = dump_series;
  j["seed"] = seed;
  return j.dump();
}

std::string RunConfig::config_hash() const { return fnv1a_hex(to_json()); }

void RunConfig::validate() const {
  if (uses_base_rates(scenario) && !(gamma_e_mhz > 0.0))
    throw ValidationError("gamma-e-mhz", "must be > 0 (flag missing?)");
  if ((uses_base_rates(scenario) || scenario == Scenario::OptimalCurve) &&
      !(gamma_p_mhz > 0.0))
    throw ValidationError("gamma-p-mhz", "must be > 0 (flag missing?)");
  if (!(gamma2_e_mhz >= gamma_e_mhz / 2.0))
    throw ValidationError("gamma2-e-mhz", "must be >= gamma_e/2");
  if (!(gamma2_p_mhz >= gamma_p_mhz / 2.0))
    throw ValidationError("gamma2-p-mhz", "must be >= gamma_p/2");
  if (!(omega_mhz >= 0.0)) throw ValidationError("omega-mhz", "must be >= 0");
  if (!(tmax_ns > 0.0)) throw ValidationError("tmax-ns", "must be > 0");
  if (points < 2) throw ValidationError("points", "must be >= 2");
  if (!(window_factor > 0.0)) throw ValidationError("window-factor", "must be > 0");
  if (!(denom_floor > 0.0 && denom_floor < 1.0))
    throw ValidationError("denom-floor", "must be in (0, 1)");
  if (series_order < 1) throw ValidationError("method", "series order must be >= 1");
  if (dump_series < 0) throw ValidationError("dump-series", "must be >= 0");

  const bool resonant_scenario = scenario == Scenario::Compare ||
                                 scenario == Scenario::Optimize ||
                                 scenario == Scenario::SweepRates ||
                                 scenario == Scenario::OptimalCurve;
  if (resonant_scenario)
    for (double d : detunings_mhz)
      if (d != 0.0)
        throw ValidationError("detuning-mhz",
                              "the distance metric is defined for resonant pulses only");
  if (scenario != Scenario::Quantum && detunings_mhz.size() > 1)
    throw ValidationError("detuning-mhz", "multiple detunings only apply to `quantum`");

  if (scenario == Scenario::Quantum &&
      (method == Method::Series || method == Method::FirstOrder))
    throw ValidationError("method", "quantum scenario supports closed|ode|master");
  if (scenario == Scenario::Classical &&
      (method == Method::Closed || method == Method::Master))
    throw ValidationError("method", "classical scenario supports ode|series:N|first-order");

  if (scenario == Scenario::Optimize) {
    if (!(bracket_lo_mhz > 0.0) || !(bracket_lo_mhz < bracket_hi_mhz))
      throw ValidationError("bracket-lo-mhz", "requires 0 < lo < hi");
    if (!(tol_mhz > 0.0)) throw ValidationError("tol-mhz", "must be > 0");
  }
  if (scenario == Scenario::SweepRates) {
    if (grid_n < 2) throw ValidationError("grid-n", "must be >= 2");
    if (!(gamma_e_min_mhz > 0.0 && gamma_e_min_mhz < gamma_e_max_mhz))
      throw ValidationError("gamma-e-min-mhz", "requires 0 < min < max");
    if (!(gamma_p_min_mhz > 0.0 && gamma_p_min_mhz < gamma_p_max_mhz))
      throw ValidationError("gamma-p-min-mhz", "requires 0 < min < max");
    if (!(omega_mhz > 0.0)) throw ValidationError("omega-mhz", "sweep needs a drive > 0");
  }
  if (scenario == Scenario::OptimalCurve) {
    if (!(ratio_min > 0.0 && ratio_min < ratio_max))
      throw ValidationError("ratio-min", "requires 0 < min < max");
    if (ratio_points < 2) throw ValidationError("ratio-points", "must be >= 2");
  }
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args,
                                      std::ostream& out) {
  RunConfig cfg;
  std::string method_str;

  CLI::App app{std::string(kToolName) +
               " - scattering of single-photon and classical pulses off a two-level probe"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Read flags from an INI/TOML file ([section] per verb)");
  app.require_subcommand(1);

  struct SubSpec {
    Scenario scenario;
    const char* name;
    const char* help;
  };
  const SubSpec specs[] = {
      {Scenario::Quantum, "quantum", "Field envelope of the scattered single-photon pulse"},
      {Scenario::Classical, "classical", "Field envelope of the scattered classical pulse"},
      {Scenario::Compare, "compare",
       "Quantum vs classical envelopes on one grid, with the distance metric"},
      {Scenario::Optimize, "optimize",
       "Drive amplitude minimizing the distance to the quantum pulse"},
      {Scenario::SweepRates, "sweep-rates",
       "Normalized distance map over an (emitter rate x probe rate) grid"},
      {Scenario::OptimalCurve, "optimal-curve",
       "Optimized drive and minimal distance per rate ratio"},
  };

  std::vector<CLI::App*> subs;
  for (const SubSpec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--gamma-e-mhz", cfg.gamma_e_mhz, "Emitter decay rate / 2pi (MHz)");
    sub->add_option("--gamma-p-mhz", cfg.gamma_p_mhz, "Probe decay rate / 2pi (MHz)");
    sub->add_option("--gamma2-e-mhz", cfg.gamma2_e_mhz,
                    "Emitter coherence decay / 2pi (MHz); default gamma_e/2");
    sub->add_option("--gamma2-p-mhz", cfg.gamma2_p_mhz,
                    "Probe coherence decay / 2pi (MHz); default gamma_p/2");
    sub->add_option("--preset", cfg.preset, "Named rate preset: device (1.86, 1.85 MHz)");
    sub->add_option("--detuning-mhz", cfg.detunings_mhz,
                    "Detuning / 2pi (MHz); repeat or comma-separate for a sweep")
        ->delimiter(',');
    sub->add_option("--omega-mhz", cfg.omega_mhz, "Drive amplitude / 2pi (MHz)");
    sub->add_option("--tmax-ns", cfg.tmax_ns, "Envelope duration (ns)");
    sub->add_option("--points", cfg.points, "Samples per envelope/window");
    sub->add_option("--method", method_str, "closed|ode|master|series:N|first-order");
    sub->add_flag("--scattered-only", cfg.scattered_only,
                  "Omit the emitter's direct field from quantum envelopes");
    sub->add_option("--window-factor", cfg.window_factor,
                    "Metric window T = window_factor / min(gamma_e, gamma_p)");
    sub->add_option("--denom-floor", cfg.denom_floor,
                    "Metric denominator clamp, fraction of peak |V_cl + V_q|");
    sub->add_option("--out", cfg.out_path, "CSV output path");
    sub->add_option("--json", cfg.json_path, "JSON summary path");
    sub->add_option("--plot", cfg.plot_path, "SVG plot path");
    sub->add_option("--dump-series", cfg.dump_series,
                    "Print per-order series term lists up to this order");
    sub->add_option("--seed", cfg.seed, "Reserved; all computations are deterministic");
    subs.push_back(sub);
  }

  CLI::App* optimize = subs[3];
  optimize->add_option("--bracket-lo-mhz", cfg.bracket_lo_mhz,
                       "Search bracket start / 2pi (MHz); default 0.05 sqrt(ge gp)");
  optimize->add_option("--bracket-hi-mhz", cfg.bracket_hi_mhz,
                       "Search bracket end / 2pi (MHz); default 3 sqrt(ge gp)");
  optimize->add_option("--tol-mhz", cfg.tol_mhz,
                       "Bracket width to stop at (MHz); default 1e-3 sqrt(ge gp)");

  CLI::App* sweep = subs[4];
  sweep->add_option("--grid-n", cfg.grid_n, "Grid points per rate axis");
  sweep->add_option("--gamma-e-min-mhz", cfg.gamma_e_min_mhz, "Emitter axis start (MHz)");
  sweep->add_option("--gamma-e-max-mhz", cfg.gamma_e_max_mhz, "Emitter axis end (MHz)");
  sweep->add_option("--gamma-p-min-mhz", cfg.gamma_p_min_mhz, "Probe axis start (MHz)");
  sweep->add_option("--gamma-p-max-mhz", cfg.gamma_p_max_mhz, "Probe axis end (MHz)");

  CLI::App* curve = subs[5];
  curve->add_option("--ratio-min", cfg.ratio_min, "Smallest gamma_e/gamma_p ratio");
  curve->add_option("--ratio-max", cfg.ratio_max, "Largest gamma_e/gamma_p ratio");
  curve->add_option("--ratio-points", cfg.ratio_points, "Ratios sampled (log-spaced)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) cfg.scenario = specs[i].scenario;

  if (!cfg.preset.empty()) {
    if (cfg.preset != "device")
      throw ValidationError("preset", "unknown preset '" + cfg.preset + "'");
    if (cfg.gamma_e_mhz == 0.0) cfg.gamma_e_mhz = 1.86;
    if (cfg.gamma_p_mhz == 0.0) cfg.gamma_p_mhz = 1.85;
  }

  if (method_str.empty())
    cfg.method = cfg.scenario == Scenario::Classical ? Method::Ode : Method::Closed;
  else
    cfg.method = parse_method(method_str, cfg.series_order);

  cfg = resolved(cfg);
  cfg.validate();
  return cfg;
}

namespace {

ComplexEnvelope quantum_by_method(const RunConfig& cfg, const RateSet& rates, double delta,
                                  const TimeGrid& grid) {
  const DriveSpec drive{0.0, delta, Complex(1.0, 0.0)};
  switch (cfg.method) {
    case Method::Closed:
      return quantum_closed_form(rates, drive, grid, cfg.scattered_only);
    case Method::Ode: {
      AmplitudeTrajectory traj = solve_amplitudes(rates, delta, grid);
      return vq_from_amplitudes(traj, rates, delta, drive.scale, cfg.scattered_only);
    }
    case Method::Master: {
      CascadeLiouvillian liouv = build_cascade(rates, 0.0, -delta);
      DensityTrajectory traj = evolve_rho(liouv, initial_density(), grid);
      return vq_from_master(traj, rates, drive.scale, cfg.scattered_only);
    }
    default:
      throw ValidationError("method", "quantum scenario supports closed|ode|master");
  }
}

ComplexEnvelope classical_by_method(const RunConfig& cfg, const RateSet& rates,
                                    const TimeGrid& grid) {
  DriveSpec drive{mhz_to_angular(cfg.omega_mhz), mhz_to_angular(cfg.detunings_mhz.front()),
                  Complex(1.0, 0.0)};
  switch (cfg.method) {
    case Method::Ode: return evolve_bloch(rates, drive, grid).envelope;
    case Method::Series: return series_sum(cfg.series_order, rates, drive, grid);
    case Method::FirstOrder: return first_order_field(rates, drive, grid);
    default:
      throw ValidationError("method", "classical scenario supports ode|series:N|first-order");
  }
}

std::vector<PlotSeries> envelope_plot_series(const TimeGrid& grid,
                                             const std::vector<ComplexEnvelope>& envelopes,
                                             const std::vector<std::string>& labels) {
  std::vector<PlotSeries> out;
  const std::vector<double> t = grid.times();
  std::vector<double> t_ns(t.size());
  for (size_t i = 0; i < t.size(); ++i) t_ns[i] = us_to_ns(t[i]);
  for (size_t k = 0; k < envelopes.size(); ++k) {
    auto [re, im] = quadratures(envelopes[k]);
    out.push_back(PlotSeries{"Re " + labels[k], t_ns, std::move(re)});
    double im_max = 0.0, re_max = 0.0;
    for (size_t i = 0; i < im.size(); ++i) {
      im_max = std::max(im_max, std::abs(im[i]));
      re_max = std::max(re_max, std::abs(out.back().ys[i]));
    }
    if (im_max > 1e-12 * std::max(re_max, 1e-300))
      out.push_back(PlotSeries{"Im " + labels[k], t_ns, std::move(im)});
  }
  return out;
}

std::string series_dump_text(const RunConfig& cfg, const RateSet& rates) {
  std::string text = "# per-order drive-expansion corrections (rates in rad/us)\n";
  text += "# gamma_p = " + format_num(rates.gamma_p) +
          ", gamma2_e = " + format_num(rates.gamma2_e) + "\n";
  for (int n = 1; n <= cfg.dump_series; ++n) {
    SeriesCorrection c = series_correction(n, rates);
    text += "order " + std::to_string(n) + " sigma_y:\n" + c.sigma_y.to_string();
    text += "order " + std::to_string(n) + " sigma_z:\n" + c.sigma_z.to_string();
  }
  return text;
}

}  // namespace

RunArtifacts run(const RunConfig& config) {
  const RunConfig cfg = resolved(config);
  cfg.validate();
  const RateSet rates = uses_base_rates(cfg.scenario) ? rates_from(cfg) : RateSet{};
  const OutputMeta meta{cfg.config_hash()};
  const TimeGrid grid(ns_to_us(cfg.tmax_ns), cfg.points);

  RunArtifacts artifacts;
  Json summary;
  summary["tool"] = kToolName;
  summary["version"] = kVersion;
  summary["config_hash"] = meta.config_hash;
  summary["config"] = Json::parse(cfg.to_json());
  Json result;

  std::vector<ComplexEnvelope> envelopes;
  std::vector<std::string> labels;

  auto write_envelope_outputs = [&]() {
    if (!cfg.out_path.empty()) {
      write_envelope_csv(cfg.out_path, grid, envelopes, labels, meta);
      artifacts.files_written.push_back(cfg.out_path);
    }
    if (!cfg.plot_path.empty()) {
      write_line_chart_svg(cfg.plot_path, "t (ns)", "field (arb. units)",
                           envelope_plot_series(grid, envelopes, labels), false, meta);
      artifacts.files_written.push_back(cfg.plot_path);
    }
    Json sup = Json::array();
    for (const ComplexEnvelope& e : envelopes) sup.push_back(envelope_sup(e));
    result["envelopes"] = labels;
    result["sup_abs"] = sup;
  };

  switch (cfg.scenario) {
    case Scenario::Quantum: {
      for (double d_mhz : cfg.detunings_mhz) {
        envelopes.push_back(quantum_by_method(cfg, rates, mhz_to_angular(d_mhz), grid));
        labels.push_back("delta_mhz=" + format_num(d_mhz));
      }
      write_envelope_outputs();
      break;
    }
    case Scenario::Classical: {
      envelopes.push_back(classical_by_method(cfg, rates, grid));
      labels.push_back(method_name(cfg.method, cfg.series_order));
      write_envelope_outputs();
      if (cfg.dump_series > 0) artifacts.series_dump = series_dump_text(cfg, rates);
      break;
    }
    case Scenario::Compare: {
      const DriveSpec drive{mhz_to_angular(cfg.omega_mhz), 0.0, Complex(1.0, 0.0)};
      envelopes.push_back(
          quantum_closed_form(rates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, grid, true));
      labels.push_back("quantum");
      envelopes.push_back(evolve_bloch(rates, drive, grid).envelope);
      labels.push_back("classical-ode");
      envelopes.push_back(series_sum(1, rates, drive, grid));
      labels.push_back("series-1");
      envelopes.push_back(series_sum(3, rates, drive, grid));
      labels.push_back("series-3");
      write_envelope_outputs();
      if (cfg.dump_series > 0) artifacts.series_dump = series_dump_text(cfg, rates);

      // The metric compares total detected envelopes (incoming + scattered),
      // matching the optimize/sweep scenarios; the CSV columns above stay
      // scattered-only for display.
      const EpsilonConfig ecfg{cfg.window_factor, cfg.denom_floor};
      const TimeGrid wgrid(ecfg.window(rates), cfg.points);
      const ComplexEnvelope q =
          quantum_closed_form(rates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, wgrid, false);
      ComplexEnvelope c = evolve_bloch(rates, drive, wgrid).envelope;
      const ComplexEnvelope in = incoming_field(rates, drive, wgrid);
      for (size_t i = 0; i < c.samples.size(); ++i) c.samples[i] += in.samples[i];
      const EpsilonResult eps = epsilon(c, q, rates, ecfg);
      result["epsilon"] = eps.value;
      result["clamped_fraction"] = eps.clamped_fraction;
      result["ill_conditioned"] = eps.ill_conditioned;
      result["window_factor"] = cfg.window_factor;
      result["denom_floor"] = cfg.denom_floor;
      break;
    }
    case Scenario::Optimize: {
      const EpsilonConfig ecfg{cfg.window_factor, cfg.denom_floor};
      const ComparisonResult res = optimize_omega(
          rates, ecfg,
          {mhz_to_angular(cfg.bracket_lo_mhz), mhz_to_angular(cfg.bracket_hi_mhz)},
          mhz_to_angular(cfg.tol_mhz), cfg.points);
      result["omega_star_mhz"] = angular_to_mhz(res.omega_star);
      result["epsilon"] = res.epsilon;
      result["epsilon_normalized"] = res.epsilon_normalized;
      result["window_factor"] = cfg.window_factor;
      result["denom_floor"] = cfg.denom_floor;
      result["converged"] = res.converged;
      if (!cfg.out_path.empty() || !cfg.plot_path.empty()) {
        envelopes.push_back(res.quantum_curve);
        labels.push_back("quantum");
        envelopes.push_back(res.classical_curve);
        labels.push_back("classical-optimal");
        const TimeGrid wgrid = res.quantum_curve.grid;
        if (!cfg.out_path.empty()) {
          write_envelope_csv(cfg.out_path, wgrid, envelopes, labels, meta);
          artifacts.files_written.push_back(cfg.out_path);
        }
        if (!cfg.plot_path.empty()) {
          write_line_chart_svg(cfg.plot_path, "t (ns)", "field (arb. units)",
                               envelope_plot_series(wgrid, envelopes, labels), false, meta);
          artifacts.files_written.push_back(cfg.plot_path);
        }
      }
      break;
    }
    case Scenario::SweepRates: {
      const EpsilonConfig ecfg{cfg.window_factor, cfg.denom_floor};
      std::vector<double> ge_mhz = linspace(cfg.gamma_e_min_mhz, cfg.gamma_e_max_mhz,
                                            cfg.grid_n);
      std::vector<double> gp_mhz = linspace(cfg.gamma_p_min_mhz, cfg.gamma_p_max_mhz,
                                            cfg.grid_n);
      std::vector<double> ge(ge_mhz.size()), gp(gp_mhz.size());
      for (size_t i = 0; i < ge.size(); ++i) ge[i] = mhz_to_angular(ge_mhz[i]);
      for (size_t j = 0; j < gp.size(); ++j) gp[j] = mhz_to_angular(gp_mhz[j]);

      const RateGridResult res =
          rate_grid_sweep(ge, gp, mhz_to_angular(cfg.omega_mhz), ecfg, cfg.points);
      if (!cfg.out_path.empty()) {
        write_heatmap_csv(cfg.out_path, res, meta);
        artifacts.files_written.push_back(cfg.out_path);
      }
      if (!cfg.plot_path.empty()) {
        // Overlays: equal-rates diagonal; harmonic mean of the rates = 2 Omega.
        PlotSeries diag{"gamma_e = gamma_p", {}, {}};
        for (double v : gp_mhz) {
          diag.xs.push_back(v);
          diag.ys.push_back(v);
        }
        PlotSeries harmonic{"harmonic mean = 2 omega", {}, {}};
        for (double gpv : gp_mhz)
          if (gpv > cfg.omega_mhz) {
            const double gev = cfg.omega_mhz * gpv / (gpv - cfg.omega_mhz);
            harmonic.xs.push_back(gpv);
            harmonic.ys.push_back(gev);
          }
        write_heatmap_svg(cfg.plot_path, "gamma_p / 2pi (MHz)", "gamma_e / 2pi (MHz)",
                          gp_mhz, ge_mhz, res.eps_norm, {diag, harmonic}, meta);
        artifacts.files_written.push_back(cfg.plot_path);
      }
      double best = -1.0;
      size_t bi = 0, bj = 0;
      for (size_t i = 0; i < res.eps_norm.size(); ++i)
        for (size_t j = 0; j < res.eps_norm[i].size(); ++j)
          if (res.eps_norm[i][j] > best) {
            best = res.eps_norm[i][j];
            bi = i;
            bj = j;
          }
      result["eps_max"] = res.eps_max;
      result["argmax_gamma_e_mhz"] = ge_mhz[bi];
      result["argmax_gamma_p_mhz"] = gp_mhz[bj];
      result["window_factor"] = cfg.window_factor;
      result["denom_floor"] = cfg.denom_floor;
      break;
    }
    case Scenario::OptimalCurve: {
      const EpsilonConfig ecfg{cfg.window_factor, cfg.denom_floor};
      const std::vector<double> ratios = logspace(cfg.ratio_min, cfg.ratio_max,
                                                  cfg.ratio_points);
      const double gp_fixed = mhz_to_angular(cfg.gamma_p_mhz);
      const std::vector<OptimalCurvePoint> pts =
          optimal_curve(ratios, gp_fixed, ecfg, 1e-3, cfg.points);
      if (!cfg.out_path.empty()) {
        write_optimal_curve_csv(cfg.out_path, pts, gp_fixed, meta);
        artifacts.files_written.push_back(cfg.out_path);
      }
      if (!cfg.plot_path.empty()) {
        PlotSeries omega{"omega_star / gamma_p", {}, {}};
        PlotSeries eps{"eps_min (normalized)", {}, {}};
        PlotSeries href{"2r/(r+1)", {}, {}};
        for (const OptimalCurvePoint& p : pts) {
          if (p.converged) {
            omega.xs.push_back(p.ratio);
            omega.ys.push_back(p.omega_star / gp_fixed);
            eps.xs.push_back(p.ratio);
            eps.ys.push_back(p.eps_min_normalized);
          }
          href.xs.push_back(p.ratio);
          href.ys.push_back(harmonic_mean_ratio(p.ratio));
        }
        write_line_chart_svg(cfg.plot_path, "gamma_e / gamma_p", "value",
                             {omega, eps, href}, true, meta);
        artifacts.files_written.push_back(cfg.plot_path);
      }
      int n_conv = 0;
      double peak_ratio = 0.0, peak_eps = -1.0;
      for (const OptimalCurvePoint& p : pts)
        if (p.converged) {
          ++n_conv;
          if (p.eps_min > peak_eps) {
            peak_eps = p.eps_min;
            peak_ratio = p.ratio;
          }
        }
      result["converged_points"] = n_conv;
      result["total_points"] = static_cast<int>(pts.size());
      result["peak_ratio"] = peak_ratio;
      result["eps_min_max"] = peak_eps;
      result["window_factor"] = cfg.window_factor;
      result["denom_floor"] = cfg.denom_floor;
      break;
    }
  }

  summary["result"] = result;
  artifacts.summary_json = summary.dump(2) + "\n";
  if (!cfg.json_path.empty()) {
    atomic_write_text(cfg.json_path, artifacts.summary_json);
    artifacts.files_written.push_back(cfg.json_path);
  }
  return artifacts;
}

}  // namespace qscatter
