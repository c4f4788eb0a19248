// udw-delocal: rates for two-level detectors with quantum-delocalizing
// centers of mass. JSON on stdout for single computations, CSV for grids.
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udw/config.hpp"
#include "udw/errors.hpp"
#include "udw/hydrogen.hpp"
#include "udw/rates.hpp"
#include "udw/sweep.hpp"
#include "udw/templates.hpp"
#include "udw/units.hpp"
#include "udw/version.hpp"
#include "udw/wavepackets.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string config_path;
  double rel_tol = 1e-10;
  int max_subdiv = 1 << 16;
  std::string out;
};

struct ScalarOpts {
  std::optional<double> E, M, c, lambda;
  std::optional<std::string> density;
  std::optional<double> L, x0, alpha_re, alpha_im;
};

void add_scalar_flags(CLI::App* cmd, ScalarOpts& o) {
  cmd->add_option("--E", o.E, "energy gap (natural units)");
  cmd->add_option("--M", o.M, "detector mass");
  cmd->add_option("--c", o.c, "wave propagation speed");
  cmd->add_option("--lambda", o.lambda, "coupling strength");
  cmd->add_option("--density", o.density,
                  "initial density: gaussian|hermite111|coherent_pair|mixed_pair");
  cmd->add_option("--L", o.L, "packet width");
  cmd->add_option("--x0", o.x0, "half separation of the coherent pair");
  cmd->add_option("--alpha-re", o.alpha_re, "Re(alpha) of the coherent pair");
  cmd->add_option("--alpha-im", o.alpha_im, "Im(alpha) of the coherent pair");
}

udw::Config merged_config(const CommonOpts& common, const ScalarOpts& o) {
  udw::Config cfg;
  if (!common.config_path.empty()) cfg = udw::Config::load(common.config_path);
  if (cfg.get_string_or("unit_system", "natural") != "natural") {
    throw udw::DomainError("unit_system: scalar commands require natural units");
  }
  if (o.E) cfg.set_number("gap_E", *o.E);
  if (o.M) cfg.set_number("mass_M", *o.M);
  if (o.c) cfg.set_number("wave_speed_c", *o.c);
  if (o.lambda) cfg.set_number("coupling_lambda", *o.lambda);
  if (o.density) cfg.set_string("density", *o.density);
  if (o.L) cfg.set_number("L", *o.L);
  if (o.x0) cfg.set_number("x0", *o.x0);
  if (o.alpha_re) cfg.set_number("alpha_re", *o.alpha_re);
  if (o.alpha_im) cfg.set_number("alpha_im", *o.alpha_im);
  return cfg;
}

udw::DetectorParams params_from(const udw::Config& cfg) {
  return udw::make_detector_params(
      cfg.get_number_or("gap_E", 1.0), cfg.get_number_or("mass_M", 1.0),
      cfg.get_number_or("wave_speed_c", 1.0), cfg.get_number_or("coupling_lambda", 1.0));
}

udw::MomentumDensity density_from(const udw::Config& cfg) {
  const std::string kind = cfg.get_string_or("density", "gaussian");
  const double L = cfg.get_number_or("L", 1.0);
  if (kind == "gaussian") return udw::gaussian_density(L);
  if (kind == "hermite111") return udw::hermite_first_excited_density(L);
  if (kind == "coherent_pair") {
    return udw::coherent_pair_density(
        L, cfg.get_number_or("x0", 0.0),
        {cfg.get_number_or("alpha_re", 1.0), cfg.get_number_or("alpha_im", 0.0)});
  }
  if (kind == "mixed_pair") return udw::mixed_pair_density(L, cfg.get_number_or("x0", 0.0));
  throw udw::DomainError("density: unknown '" + kind + "'");
}

udw::quad::QuadratureSpec spec_from(const CommonOpts& common) {
  udw::quad::QuadratureSpec s;
  s.rel_tol = common.rel_tol;
  s.max_subdivisions = common.max_subdiv;
  return s;
}

void write_output(const CommonOpts& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw udw::IoError("cannot open for writing: " + common.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

json rate_json(const udw::RateResult& r) {
  json diag = json::object();
  if (r.diagnostics.moment2) diag["moment2"] = *r.diagnostics.moment2;
  if (r.diagnostics.threshold_fraction) {
    diag["threshold_fraction"] = *r.diagnostics.threshold_fraction;
  }
  return json{{"rate", r.rate},
              {"method", udw::to_string(r.method)},
              {"estimated_error", r.estimated_error},
              {"diagnostics", diag}};
}

struct PGrid {
  double start = 0.0, stop = 0.0;
  int points = 0;
  udw::GridScale scale = udw::GridScale::log;
};

PGrid parse_p_grid(const std::string& s) {
  PGrid g;
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t colon = s.find(':', pos);
    parts.push_back(s.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw udw::DomainError("--p-grid: expected start:stop:points[:linear|log]");
  }
  g.start = std::strtod(parts[0].c_str(), nullptr);
  g.stop = std::strtod(parts[1].c_str(), nullptr);
  g.points = std::atoi(parts[2].c_str());
  if (parts.size() == 4) {
    if (parts[3] == "linear") {
      g.scale = udw::GridScale::linear;
    } else if (parts[3] == "log") {
      g.scale = udw::GridScale::log;
    } else {
      throw udw::DomainError("--p-grid: scale must be linear or log");
    }
  }
  return g;
}

int default_jobs() {
  if (const char* env = std::getenv("UDW_DELOCAL_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"udw-delocal: emission and excitation rates for delocalizing detectors"};
  app.set_version_flag("--version", std::string("udw-delocal v") + udw::kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  CommonOpts common;
  app.add_option("--config", common.config_path, "flat key-value config file");
  app.add_option("--rel-tol", common.rel_tol, "quadrature relative tolerance");
  app.add_option("--max-subdiv", common.max_subdiv, "quadrature subdivision cap");
  app.add_option("--out", common.out, "write output to this file instead of stdout");

  // constants
  auto* cmd_constants = app.add_subcommand("constants", "series constants and kinematics as JSON");
  ScalarOpts const_opts;
  add_scalar_flags(cmd_constants, const_opts);

  // template
  auto* cmd_template = app.add_subcommand("template", "template function on a momentum grid (CSV)");
  ScalarOpts tmpl_opts;
  std::string tmpl_kind = "spont";
  std::string tmpl_grid;
  add_scalar_flags(cmd_template, tmpl_opts);
  cmd_template->add_option("--kind", tmpl_kind, "spont|excite")->required();
  cmd_template->add_option("--p-grid", tmpl_grid, "start:stop:points[:linear|log]")->required();

  // rate
  auto* cmd_rate = app.add_subcommand("rate", "single rate as JSON");
  ScalarOpts rate_opts;
  std::string rate_kind;
  cmd_rate->add_option("kind", rate_kind, "spont|excite|classical|spont_series")->required();
  add_scalar_flags(cmd_rate, rate_opts);

  // hydrogen
  auto* cmd_hydrogen = app.add_subcommand("hydrogen", "harmonic hydrogen atom (SI units)");
  std::string hyd_kind;
  double hyd_omega_ev = udw::kDefaultHydrogenGapEv;
  double hyd_L = 5.29e-11;
  cmd_hydrogen->add_option("kind", hyd_kind, "constants|rate|calibrate")->required();
  cmd_hydrogen->add_option("--omega-eV", hyd_omega_ev, "harmonic gap hbar*Omega in eV");
  cmd_hydrogen->add_option("--L", hyd_L, "Gaussian packet width in meters");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  ScalarOpts sweep_opts;
  std::string sweep_var;
  double sweep_start = 0.0, sweep_stop = 0.0;
  int sweep_points = 0;
  std::string sweep_scale = "linear";
  std::vector<std::string> sweep_rates;
  int sweep_jobs = default_jobs();
  double sweep_omega_ev = udw::kDefaultHydrogenGapEv;
  add_scalar_flags(cmd_sweep, sweep_opts);
  cmd_sweep->add_option("--var", sweep_var, "L|M|E|c|x0|alpha_re|alpha_im|omega")->required();
  cmd_sweep->add_option("--start", sweep_start)->required();
  cmd_sweep->add_option("--stop", sweep_stop)->required();
  cmd_sweep->add_option("--points", sweep_points)->required();
  cmd_sweep->add_option("--scale", sweep_scale, "linear|log");
  cmd_sweep->add_option("--rate", sweep_rates, "rate kind, repeatable")->required();
  cmd_sweep->add_option("--jobs", sweep_jobs, "concurrent grid points (env UDW_DELOCAL_JOBS)");
  cmd_sweep->add_option("--omega-eV", sweep_omega_ev, "hydrogen gap for SI sweeps");

  // threshold
  auto* cmd_threshold = app.add_subcommand("threshold", "excitation-channel kinematics as JSON");
  ScalarOpts thr_opts;
  add_scalar_flags(cmd_threshold, thr_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*cmd_constants) {
      const udw::Config cfg = merged_config(common, const_opts);
      const udw::DetectorParams p = params_from(cfg);
      const udw::SeriesConstants sc = udw::series_constants(p);
      const udw::CriticalKinematics kin = udw::critical_kinematics(p);
      json j{{"A", sc.A},           {"B", sc.B},
             {"p0", sc.p0},         {"L0", sc.L0},
             {"v_crit", kin.v_crit}, {"p_threshold", kin.p_threshold}};
      write_output(common, j.dump(2));
    } else if (*cmd_template) {
      const udw::Config cfg = merged_config(common, tmpl_opts);
      const udw::DetectorParams p = params_from(cfg);
      if (tmpl_kind != "spont" && tmpl_kind != "excite") {
        throw udw::DomainError("--kind: must be spont or excite");
      }
      const PGrid g = parse_p_grid(tmpl_grid);
      udw::SweepGrid grid{g.start, g.stop, g.points, g.scale};
      std::string csv = "p,T\n";
      for (double pv : udw::grid_values(grid)) {
        const double t = (tmpl_kind == "spont") ? udw::t_spont(pv, p) : udw::t_excite(pv, p);
        csv += udw::format_number(pv) + "," + udw::format_number(t) + "\n";
      }
      write_output(common, csv);
    } else if (*cmd_rate) {
      const udw::Config cfg = merged_config(common, rate_opts);
      const udw::DetectorParams p = params_from(cfg);
      const udw::quad::QuadratureSpec spec = spec_from(common);
      udw::RateResult r;
      if (rate_kind == "classical") {
        r = udw::classical_rate(p);
      } else if (rate_kind == "spont") {
        r = udw::spont_rate(density_from(cfg), p, spec);
      } else if (rate_kind == "spont_series") {
        r = udw::spont_rate_series(density_from(cfg), p, spec);
      } else if (rate_kind == "excite") {
        r = udw::excite_rate(density_from(cfg), p, spec);
      } else {
        throw udw::DomainError("rate kind: unknown '" + rate_kind + "'");
      }
      write_output(common, rate_json(r).dump(2));
    } else if (*cmd_hydrogen) {
      udw::Config cfg;
      if (!common.config_path.empty()) cfg = udw::Config::load(common.config_path);
      if (cmd_hydrogen->count("--omega-eV")) cfg.set_number("omega_eV", hyd_omega_ev);
      cfg.set_string("unit_system", "si");
      const udw::HydrogenParams hp = udw::hydrogen_params_from_config(cfg);
      if (hyd_kind == "constants") {
        const udw::hydrogen::HydrogenSeries hs = udw::hydrogen::hydrogen_series_constants(hp);
        json j{{"C", hs.C},   {"D", hs.D},   {"p0", hs.p0},
               {"L0", hs.L0}, {"v0", hs.v0}, {"fit_residual", hs.fit_residual},
               {"omega", hs.omega}};
        write_output(common, j.dump(2));
      } else if (hyd_kind == "rate") {
        const double L = cmd_hydrogen->count("--L") ? hyd_L : cfg.get_number_or("L_m", 5.29e-11);
        const udw::hydrogen::HydrogenSeries hs = udw::hydrogen::hydrogen_series_constants(hp);
        const udw::RateResult r = udw::hydrogen::hydrogen_gaussian_rate(L, hp, hs);
        const udw::hydrogen::ReferenceConstants ref = udw::hydrogen::reference_constants();
        const double incr_ref = 3.0 * (ref.L0 / L) * (ref.L0 / L);
        const double incr_own = 3.0 * (hs.L0 / L) * (hs.L0 / L);
        json j = rate_json(r);
        j["L_m"] = L;
        j["leading_term"] = r.rate / (1.0 + incr_own);
        // headline increase uses the published reference L0 = h/p0_ref;
        // the template-derived scale is reported alongside
        j["relative_increase"] = incr_ref;
        j["relative_increase_template"] = incr_own;
        j["L0_reference_m"] = ref.L0;
        j["L0_template_m"] = hs.L0;
        j["velocity_spread"] = udw::hydrogen::uncertainty_velocity(L, hp);
        write_output(common, j.dump(2));
      } else if (hyd_kind == "calibrate") {
        const udw::hydrogen::CalibrationReport rep = udw::hydrogen::calibrate(hp);
        write_output(common, udw::hydrogen::to_json_string(rep, 2));
      } else {
        throw udw::DomainError("hydrogen kind: unknown '" + hyd_kind + "'");
      }
    } else if (*cmd_sweep) {
      udw::SweepSpec spec;
      spec.variable = udw::sweep_variable_from_string(sweep_var);
      spec.grid.start = sweep_start;
      spec.grid.stop = sweep_stop;
      spec.grid.points = sweep_points;
      if (sweep_scale == "log") {
        spec.grid.scale = udw::GridScale::log;
      } else if (sweep_scale == "linear") {
        spec.grid.scale = udw::GridScale::linear;
      } else {
        throw udw::DomainError("--scale: must be linear or log");
      }
      spec.outputs = sweep_rates;
      spec.jobs = sweep_jobs;
      bool si = false;
      for (const auto& k : sweep_rates) si = si || k.rfind("hydrogen", 0) == 0;
      if (si) {
        udw::Config cfg;
        if (!common.config_path.empty()) cfg = udw::Config::load(common.config_path);
        cfg.set_string("unit_system", "si");
        if (cmd_sweep->count("--omega-eV")) cfg.set_number("omega_eV", sweep_omega_ev);
        if (sweep_opts.L) cfg.set_number("L_m", *sweep_opts.L);
        spec.fixed_params = cfg;
      } else {
        spec.fixed_params = merged_config(common, sweep_opts);
      }
      const udw::SweepResult result = udw::run_sweep(spec);
      if (common.out.empty()) {
        udw::emit_csv(result, std::cout);
      } else {
        udw::emit_csv_file(result, common.out);
      }
    } else if (*cmd_threshold) {
      const udw::Config cfg = merged_config(common, thr_opts);
      const udw::DetectorParams p = params_from(cfg);
      const udw::CriticalKinematics kin = udw::critical_kinematics(p);
      json j{{"v_crit", kin.v_crit}, {"p_threshold", kin.p_threshold}};
      if (cfg.has("density") || cfg.has("L")) {
        j["fraction_above"] = udw::fraction_above(density_from(cfg), kin.p_threshold,
                                                  spec_from(common));
      }
      write_output(common, j.dump(2));
    }
  } catch (const udw::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const udw::QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << " (best estimate " << e.best_estimate
              << ", achieved error " << e.achieved_error << ")\n";
    return 2;
  } catch (const udw::RootFindError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const udw::FitError& e) {
    std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual << ")\n";
    return 2;
  } catch (const udw::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
