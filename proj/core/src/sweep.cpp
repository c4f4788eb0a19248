#include "udw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "udw/errors.hpp"
#include "udw/hydrogen.hpp"
#include "udw/rates.hpp"
#include "udw/units.hpp"
#include "udw/version.hpp"
#include "udw/wavepackets.hpp"

namespace udw {

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "L") return SweepVariable::L;
  if (name == "M") return SweepVariable::M;
  if (name == "E") return SweepVariable::E;
  if (name == "c") return SweepVariable::c;
  if (name == "x0") return SweepVariable::x0;
  if (name == "alpha_re") return SweepVariable::alpha_re;
  if (name == "alpha_im") return SweepVariable::alpha_im;
  if (name == "omega") return SweepVariable::omega;
  throw DomainError("sweep variable: unknown '" + name + "'");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::L: return "L";
    case SweepVariable::M: return "M";
    case SweepVariable::E: return "E";
    case SweepVariable::c: return "c";
    case SweepVariable::x0: return "x0";
    case SweepVariable::alpha_re: return "alpha_re";
    case SweepVariable::alpha_im: return "alpha_im";
    case SweepVariable::omega: return "omega";
  }
  return "?";
}

std::vector<double> grid_values(const SweepGrid& grid) {
  if (grid.points < 2) throw DomainError("grid: points must be >= 2");
  if (!(grid.start < grid.stop)) throw DomainError("grid: requires start < stop");
  if (grid.scale == GridScale::log && grid.start <= 0.0) {
    throw DomainError("grid: log scale requires positive endpoints");
  }
  std::vector<double> vals(grid.points);
  const int n = grid.points;
  if (grid.scale == GridScale::linear) {
    const double step = (grid.stop - grid.start) / (n - 1);
    for (int i = 0; i < n; ++i) vals[i] = grid.start + step * i;
  } else {
    const double ratio = std::pow(grid.stop / grid.start, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) vals[i] = grid.start * std::pow(ratio, i);
  }
  vals.back() = grid.stop;  // pin the endpoint against accumulation drift
  return vals;
}

namespace {

const std::vector<std::string> kScalarKinds = {"classical", "spont", "spont_series", "excite",
                                               "large_mass"};
const std::vector<std::string> kHydrogenKinds = {"hydrogen", "hydrogen_series"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

struct ScalarPoint {
  DetectorParams params;
  MomentumDensity density;
};

ScalarPoint scalar_point(const SweepSpec& spec, double value) {
  const Config& cfg = spec.fixed_params;
  double E = cfg.get_number_or("gap_E", 1.0);
  double M = cfg.get_number_or("mass_M", 1.0);
  double c = cfg.get_number_or("wave_speed_c", 1.0);
  double lambda = cfg.get_number_or("coupling_lambda", 1.0);
  double L = cfg.get_number_or("L", 1.0);
  double x0 = cfg.get_number_or("x0", 0.0);
  double are = cfg.get_number_or("alpha_re", 1.0);
  double aim = cfg.get_number_or("alpha_im", 0.0);
  switch (spec.variable) {
    case SweepVariable::E: E = value; break;
    case SweepVariable::M: M = value; break;
    case SweepVariable::c: c = value; break;
    case SweepVariable::L: L = value; break;
    case SweepVariable::x0: x0 = value; break;
    case SweepVariable::alpha_re: are = value; break;
    case SweepVariable::alpha_im: aim = value; break;
    case SweepVariable::omega:
      throw DomainError("sweep: omega is a hydrogen (SI) variable");
  }
  ScalarPoint pt{make_detector_params(E, M, c, lambda), {}};
  const std::string density = cfg.get_string_or("density", "gaussian");
  if (density == "gaussian") {
    pt.density = gaussian_density(L);
  } else if (density == "hermite111") {
    pt.density = hermite_first_excited_density(L);
  } else if (density == "coherent_pair") {
    pt.density = coherent_pair_density(L, x0, {are, aim});
  } else if (density == "mixed_pair") {
    pt.density = mixed_pair_density(L, x0);
  } else {
    throw DomainError("density: unknown '" + density + "'");
  }
  return pt;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.outputs.empty()) throw DomainError("sweep: no rate kinds requested");
  bool any_scalar = false, any_hydrogen = false;
  for (const auto& kind : spec.outputs) {
    if (contains(kScalarKinds, kind)) {
      any_scalar = true;
    } else if (contains(kHydrogenKinds, kind)) {
      any_hydrogen = true;
    } else {
      throw DomainError("sweep: unknown rate kind '" + kind + "'");
    }
  }
  if (any_scalar && any_hydrogen) {
    throw DomainError("sweep: cannot mix natural-unit and SI rate kinds in one sweep");
  }
  if (any_hydrogen && spec.variable != SweepVariable::L && spec.variable != SweepVariable::omega) {
    throw DomainError("sweep: hydrogen sweeps support variables L and omega");
  }

  SweepResult result;
  result.header.push_back(to_string(spec.variable));
  for (const auto& kind : spec.outputs) {
    result.header.push_back(kind);
    result.header.push_back(kind + "_err");
  }
  if (any_scalar) result.header.push_back("moment2");
  if (contains(spec.outputs, "excite")) result.header.push_back("threshold_fraction");

  // hash covers the full evaluation request, not just the fixed params
  Config hashed = spec.fixed_params;
  hashed.set_string("sweep_var", to_string(spec.variable));
  hashed.set_number("sweep_start", spec.grid.start);
  hashed.set_number("sweep_stop", spec.grid.stop);
  hashed.set_number("sweep_points", spec.grid.points);
  hashed.set_string("sweep_scale", spec.grid.scale == GridScale::log ? "log" : "linear");
  std::string outputs_key;
  for (const auto& k : spec.outputs) outputs_key += k + ";";
  hashed.set_string("sweep_outputs", outputs_key);
  result.config_hash = hashed.hash();

  const std::vector<double> values = grid_values(spec.grid);
  result.rows.assign(values.size(), {});

  // precompute the hydrogen series once: it does not depend on L
  std::optional<hydrogen::HydrogenSeries> hseries;
  std::optional<HydrogenParams> hparams;
  if (any_hydrogen) {
    hparams = hydrogen_params_from_config(spec.fixed_params);
    if (spec.variable == SweepVariable::L) {
      hseries = hydrogen::hydrogen_series_constants(*hparams);
    }
  }

  auto compute_row = [&](size_t i) {
    const double value = values[i];
    std::vector<double> row;
    row.push_back(value);
    if (any_hydrogen) {
      HydrogenParams hp = *hparams;
      double L = spec.fixed_params.get_number_or("L_m", 5.29e-11);
      if (spec.variable == SweepVariable::L) L = value;
      if (spec.variable == SweepVariable::omega) {
        hp = make_hydrogen_params(hp.si, omega_from_gap_ev(value, hp.si));
      }
      const hydrogen::HydrogenSeries series =
          hseries ? *hseries : hydrogen::hydrogen_series_constants(hp);
      for (const auto& kind : spec.outputs) {
        RateResult r = (kind == "hydrogen")
                           ? hydrogen::hydrogen_rate(hydrogen::gaussian_density_si(L, hp.si), hp)
                           : hydrogen::hydrogen_gaussian_rate(L, hp, series);
        row.push_back(r.rate);
        row.push_back(r.estimated_error);
      }
      return row;
    }
    const ScalarPoint pt = scalar_point(spec, value);
    std::optional<double> moment2;
    std::optional<double> threshold_fraction;
    for (const auto& kind : spec.outputs) {
      RateResult r;
      if (kind == "classical") {
        r = classical_rate(pt.params);
      } else if (kind == "spont") {
        r = spont_rate(pt.density, pt.params);
      } else if (kind == "spont_series") {
        r = spont_rate_series(pt.density, pt.params);
      } else if (kind == "excite") {
        r = excite_rate(pt.density, pt.params);
      } else {
        r = large_mass_rate(pt.density, pt.params);
      }
      row.push_back(r.rate);
      row.push_back(r.estimated_error);
      if (r.diagnostics.moment2) moment2 = r.diagnostics.moment2;
      if (r.diagnostics.threshold_fraction) threshold_fraction = r.diagnostics.threshold_fraction;
    }
    row.push_back(moment2.value_or(second_moment(pt.density)));
    if (contains(spec.outputs, "excite")) row.push_back(threshold_fraction.value_or(0.0));
    return row;
  };

  const int jobs = std::clamp(spec.jobs, 1, static_cast<int>(values.size()));
  if (jobs == 1) {
    for (size_t i = 0; i < values.size(); ++i) result.rows[i] = compute_row(i);
  } else {
    // static round-robin assignment; rows land at their grid index, so
    // the result is identical for every thread count
    std::vector<std::exception_ptr> errors(values.size());
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (size_t i = static_cast<size_t>(w); i < values.size(); i += jobs) {
          try {
            result.rows[i] = compute_row(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return result;
}

namespace {

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, std::ostream& out) {
  char hashbuf[24];
  std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                static_cast<unsigned long long>(result.config_hash));
  out << "# udw-delocal v" << kVersion << ", config hash " << hashbuf << "\n";
  for (size_t i = 0; i < result.header.size(); ++i) {
    if (i) out << ',';
    out << result.header[i];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_csv_number(row[i]);
    }
    out << '\n';
  }
}

void emit_csv_file(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  emit_csv(result, out);
  if (!out.good()) throw IoError("write failed: " + path);
}

SweepResult parse_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: empty input");
  const std::string tag = "config hash ";
  const size_t pos = line.find(tag);
  if (line.empty() || line[0] != '#' || pos == std::string::npos) {
    throw IoError("csv: missing version/hash comment line");
  }
  result.config_hash = std::stoull(line.substr(pos + tag.size()), nullptr, 16);
  if (!std::getline(in, line)) throw IoError("csv: missing header line");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) result.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw IoError("csv: bad numeric cell '" + cell + "'");
    }
    if (row.size() != result.header.size()) {
      throw IoError("csv: row width does not match header");
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

bool operator==(const SweepResult& a, const SweepResult& b) {
  return a.config_hash == b.config_hash && a.header == b.header && a.rows == b.rows;
}

}  // namespace udw
