#include "udw/units.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw DomainError(std::string(field) + ": must be finite");
}

}  // namespace

DetectorParams make_detector_params(double gap_E, double mass_M, double wave_speed_c,
                                    double coupling_lambda) {
  require_finite(gap_E, "gap_E");
  require_finite(mass_M, "mass_M");
  require_finite(wave_speed_c, "wave_speed_c");
  require_finite(coupling_lambda, "coupling_lambda");
  if (gap_E < 0.0) throw DomainError("gap_E: must be >= 0");
  if (mass_M <= 0.0) throw DomainError("mass_M: must be > 0");
  if (wave_speed_c <= 0.0) throw DomainError("wave_speed_c: must be > 0");
  return DetectorParams{gap_E, mass_M, wave_speed_c, coupling_lambda};
}

HydrogenParams make_hydrogen_params(const SiConstants& si, double omega) {
  require_finite(omega, "omega");
  if (omega <= 0.0) throw DomainError("omega: must be > 0");
  if (si.m_e <= 0.0) throw DomainError("m_e: must be > 0");
  if (si.m_p <= 0.0) throw DomainError("m_p: must be > 0");
  if (si.hbar <= 0.0) throw DomainError("hbar: must be > 0");
  HydrogenParams hp;
  hp.si = si;
  hp.omega = omega;
  hp.total_mass_M = si.m_e + si.m_p;
  hp.reduced_mass_mu = si.m_e * si.m_p / hp.total_mass_M;
  return hp;
}

double omega_from_gap_ev(double gap_ev, const SiConstants& si) {
  return gap_ev * kElectronVolt / si.hbar;
}

HydrogenParams default_hydrogen_params() {
  SiConstants si;
  return make_hydrogen_params(si, omega_from_gap_ev(kDefaultHydrogenGapEv, si));
}

Config to_config(const DetectorParams& p) {
  Config cfg;
  cfg.set_string("unit_system", "natural");
  cfg.set_number("gap_E", p.gap_E);
  cfg.set_number("mass_M", p.mass_M);
  cfg.set_number("wave_speed_c", p.wave_speed_c);
  cfg.set_number("coupling_lambda", p.coupling_lambda);
  return cfg;
}

DetectorParams detector_params_from_config(const Config& cfg) {
  if (cfg.get_string_or("unit_system", "natural") != "natural") {
    throw DomainError("unit_system: detector parameters require natural units");
  }
  // suffixed SI keys mixed into a natural-unit config are ambiguous
  for (const auto& [k, v] : cfg.items()) {
    if (k.ends_with("_m") || k.ends_with("_eV")) {
      throw DomainError("config: SI-suffixed key '" + k + "' in a natural-units config");
    }
  }
  return make_detector_params(cfg.get_number("gap_E"), cfg.get_number("mass_M"),
                              cfg.get_number("wave_speed_c"),
                              cfg.get_number_or("coupling_lambda", 1.0));
}

Config to_config(const HydrogenParams& p) {
  Config cfg;
  cfg.set_string("unit_system", "si");
  // omega (rad/s) is the authoritative key so round trips are bit-exact;
  // omega_eV is kept as the human-facing equivalent
  cfg.set_number("omega", p.omega);
  cfg.set_number("omega_eV", p.omega * p.si.hbar / kElectronVolt);
  cfg.set_number("si_hbar", p.si.hbar);
  cfg.set_number("si_planck_h", p.si.planck_h);
  cfg.set_number("si_epsilon0", p.si.epsilon0);
  cfg.set_number("si_light_c", p.si.light_c);
  cfg.set_number("si_m_e", p.si.m_e);
  cfg.set_number("si_m_p", p.si.m_p);
  cfg.set_number("si_q_e", p.si.q_e);
  cfg.set_number("si_q_p", p.si.q_p);
  return cfg;
}

HydrogenParams hydrogen_params_from_config(const Config& cfg) {
  if (cfg.get_string_or("unit_system", "si") != "si") {
    throw DomainError("unit_system: hydrogen parameters require si units");
  }
  for (const auto& [k, v] : cfg.items()) {
    if (k == "gap_E" || k == "mass_M" || k == "wave_speed_c") {
      throw DomainError("config: natural-unit key '" + k + "' in an SI config");
    }
  }
  SiConstants si;
  si.hbar = cfg.get_number_or("si_hbar", si.hbar);
  si.planck_h = cfg.get_number_or("si_planck_h", si.planck_h);
  si.epsilon0 = cfg.get_number_or("si_epsilon0", si.epsilon0);
  si.light_c = cfg.get_number_or("si_light_c", si.light_c);
  si.m_e = cfg.get_number_or("si_m_e", si.m_e);
  si.m_p = cfg.get_number_or("si_m_p", si.m_p);
  si.q_e = cfg.get_number_or("si_q_e", si.q_e);
  si.q_p = cfg.get_number_or("si_q_p", si.q_p);
  double omega = cfg.has("omega")
                     ? cfg.get_number("omega")
                     : omega_from_gap_ev(cfg.get_number_or("omega_eV", kDefaultHydrogenGapEv), si);
  return make_hydrogen_params(si, omega);
}

bool operator==(const DetectorParams& a, const DetectorParams& b) {
  return a.gap_E == b.gap_E && a.mass_M == b.mass_M && a.wave_speed_c == b.wave_speed_c &&
         a.coupling_lambda == b.coupling_lambda;
}

bool operator==(const SiConstants& a, const SiConstants& b) {
  return a.hbar == b.hbar && a.planck_h == b.planck_h && a.epsilon0 == b.epsilon0 &&
         a.light_c == b.light_c && a.m_e == b.m_e && a.m_p == b.m_p && a.q_e == b.q_e &&
         a.q_p == b.q_p;
}

bool operator==(const HydrogenParams& a, const HydrogenParams& b) {
  return a.si == b.si && a.omega == b.omega && a.total_mass_M == b.total_mass_M &&
         a.reduced_mass_mu == b.reduced_mass_mu;
}

}  // namespace udw
