#pragma once

#include <string>

#include "udw/config.hpp"

namespace udw {

/// Unit system a parameter bundle is expressed in. Scalar-model modules
/// work in natural units (hbar = 1); the hydrogen module works in SI.
/// The system is always an explicit field, never implicit.
enum class UnitSystem { natural, si };

/// Two-level detector parameters in natural units (hbar = 1).
///
/// gap_E is the internal energy gap, mass_M the center-of-mass mass,
/// wave_speed_c the propagation speed of the field quanta (speed of
/// light in vacuum, or the sound speed in a medium), coupling_lambda
/// the linear coupling strength.
struct DetectorParams {
  double gap_E = 0.0;
  double mass_M = 1.0;
  double wave_speed_c = 1.0;
  double coupling_lambda = 1.0;
};

/// Validates and returns a detector parameter bundle.
/// Requires gap_E >= 0, mass_M > 0, wave_speed_c > 0, all fields finite.
/// Throws DomainError naming the offending field.
DetectorParams make_detector_params(double gap_E, double mass_M, double wave_speed_c,
                                    double coupling_lambda);

/// SI constants, CODATA 2018, stored to full double precision.
///
/// q_e and q_p default to 1.6e-19 C: the model charge used for the
/// harmonic hydrogen atom (chosen so electron and core carry equal and
/// opposite charge; ions may override).
struct SiConstants {
  double hbar = 1.054571817e-34;        // J s (h / 2pi)
  double planck_h = 6.62607015e-34;     // J s (exact)
  double epsilon0 = 8.8541878128e-12;   // F / m
  double light_c = 299792458.0;         // m / s (exact)
  double m_e = 9.1093837015e-31;        // kg
  double m_p = 1.67262192369e-27;       // kg
  double q_e = 1.6e-19;                 // C, model charge of the electron
  double q_p = 1.6e-19;                 // C, model charge of the core
};

/// Energy of 1 eV in joules (CODATA 2018, exact).
inline constexpr double kElectronVolt = 1.602176634e-19;

/// Default harmonic gap: hbar*Omega = 10.2 eV, the hydrogen 1s -> 2p
/// Coulomb gap the harmonic potential is tuned to. Overridable by config.
inline constexpr double kDefaultHydrogenGapEv = 10.2;

/// Harmonic hydrogen atom parameters in SI units.
struct HydrogenParams {
  SiConstants si;
  double omega = 0.0;            // rad/s, harmonic gap frequency Omega
  double total_mass_M = 0.0;     // kg, = m_e + m_p
  double reduced_mass_mu = 0.0;  // kg, = m_e m_p / M
};

/// Builds hydrogen parameters from SI constants and a harmonic frequency.
/// Requires omega > 0 and positive masses. Derived masses are computed here.
HydrogenParams make_hydrogen_params(const SiConstants& si, double omega);

/// Deterministic default bundle: CODATA 2018 constants and
/// hbar*Omega = 10.2 eV.
HydrogenParams default_hydrogen_params();

/// Converts an energy in eV to the angular frequency omega = E / hbar.
double omega_from_gap_ev(double gap_ev, const SiConstants& si);

/// Serialization to/from the flat key-value configuration format.
/// Keys: gap_E, mass_M, wave_speed_c, coupling_lambda (natural) and
/// omega_eV plus the SI constants (si), with unit_system declaring the
/// system. Round-trips are bit-exact.
Config to_config(const DetectorParams& params);
DetectorParams detector_params_from_config(const Config& cfg);
Config to_config(const HydrogenParams& params);
HydrogenParams hydrogen_params_from_config(const Config& cfg);

bool operator==(const DetectorParams& a, const DetectorParams& b);
bool operator==(const SiConstants& a, const SiConstants& b);
bool operator==(const HydrogenParams& a, const HydrogenParams& b);

}  // namespace udw
