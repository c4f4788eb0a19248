#pragma once

#include <complex>
#include <optional>
#include <string>

#include "udw/quad.hpp"
#include "udw/templates.hpp"
#include "udw/wavepackets.hpp"

namespace udw {

enum class RateMethod { closed_form, series, quadrature };

std::string to_string(RateMethod m);

struct RateDiagnostics {
  std::optional<double> threshold_fraction;  // excitation only
  std::optional<double> moment2;             // <p^2>
};

struct RateResult {
  double rate = 0.0;  // inverse time
  RateMethod method = RateMethod::closed_form;
  double estimated_error = 0.0;  // relative; closed forms report 0
  RateDiagnostics diagnostics;
};

/// Emission rate of a detector at rest with classical center of mass:
/// lambda^2 E.
RateResult classical_rate(const DetectorParams& params);

/// Full quadrature of the spontaneous-emission rate
///   R = (lambda^2 c^2 M / 2) int d^3p |phi0(p)|^2 T(p).
/// Isotropic densities use the radial reduction int d^3p -> 4pi int p^2 dp;
/// anisotropic ones integrate the polar angle inside radial_mean.
RateResult spont_rate(const MomentumDensity& d, const DetectorParams& params,
                      const quad::QuadratureSpec& spec = {});

/// Small-momentum series rate lambda^2 c^2 M A (1 + <p^2>/p0^2).
/// Uses the density's closed-form moment when present. Throws
/// DomainError on E = 0.
RateResult spont_rate_series(const MomentumDensity& d, const DetectorParams& params,
                             const quad::QuadratureSpec& spec = {});

/// Large-mass limit: (lambda^2 c^2 M / 2) T0 = lambda^2 E for every
/// normalized density.
RateResult large_mass_rate(const MomentumDensity& d, const DetectorParams& params);

/// Excitation rate R = (lambda^2 c^2 / 2) int d^3p |phi0|^2 T_excite(p).
/// The quadrature starts exactly at the threshold momentum with a
/// sqrt-edge substitution; exactly 0 when the density's support cap lies
/// below threshold. Diagnostics carry fraction_above(p_threshold).
RateResult excite_rate(const MomentumDensity& d, const DetectorParams& params,
                       const quad::QuadratureSpec& spec = {});

/// Closed-form series rate of the coherent two-packet superposition:
///   lambda^2 c^2 M A [1 + 3 (1 - f(x0, alpha)) (L0/L)^2].
RateResult coherent_pair_rate(double L, double x0, std::complex<double> alpha,
                              const DetectorParams& params);

/// (lambda^2 c^2 M / 2) int d^3p |phi0|^2 (T(p) - T(0)): the correction
/// to the leading rate, integrated directly so it is resolved at full
/// relative precision even when it is ~1e-8 of the leading term.
double spont_rate_correction(const MomentumDensity& d, const DetectorParams& params,
                             const quad::QuadratureSpec& spec = {});

}  // namespace udw
