#pragma once

#include "udw/units.hpp"

namespace udw {

/// Small-momentum series constants of the spontaneous-emission template:
///   T(p) = 2A (1 + (p/p0)^2 + O((p/p0)^4)),
///   A  = 1 - (1 + 2E/Mc^2)^(-1/2)
///   B  = E/(c^4 M^3) (1 + 2E/Mc^2)^(-5/2)
///   p0 = sqrt(A/B),  L0 = 1/p0
/// For E << Mc^2, p0 ~ Mc and L0 is effectively the Compton wavelength.
struct SeriesConstants {
  double A = 0.0;   // dimensionless
  double B = 0.0;   // 1 / momentum^2
  double p0 = 0.0;  // momentum
  double L0 = 0.0;  // length, = 1/p0 in natural units
};

/// Width of the kinematically allowed emitted-momentum interval divided
/// by p, for b = 2 E M:
///   (k+ - k-)/p  with  k+- the positive roots of
///   k^2 + 2k(cM -+ p) - b = 0.
/// Evaluated in a rearranged form that is cancellation-free for all
/// p >= 0, including p << Mc and b << (Mc)^2. The hydrogen template
/// shares this kinematics with b = 2 hbar Omega M.
double emission_window_over_p(double p, double b, double cM);

/// Spontaneous-emission template
///   T(p) = 2 - (1/p) sqrt((p+Mc)^2 + 2EM) + (1/p) sqrt((p-Mc)^2 + 2EM).
/// Total on p >= 0. Below p < 1e-4 Mc the 4th-order series branch is
/// used (leading value 2A); above, the stable closed form.
double t_spont(double p, const DetectorParams& params);

/// Closed-form branch, valid for all p >= 0 (exposed for the switchover
/// agreement check).
double t_spont_closed(double p, const DetectorParams& params);

/// 4th-order series branch about p = 0: 2A + 2B p^2 + T4 p^4.
double t_spont_series4(double p, const DetectorParams& params);

/// T(p) - T(0), cancellation-free. Used where the correction to the
/// leading rate must be resolved far below the leading term itself.
double t_spont_excess(double p, const DetectorParams& params);

/// Switchover: series branch below kSmallPSwitchover * Mc.
inline constexpr double kSmallPSwitchover = 1e-4;

/// Series constants; throws DomainError on E = 0 (A = B = 0 leaves p0
/// undefined).
SeriesConstants series_constants(const DetectorParams& params);

/// Large-mass limit of the template: T0 = 2E/(Mc^2).
double t_spont_large_mass(const DetectorParams& params);

/// Excitation template with the threshold gate:
///   T(p) = (2M/p) sqrt((p - cM)^2 - 2EM)   for p >= Mc + sqrt(2EM),
///   0 otherwise (continuous at the threshold). Defined as 0 at p = 0.
double t_excite(double p, const DetectorParams& params);

struct CriticalKinematics {
  double v_crit = 0.0;       // c + sqrt(2E/M)
  double p_threshold = 0.0;  // M * v_crit = Mc + sqrt(2EM)
};

/// Critical spreading velocity and threshold momentum of the excitation
/// channel. p_threshold = M * v_crit holds exactly by construction.
CriticalKinematics critical_kinematics(const DetectorParams& params);

/// Independent verification path for t_spont: brackets the positive
/// roots of the energy-conservation quadratics
///   k^2 + 2k(cM - p) - 2EM = 0   (upper bound)
///   k^2 + 2k(cM + p) - 2EM = 0   (lower bound)
/// with a generic root finder, no algebraic simplification, and returns
/// (k_up - k_low)/p. The result must not depend on the initial bracket
/// guess; seed_scale perturbs it to let tests check that. Throws
/// RootFindError if bracketing fails.
double t_spont_oracle(double p, const DetectorParams& params, double seed_scale = 1.0);

/// Same for t_excite: solves k^2 - 2k(p - cM) + 2EM = 0 by root finder
/// and returns (2M/p)(k+ - k-)/2 when a positive-momentum interval
/// exists, else 0.
double t_excite_oracle(double p, const DetectorParams& params, double seed_scale = 1.0);

/// Threshold momentum located by bisection on the sign of the
/// discriminant (p - cM)^2 - 2EM; oracle for critical_kinematics.
double excite_threshold_from_discriminant(const DetectorParams& params);

}  // namespace udw
