#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>

#include "udw/quad.hpp"

namespace udw {

using Vec3 = std::array<double, 3>;

/// Normalized center-of-mass momentum probability density |phi0(p)|^2.
///
/// Only the modulus squared is stored: global phases and packet centers
/// drop out of every rate integral, so they are discarded at construction.
/// Units are inverse momentum cubed; int d^3p density(p) = 1.
struct MomentumDensity {
  /// Pointwise density at a momentum 3-vector.
  std::function<double(const Vec3&)> density;

  /// Angular mean over directions at fixed radius |p|:
  /// (1/4pi) int dOmega density(p * n). Equals density(p * n) for
  /// isotropic densities. Rate integrals reduce to
  /// 4pi int p^2 radial_mean(p) K(p) dp for any kernel K of |p|.
  std::function<double(double)> radial_mean;

  bool isotropic = true;

  /// Closed-form <p^2> when one exists; quadrature otherwise.
  std::optional<double> analytic_moment2;

  /// Radius beyond which the density is below 1e-300 of its peak.
  /// All radial quadratures truncate here. For the Gaussian-envelope
  /// constructors this is 40 momentum sigmas (exp(-800) ~ 1e-348, with
  /// margin for polynomial prefactors).
  double support_cap = 0.0;

  /// Characteristic momentum sigma (guides quadrature subdivision).
  double momentum_scale = 1.0;
};

/// Ground-state Gaussian packet of initial position width L:
/// density(p) = (L^2/2pi)^(3/2) exp(-L^2 p^2 / 2), <p^2> = 3/L^2.
/// The packet center never enters. Throws DomainError on L <= 0.
MomentumDensity gaussian_density(double L);

/// First excited trap eigenstate along each axis (linear Hermite
/// polynomial times the Gaussian): <p^2> = 9/L^2. Anisotropic as a
/// pointwise density; its angular mean is closed-form.
MomentumDensity hermite_first_excited_density(double L);

/// Coherent superposition of two Gaussian packets of width L centered
/// at +-x0 (separation axis along z) with relative amplitude alpha,
/// including the interference cross term. Throws DomainError when the
/// normalization constant 1 + |alpha|^2 + 2 Re(alpha) exp(-2 x0^2/L^2)
/// is degenerate (alpha ~ -1 with overlapping packets): such states are
/// rejected rather than regularized.
MomentumDensity coherent_pair_density(double L, double x0, std::complex<double> alpha);

/// Even 50/50 mixture of the two packets. The modulus is translation
/// invariant, so this equals gaussian_density(L) exactly for every x0.
MomentumDensity mixed_pair_density(double L, double x0);

/// Interference factor f(x0, alpha) of the coherent pair:
///   f = (4 x0^2 / 3 L^2) * 2 Re(alpha) e^(-2 x0^2/L^2)
///       / (1 + |alpha|^2 + 2 Re(alpha) e^(-2 x0^2/L^2))
/// such that <p^2> = (3/L^2) (1 - f). Same domain checks as the pair.
double interference_factor(double L, double x0, std::complex<double> alpha);

/// <p^2> by radial quadrature (isotropic fast path; anisotropic densities
/// integrate the polar angle explicitly inside radial_mean).
double second_moment(const MomentumDensity& d, const quad::QuadratureSpec& spec = {});

/// Probability mass at |p| >= p_threshold, in [0, 1].
double fraction_above(const MomentumDensity& d, double p_threshold,
                      const quad::QuadratureSpec& spec = {});

/// int d^3p density; 1 within quadrature tolerance for every constructor.
double normalization(const MomentumDensity& d, const quad::QuadratureSpec& spec = {});

}  // namespace udw
