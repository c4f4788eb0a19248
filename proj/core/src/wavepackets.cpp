#include "udw/wavepackets.hpp"

#include <algorithm>
#include <cmath>

#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gaussian weight below 1e-300 of its peak beyond 40 sigma, with margin
// for the polynomial prefactors of the excited states.
constexpr double kSupportSigmas = 40.0;

// Degenerate coherent normalization (alpha ~ -1, x0 ~ 0) is rejected,
// not regularized.
constexpr double kDegenerateNorm = 1e-12;

double norm3(const Vec3& p) {
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

// isotropic |phi0|^2 of the ground-state packet: (L^2/2pi)^(3/2) e^(-L^2 p^2/2)
double gaussian3(double p, double L) {
  const double s = L * L / (2.0 * kPi);
  return s * std::sqrt(s) * std::exp(-0.5 * L * L * p * p);
}

void require_width(double L) {
  if (!std::isfinite(L) || L <= 0.0) throw DomainError("L: must be > 0 and finite");
}

double coherent_norm_constant(double x0, double L, std::complex<double> alpha) {
  return 1.0 + std::norm(alpha) + 2.0 * alpha.real() * std::exp(-2.0 * x0 * x0 / (L * L));
}

}  // namespace

MomentumDensity gaussian_density(double L) {
  require_width(L);
  MomentumDensity d;
  d.density = [L](const Vec3& p) { return gaussian3(norm3(p), L); };
  d.radial_mean = [L](double p) { return gaussian3(p, L); };
  d.isotropic = true;
  d.analytic_moment2 = 3.0 / (L * L);
  d.support_cap = kSupportSigmas / L;
  d.momentum_scale = 1.0 / L;
  return d;
}

MomentumDensity hermite_first_excited_density(double L) {
  require_width(L);
  const double L6 = std::pow(L, 6);
  MomentumDensity d;
  d.density = [L, L6](const Vec3& p) {
    const double hx = p[0] * p[1] * p[2];
    return gaussian3(norm3(p), L) * L6 * hx * hx;
  };
  // mean of (n1 n2 n3)^2 over the unit sphere is 1/105
  d.radial_mean = [L, L6](double p) {
    return gaussian3(p, L) * L6 * std::pow(p, 6) / 105.0;
  };
  d.isotropic = false;
  d.analytic_moment2 = 9.0 / (L * L);
  d.support_cap = kSupportSigmas / L;
  d.momentum_scale = 1.0 / L;
  return d;
}

MomentumDensity coherent_pair_density(double L, double x0, std::complex<double> alpha) {
  require_width(L);
  if (!std::isfinite(x0) || x0 < 0.0) throw DomainError("x0: must be >= 0 and finite");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("alpha: must be finite");
  }
  const double norm_const = coherent_norm_constant(x0, L, alpha);
  if (norm_const <= kDegenerateNorm * (1.0 + std::norm(alpha))) {
    throw DomainError("coherent pair: degenerate normalization (destructive overlap)");
  }
  if (x0 == 0.0) return gaussian_density(L);  // coincident packets

  const double re = alpha.real(), im = alpha.imag();
  const double asq = std::norm(alpha);
  MomentumDensity d;
  // separation axis along z; |e^(-i p x0) + alpha e^(i p x0)|^2 cross term
  d.density = [L, x0, re, im, asq, norm_const](const Vec3& p) {
    const double phase = 2.0 * p[2] * x0;
    const double bracket = 1.0 + asq + 2.0 * (re * std::cos(phase) - im * std::sin(phase));
    return gaussian3(norm3(p), L) * bracket / norm_const;
  };
  // polar angle integrated explicitly (adaptive), per the anisotropic path
  d.radial_mean = [L, x0, re, im, asq, norm_const](double p) {
    quad::QuadratureSpec mu_spec;
    mu_spec.rel_tol = 1e-12;
    mu_spec.abs_tol = 1e-16 * (1.0 + asq);
    auto bracket = [&](double mu) {
      const double phase = 2.0 * p * x0 * mu;
      return 1.0 + asq + 2.0 * (re * std::cos(phase) - im * std::sin(phase));
    };
    const double mean_bracket = 0.5 * quad::integrate(bracket, -1.0, 1.0, mu_spec).value;
    return gaussian3(p, L) * mean_bracket / norm_const;
  };
  d.isotropic = false;
  d.analytic_moment2 = (3.0 / (L * L)) * (1.0 - interference_factor(L, x0, alpha));
  d.support_cap = kSupportSigmas / L;
  d.momentum_scale = 1.0 / L;
  return d;
}

MomentumDensity mixed_pair_density(double L, double x0) {
  require_width(L);
  (void)x0;  // the mixture's modulus is translation invariant
  return gaussian_density(L);
}

double interference_factor(double L, double x0, std::complex<double> alpha) {
  require_width(L);
  if (!std::isfinite(x0) || x0 < 0.0) throw DomainError("x0: must be >= 0 and finite");
  const double norm_const = coherent_norm_constant(x0, L, alpha);
  if (norm_const <= kDegenerateNorm * (1.0 + std::norm(alpha))) {
    throw DomainError("coherent pair: degenerate normalization (destructive overlap)");
  }
  const double cross = 2.0 * alpha.real() * std::exp(-2.0 * x0 * x0 / (L * L));
  return (4.0 * x0 * x0 / (3.0 * L * L)) * cross / norm_const;
}

namespace {

double radial_integral(const MomentumDensity& d, double power, double lo, double hi,
                       const quad::QuadratureSpec& spec) {
  if (hi <= lo) return 0.0;
  auto f = [&](double p) { return 4.0 * kPi * std::pow(p, power) * d.radial_mean(p); };
  quad::QuadratureSpec s = spec;
  s.transform = quad::Transform::none;
  return quad::integrate(f, lo, hi, s).value;
}

}  // namespace

double second_moment(const MomentumDensity& d, const quad::QuadratureSpec& spec) {
  return radial_integral(d, 4.0, 0.0, d.support_cap, spec);
}

double fraction_above(const MomentumDensity& d, double p_threshold,
                      const quad::QuadratureSpec& spec) {
  if (!std::isfinite(p_threshold) || p_threshold < 0.0) {
    throw DomainError("p_threshold: must be >= 0 and finite");
  }
  if (p_threshold >= d.support_cap) return 0.0;
  const double frac = radial_integral(d, 2.0, p_threshold, d.support_cap, spec);
  return std::clamp(frac, 0.0, 1.0);
}

double normalization(const MomentumDensity& d, const quad::QuadratureSpec& spec) {
  return radial_integral(d, 2.0, 0.0, d.support_cap, spec);
}

}  // namespace udw
