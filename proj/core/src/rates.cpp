#include "udw/rates.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RadialIntegral {
  double value;
  double rel_error;
};

// 4pi int p^2 radial_mean(p) K(p) dp over [lo, hi]; on failure the
// partial-result payload is rescaled so it carries rate units
RadialIntegral weighted_radial(const MomentumDensity& d,
                               const std::function<double(double)>& kernel, double lo, double hi,
                               double prefactor, const char* what,
                               const quad::QuadratureSpec& spec) {
  if (hi <= lo) return {0.0, 0.0};
  auto f = [&](double p) { return 4.0 * kPi * p * p * d.radial_mean(p) * kernel(p); };
  try {
    quad::QuadratureResult r = quad::integrate(f, lo, hi, spec);
    const double rel = (r.value != 0.0) ? r.error_estimate / std::abs(r.value) : 0.0;
    return {r.value, rel};
  } catch (const udw::QuadratureError& e) {
    throw udw::QuadratureError(std::string(what) + ": " + e.what(),
                               prefactor * e.best_estimate,
                               std::abs(prefactor) * e.achieved_error);
  }
}

double moment2_of(const MomentumDensity& d, const quad::QuadratureSpec& spec) {
  return d.analytic_moment2 ? *d.analytic_moment2 : second_moment(d, spec);
}

}  // namespace

std::string to_string(RateMethod m) {
  switch (m) {
    case RateMethod::closed_form:
      return "closed_form";
    case RateMethod::series:
      return "series";
    case RateMethod::quadrature:
      return "quadrature";
  }
  return "unknown";
}

RateResult classical_rate(const DetectorParams& params) {
  RateResult r;
  r.rate = params.coupling_lambda * params.coupling_lambda * params.gap_E;
  r.method = RateMethod::closed_form;
  r.estimated_error = 0.0;
  return r;
}

RateResult spont_rate(const MomentumDensity& d, const DetectorParams& params,
                      const quad::QuadratureSpec& spec) {
  const double lam = params.coupling_lambda;
  const double c = params.wave_speed_c;
  const double prefactor = 0.5 * lam * lam * c * c * params.mass_M;
  const RadialIntegral ri = weighted_radial(
      d, [&](double p) { return t_spont(p, params); }, 0.0, d.support_cap, prefactor,
      "spont_rate", spec);
  RateResult r;
  r.rate = prefactor * ri.value;
  r.method = RateMethod::quadrature;
  r.estimated_error = ri.rel_error;
  r.diagnostics.moment2 = moment2_of(d, spec);
  return r;
}

RateResult spont_rate_series(const MomentumDensity& d, const DetectorParams& params,
                             const quad::QuadratureSpec& spec) {
  const SeriesConstants sc = series_constants(params);  // throws on E = 0
  const bool analytic = d.analytic_moment2.has_value();
  const double m2 = moment2_of(d, spec);
  const double lam = params.coupling_lambda;
  const double c = params.wave_speed_c;
  RateResult r;
  r.rate = lam * lam * c * c * params.mass_M * sc.A * (1.0 + m2 / (sc.p0 * sc.p0));
  r.method = RateMethod::series;
  r.estimated_error = analytic ? 0.0 : spec.rel_tol;
  r.diagnostics.moment2 = m2;
  return r;
}

RateResult large_mass_rate(const MomentumDensity& d, const DetectorParams& params) {
  (void)d;  // normalized densities integrate to 1 against the constant T0
  RateResult r;
  r.rate = params.coupling_lambda * params.coupling_lambda * params.gap_E;
  r.method = RateMethod::closed_form;
  r.estimated_error = 0.0;
  return r;
}

RateResult excite_rate(const MomentumDensity& d, const DetectorParams& params,
                       const quad::QuadratureSpec& spec) {
  const CriticalKinematics kin = critical_kinematics(params);
  RateResult r;
  r.method = RateMethod::quadrature;
  if (d.support_cap <= kin.p_threshold) {
    // the density carries no weight above threshold: exactly zero
    r.rate = 0.0;
    r.estimated_error = 0.0;
    r.diagnostics.threshold_fraction = 0.0;
    return r;
  }
  const double lam = params.coupling_lambda;
  const double c = params.wave_speed_c;
  const double prefactor = 0.5 * lam * lam * c * c;
  // sqrt-edge substitution at the threshold tames T ~ sqrt(p - p_th)
  quad::QuadratureSpec s = spec;
  s.transform = quad::Transform::sqrt_edge;
  auto f = [&](double p) {
    return 4.0 * kPi * p * p * d.radial_mean(p) * t_excite(p, params);
  };
  quad::QuadratureResult q;
  try {
    q = quad::integrate(f, kin.p_threshold, d.support_cap, s);
  } catch (const udw::QuadratureError& e) {
    throw udw::QuadratureError(std::string("excite_rate: ") + e.what(),
                               prefactor * e.best_estimate, prefactor * e.achieved_error);
  }
  r.rate = prefactor * q.value;
  r.estimated_error = (q.value != 0.0) ? q.error_estimate / std::abs(q.value) : 0.0;
  r.diagnostics.threshold_fraction = fraction_above(d, kin.p_threshold, spec);
  return r;
}

RateResult coherent_pair_rate(double L, double x0, std::complex<double> alpha,
                              const DetectorParams& params) {
  const SeriesConstants sc = series_constants(params);  // throws on E = 0
  const double f = interference_factor(L, x0, alpha);
  const double lam = params.coupling_lambda;
  const double c = params.wave_speed_c;
  const double ratio = sc.L0 / L;
  RateResult r;
  r.rate = lam * lam * c * c * params.mass_M * sc.A * (1.0 + 3.0 * (1.0 - f) * ratio * ratio);
  r.method = RateMethod::series;
  r.estimated_error = 0.0;
  r.diagnostics.moment2 = (3.0 / (L * L)) * (1.0 - f);
  return r;
}

double spont_rate_correction(const MomentumDensity& d, const DetectorParams& params,
                             const quad::QuadratureSpec& spec) {
  const double lam = params.coupling_lambda;
  const double c = params.wave_speed_c;
  const double prefactor = 0.5 * lam * lam * c * c * params.mass_M;
  const RadialIntegral ri = weighted_radial(
      d, [&](double p) { return t_spont_excess(p, params); }, 0.0, d.support_cap, prefactor,
      "spont_rate_correction", spec);
  return prefactor * ri.value;
}

}  // namespace udw
