// Physical rates assembled from densities and templates.
#include <doctest.h>

#include <cmath>
#include <vector>

#include "udw/errors.hpp"
#include "udw/rates.hpp"

using namespace udw;

namespace {

// brute-force midpoint-rule excitation integral on a dense radial grid,
// independent of the adaptive engine and its sqrt-edge transform
double brute_excite_rate(const MomentumDensity& d, const DetectorParams& params, int n = 400000) {
  const CriticalKinematics kin = critical_kinematics(params);
  const double lo = kin.p_threshold;
  const double hi = d.support_cap;
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = lo + (i + 0.5) * h;
    sum += 4.0 * M_PI * p * p * d.radial_mean(p) * t_excite(p, params);
  }
  const double lam = params.coupling_lambda, c = params.wave_speed_c;
  return 0.5 * lam * lam * c * c * sum * h;
}

}  // namespace

TEST_CASE("classical rate is lambda^2 E") {
  CHECK(classical_rate(make_detector_params(2.0, 1.0, 1.0, 1.0)).rate == 2.0);
  CHECK(classical_rate(make_detector_params(2.0, 1.0, 1.0, 0.0)).rate == 0.0);
  CHECK(classical_rate(make_detector_params(5.0, 1.0, 1.0, 3.0)).rate == 45.0);
  CHECK(classical_rate(make_detector_params(1.0, 1.0, 1.0, 1.0)).method ==
        RateMethod::closed_form);
}

TEST_CASE("gaussian spontaneous rate follows 1 + 3 (L0/L)^2") {
  const DetectorParams p = make_detector_params(1.0, 1e6, 1.0, 0.4);
  const SeriesConstants sc = series_constants(p);
  const double leading = 0.4 * 0.4 * p.mass_M * sc.A;
  const double L = 100.0 * sc.L0;
  const RateResult full = spont_rate(gaussian_density(L), p);
  CHECK(full.method == RateMethod::quadrature);
  CHECK(full.rate / leading - 1.0 == doctest::Approx(3e-4).epsilon(1e-3));
  CHECK(*full.diagnostics.moment2 == doctest::Approx(3.0 / (L * L)).epsilon(1e-12));
  // series agrees with quadrature inside the validity domain
  const RateResult ser = spont_rate_series(gaussian_density(L), p);
  CHECK(ser.rate == doctest::Approx(full.rate).epsilon(1e-4));
}

TEST_CASE("hermite packet triples the leading correction") {
  const DetectorParams p = make_detector_params(1.0, 1e6, 1.0, 1.0);
  const SeriesConstants sc = series_constants(p);
  const double L = 100.0 * sc.L0;
  const double x = (sc.L0 / L) * (sc.L0 / L);
  const double leading = p.mass_M * sc.A;
  const double y = spont_rate_correction(hermite_first_excited_density(L), p) / leading;
  CHECK(y / x == doctest::Approx(9.0).epsilon(5e-3));
  const double yg = spont_rate_correction(gaussian_density(L), p) / leading;
  CHECK(y / yg == doctest::Approx(3.0).epsilon(2e-3));
}

TEST_CASE("broad packets recover the localized-detector rate") {
  const DetectorParams p = make_detector_params(1.0, 1e6, 1.0, 1.0);
  const SeriesConstants sc = series_constants(p);
  const double leading = p.mass_M * sc.A;
  // L -> infinity limit through a sequence of widths
  for (double Lfac : {1e2, 1e3, 1e4}) {
    const double expect = 3.0 * std::pow(sc.L0 / (Lfac * sc.L0), 2);
    const double y = spont_rate_correction(gaussian_density(Lfac * sc.L0), p) / leading;
    CHECK(y == doctest::Approx(expect).epsilon(2e-3));
  }
  const RateResult widest = spont_rate(gaussian_density(1e4 * sc.L0), p);
  CHECK(widest.rate == doctest::Approx(leading).epsilon(1e-6));
}

TEST_CASE("large-mass limit rate is lambda^2 E for any density") {
  const DetectorParams p = make_detector_params(3.0, 1e6, 1.0, 0.5);
  CHECK(large_mass_rate(gaussian_density(1.0), p).rate == 0.25 * 3.0);
  CHECK(large_mass_rate(hermite_first_excited_density(2.0), p).rate == 0.25 * 3.0);
  // the full quadrature approaches it when the mass is scaled up
  const DetectorParams heavy = make_detector_params(1.0, 1e6, 1.0, 1.0);
  const SeriesConstants sc = series_constants(heavy);
  const RateResult full = spont_rate(gaussian_density(1e4 * sc.L0), heavy);
  CHECK(full.rate / (1.0 * 1.0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(classical_rate(heavy).rate == 1.0);
}

TEST_CASE("excitation rate is exactly zero when the support cap sits below threshold") {
  const DetectorParams p = make_detector_params(1.0, 1.0, 1.0, 1.0);
  // p_threshold = 1 + sqrt(2) ~ 2.41; cap = 40/L
  const RateResult r = excite_rate(gaussian_density(30.0), p);
  CHECK(r.rate == 0.0);
  CHECK(r.estimated_error == 0.0);
  CHECK(*r.diagnostics.threshold_fraction == 0.0);
}

TEST_CASE("zero gap with support above Mc excites at a positive rate") {
  // charge-without-internal-structure limit: threshold collapses to Mc
  const DetectorParams p = make_detector_params(0.0, 1e-3, 1e-3, 1.0);
  const RateResult r = excite_rate(gaussian_density(1.0), p);
  CHECK(r.rate > 0.0);
  CHECK(*r.diagnostics.threshold_fraction == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("excitation quadrature agrees with a dense midpoint brute force") {
  // threshold inside the bulk of the density
  const DetectorParams p = make_detector_params(0.5, 1.0, 1.0, 0.8);
  const MomentumDensity d = gaussian_density(1.0);
  const CriticalKinematics kin = critical_kinematics(p);
  REQUIRE(fraction_above(d, kin.p_threshold) > 1e-3);
  const RateResult r = excite_rate(d, p);
  CHECK(r.rate == doctest::Approx(brute_excite_rate(d, p)).epsilon(1e-6));
}

TEST_CASE("threshold gate: tiny but resolvable tails still excite") {
  const DetectorParams p = make_detector_params(1.0, 1.0, 1.0, 1.0);
  const MomentumDensity d = gaussian_density(2.0);  // p_th ~ 4.8 sigma
  const double frac = fraction_above(d, critical_kinematics(p).p_threshold);
  REQUIRE(frac >= 1e-6);
  CHECK(excite_rate(d, p).rate > 0.0);
}

TEST_CASE("mixed pair rates are x0-independent and equal the gaussian ones") {
  const DetectorParams p = make_detector_params(0.5, 1.0, 1.0, 1.0);
  const RateResult gauss_sp = spont_rate(gaussian_density(1.0), p);
  const RateResult gauss_ex = excite_rate(gaussian_density(1.0), p);
  for (double x0 : {0.7, 3.3}) {
    const MomentumDensity mixed = mixed_pair_density(1.0, x0);
    CHECK(spont_rate(mixed, p).rate == gauss_sp.rate);
    CHECK(excite_rate(mixed, p).rate == gauss_ex.rate);
  }
}

TEST_CASE("spontaneous rate decreases strictly with packet width") {
  const DetectorParams p = make_detector_params(1.0, 1e6, 1.0, 1.0);
  const SeriesConstants sc = series_constants(p);
  double prev = INFINITY;
  for (double Lfac = 10.0; Lfac <= 1e4 + 1; Lfac *= std::sqrt(10.0)) {
    const double rate = spont_rate(gaussian_density(Lfac * sc.L0), p).rate;
    CHECK(rate < prev);
    prev = rate;
  }
}

TEST_CASE("coherent pair rate: limits and the quadrature cross-check") {
  const DetectorParams p = make_detector_params(1.0, 1e6, 1.0, 1.0);
  const SeriesConstants sc = series_constants(p);
  const double L = 100.0 * sc.L0;

  // purely imaginary phase: identical to the incoherent mixture
  const RateResult coh_imag = coherent_pair_rate(L, 0.8 * L, {0.0, 1.0}, p);
  const RateResult mixed = spont_rate_series(mixed_pair_density(L, 0.8 * L), p);
  CHECK(coh_imag.rate == doctest::Approx(mixed.rate).epsilon(1e-12));

  // far separation: the single-gaussian rate
  const RateResult coh_far = coherent_pair_rate(L, 15.0 * L, {1.0, 0.0}, p);
  const RateResult gauss = spont_rate_series(gaussian_density(L), p);
  CHECK(coh_far.rate == doctest::Approx(gauss.rate).epsilon(1e-12));

  // alpha = 1, x0 = L: against the series rate fed by the quadrature moment
  MomentumDensity d = coherent_pair_density(L, L, {1.0, 0.0});
  d.analytic_moment2.reset();
  const RateResult via_quadrature = spont_rate_series(d, p);
  const RateResult closed = coherent_pair_rate(L, L, {1.0, 0.0}, p);
  CHECK(closed.rate == doctest::Approx(via_quadrature.rate).epsilon(1e-6));

  // E = 0 propagates the series-constants domain error
  CHECK_THROWS_AS(coherent_pair_rate(L, L, {1.0, 0.0}, make_detector_params(0, 1e6, 1, 1)),
                  DomainError);
  CHECK_THROWS_AS(spont_rate_series(gaussian_density(1.0), make_detector_params(0, 1, 1, 1)),
                  DomainError);
}

TEST_CASE("anisotropic quadrature path: imaginary-phase pair matches the mixture") {
  // exercises the explicit polar integration of the cross term, whose
  // sin component must vanish under the angular mean
  const DetectorParams p = make_detector_params(0.5, 10.0, 1.0, 1.0);
  const MomentumDensity coh = coherent_pair_density(1.0, 2.0, {0.0, 1.0});
  const MomentumDensity mixed = mixed_pair_density(1.0, 2.0);
  CHECK(!coh.isotropic);
  const double a = spont_rate(coh, p).rate;
  const double b = spont_rate(mixed, p).rate;
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("series, quadrature and classical agree in the heavy regime") {
  // E/Mc^2 = 1e-8 and <p^2> = 1e-8 (Mc)^2 scale
  const DetectorParams p = make_detector_params(1.0, 1e8, 1.0, 1.0);
  const MomentumDensity d = gaussian_density(1e-3);
  const double classical = classical_rate(p).rate;
  const double series = spont_rate_series(d, p).rate;
  const double full = spont_rate(d, p).rate;
  CHECK(series / classical == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(full / classical == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(full / series == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("rate results carry quadrature error estimates") {
  const DetectorParams p = make_detector_params(1.0, 1e3, 1.0, 1.0);
  const RateResult r = spont_rate(gaussian_density(1.0), p);
  CHECK(r.estimated_error > 0.0);
  CHECK(r.estimated_error < 1e-8);
  CHECK(classical_rate(p).estimated_error == 0.0);
}

TEST_CASE("quadrature failure surfaces a partial result in rate units") {
  const DetectorParams p = make_detector_params(1.0, 1e3, 1.0, 1.0);
  quad::QuadratureSpec strangled;
  strangled.rel_tol = 1e-30;
  strangled.max_subdivisions = 4;
  const double good = spont_rate(gaussian_density(1.0), p).rate;
  try {
    spont_rate(gaussian_density(1.0), p, strangled);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best_estimate == doctest::Approx(good).epsilon(1e-3));
    CHECK(e.achieved_error > 0.0);
  }
}
