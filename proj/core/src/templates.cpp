#include "udw/templates.hpp"

#include <algorithm>
#include <cmath>

#include "udw/errors.hpp"
#include "udw/quad.hpp"

namespace udw {

namespace {

// S = sqrt((cM)^2 + b): the p = 0 energy scale of the emission window
double window_scale(double b, double cM) { return std::sqrt(cM * cM + b); }

// coefficients of the small-p series T(p) = 2A + 2B p^2 + T4 p^4 + O(p^6);
// A = b/(S(S+cM)) and B = b cM/(2 S^5) are the closed forms rewritten
// without cancellation
struct WindowSeries {
  double two_A;
  double two_B;
  double T4;
};

WindowSeries window_series(double b, double cM) {
  const double S = window_scale(b, cM);
  const double S2 = S * S;
  const double S5 = S2 * S2 * S;
  WindowSeries w;
  w.two_A = 2.0 * b / (S * (S + cM));
  w.two_B = b * cM / S5;
  w.T4 = b * cM * (4.0 * cM * cM - 3.0 * b) / (4.0 * S5 * S2 * S2);
  return w;
}

}  // namespace

double emission_window_over_p(double p, double b, double cM) {
  // (k+ - k-)/p = 2 (Sigma - 2cM) / Sigma with Sigma = sqrt(u^2+b) + sqrt(w^2+b),
  // u = p - cM, w = p + cM. Sigma - 2cM is assembled from the two positive
  // pieces sqrt(u^2+b) - (cM - p) and sqrt(w^2+b) - (cM + p), each rationalized
  // when the subtraction would cancel.
  const double u = p - cM;
  const double w = p + cM;
  const double su = std::sqrt(u * u + b);
  const double sw = std::sqrt(w * w + b);
  const double sigma = su + sw;
  const double t1 = (p <= cM) ? b / (su + (cM - p)) : su + u;
  const double t2 = b / (sw + w);
  return 2.0 * (t1 + t2) / sigma;
}

double t_spont_closed(double p, const DetectorParams& params) {
  if (!(p >= 0.0)) throw DomainError("p: must be >= 0");
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  return std::max(0.0, emission_window_over_p(p, b, cM));
}

double t_spont_series4(double p, const DetectorParams& params) {
  if (!(p >= 0.0)) throw DomainError("p: must be >= 0");
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const WindowSeries w = window_series(b, cM);
  const double p2 = p * p;
  return w.two_A + w.two_B * p2 + w.T4 * p2 * p2;
}

double t_spont(double p, const DetectorParams& params) {
  const double cM = params.mass_M * params.wave_speed_c;
  return (p < kSmallPSwitchover * cM) ? t_spont_series4(p, params) : t_spont_closed(p, params);
}

double t_spont_excess(double p, const DetectorParams& params) {
  if (!(p >= 0.0)) throw DomainError("p: must be >= 0");
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const WindowSeries w = window_series(b, cM);
  // the series truncation error and the subtraction round-off of the
  // closed form balance near p ~ 2e-3 Mc, at ~1e-10 relative
  if (p < 2e-3 * cM) {
    const double p2 = p * p;
    return w.two_B * p2 + w.T4 * p2 * p2;
  }
  return emission_window_over_p(p, b, cM) - w.two_A;
}

SeriesConstants series_constants(const DetectorParams& params) {
  if (params.gap_E <= 0.0) {
    throw DomainError("gap_E: series constants undefined at E = 0 (A = B = 0)");
  }
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const WindowSeries w = window_series(b, cM);
  SeriesConstants sc;
  sc.A = 0.5 * w.two_A;
  sc.B = 0.5 * w.two_B;
  sc.p0 = std::sqrt(sc.A / sc.B);
  sc.L0 = 1.0 / sc.p0;
  return sc;
}

double t_spont_large_mass(const DetectorParams& params) {
  return 2.0 * params.gap_E / (params.mass_M * params.wave_speed_c * params.wave_speed_c);
}

double t_excite(double p, const DetectorParams& params) {
  if (!(p >= 0.0)) throw DomainError("p: must be >= 0");
  if (p == 0.0) return 0.0;  // below threshold always
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const double u = p - cM;
  if (u <= 0.0) return 0.0;
  const double disc = u * u - b;
  if (disc <= 0.0) return 0.0;
  return (2.0 * params.mass_M / p) * std::sqrt(disc);
}

CriticalKinematics critical_kinematics(const DetectorParams& params) {
  CriticalKinematics kin;
  kin.v_crit = params.wave_speed_c + std::sqrt(2.0 * params.gap_E / params.mass_M);
  kin.p_threshold = params.mass_M * kin.v_crit;
  return kin;
}

namespace {

// positive root of k^2 + 2 k q - b (b >= 0) by generic bracketing,
// no quadratic formula
double positive_root_bracketed(double q, double b, double hi_seed) {
  auto f = [q, b](double k) { return k * k + 2.0 * k * q - b; };
  if (b == 0.0) {
    // roots 0 and -2q; the positive one only exists for q < 0
    return q < 0.0 ? -2.0 * q : 0.0;
  }
  double hi = std::max(hi_seed, 1e-300);
  for (int i = 0; i < 600 && f(hi) <= 0.0; ++i) hi *= 2.0;
  if (f(hi) <= 0.0) throw RootFindError("t_spont_oracle: bracketing failed");
  return quad::find_root(f, 0.0, hi, 1e-14);
}

}  // namespace

double t_spont_oracle(double p, const DetectorParams& params, double seed_scale) {
  if (!(p > 0.0)) throw DomainError("p: must be > 0");
  if (!(seed_scale > 0.0)) throw DomainError("seed_scale: must be > 0");
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const double seed = seed_scale * (std::sqrt(b) + std::abs(cM - p) + p * 1e-3);
  const double k_up = positive_root_bracketed(cM - p, b, seed);
  const double k_low = positive_root_bracketed(cM + p, b, seed);
  return (k_up - k_low) / p;
}

double t_excite_oracle(double p, const DetectorParams& params, double seed_scale) {
  if (!(p > 0.0)) throw DomainError("p: must be > 0");
  if (!(seed_scale > 0.0)) throw DomainError("seed_scale: must be > 0");
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  const double kv = p - cM;  // vertex of the parabola
  auto f = [kv, b](double k) { return k * k - 2.0 * k * kv + b; };
  if (f(kv) > 0.0) return 0.0;  // no real roots
  if (b == 0.0) {
    // roots 0 and 2 kv
    return kv > 0.0 ? (2.0 * params.mass_M / p) * kv : 0.0;
  }
  if (kv <= 0.0) return 0.0;  // both roots non-positive (product b > 0)
  double hi = seed_scale * (2.0 * kv + std::sqrt(b));
  for (int i = 0; i < 600 && (hi <= kv || f(hi) <= 0.0); ++i) hi *= 2.0;
  const double k_minus = quad::find_root(f, 0.0, kv, 1e-14);
  const double k_plus = quad::find_root(f, kv, hi, 1e-14);
  if (k_plus <= 0.0) return 0.0;
  return (2.0 * params.mass_M / p) * 0.5 * (k_plus - k_minus);
}

double excite_threshold_from_discriminant(const DetectorParams& params) {
  const double cM = params.mass_M * params.wave_speed_c;
  const double b = 2.0 * params.gap_E * params.mass_M;
  if (b == 0.0) return cM;  // E -> 0 limit: threshold at p = Mc
  auto disc = [cM, b](double p) { return (p - cM) * (p - cM) - b; };
  double hi = cM + 2.0 * std::sqrt(b) + 1e-300;
  for (int i = 0; i < 600 && disc(hi) <= 0.0; ++i) hi *= 2.0;
  return quad::find_root(disc, cM, hi, 1e-13);
}

}  // namespace udw
