#include "udw/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace udw::quad {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
// Abscissae/weights as in QUADPACK's dqk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  double value;
  double error;  // |K15 - G7|, a conservative bound on the K15 error
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;
  }
  resk *= half;
  resg *= half;
  if (!std::isfinite(resk)) {
    throw QuadratureError("integrate: integrand not finite on the interval", resk,
                          std::numeric_limits<double>::infinity());
  }
  return {resk, std::abs(resk - resg)};
}

struct Segment {
  double a, b, value, error;
  std::uint64_t seq;  // insertion order; deterministic tie break
  bool final;         // too narrow to split further
};

// Max-heap order: splittable segments above final ones, then by error,
// ties broken by insertion order. Fully deterministic.
struct SegmentBelow {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.final != y.final) return x.final;
    if (x.error != y.error) return x.error < y.error;
    return x.seq > y.seq;
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw DomainError("integrate: requires a <= b");
  }
  if (spec.rel_tol <= 0.0) throw DomainError("integrate: rel_tol must be > 0");
  if (spec.max_subdivisions < 1) throw DomainError("integrate: max_subdivisions must be >= 1");

  std::function<double(double)> g;
  double ta = a, tb = b;
  switch (spec.transform) {
    case Transform::none:
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: infinite limit requires semi_infinite_exp");
      }
      g = f;
      break;
    case Transform::sqrt_edge:
      // u = sqrt(x - a): int_a^b f dx = int_0^sqrt(b-a) 2 u f(a + u^2) du
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: sqrt_edge requires finite limits");
      }
      g = [f, a](double u) { return 2.0 * u * f(a + u * u); };
      ta = 0.0;
      tb = std::sqrt(b - a);
      break;
    case Transform::semi_infinite_exp:
      // x = a + t/(1-t): int_a^inf f dx = int_0^1 f(x(t)) / (1-t)^2 dt.
      // Requires an integrand decaying at least exponentially; the last
      // representable t maps to x ~ 9e15, where such integrands underflow
      // to exactly 0 long before the 1/(1-t)^2 weight can overflow.
      if (!std::isfinite(a) || b != std::numeric_limits<double>::infinity()) {
        throw DomainError("integrate: semi_infinite_exp requires finite a, b = +inf");
      }
      g = [f, a](double t) {
        const double om = 1.0 - t;
        return f(a + t / om) / (om * om);
      };
      ta = 0.0;
      tb = 1.0;
      break;
  }
  if (ta == tb) return {0.0, 0.0, 0};

  std::vector<Segment> segs;
  const SegmentBelow below{};
  std::uint64_t seq = 0;
  double total_value = 0.0;
  double total_error = 0.0;

  auto push = [&](double lo, double hi) {
    RuleResult r = gk15(g, lo, hi);
    const double width_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                               std::max({std::abs(lo), std::abs(hi), 1e-300});
    segs.push_back(Segment{lo, hi, r.value, r.error, seq++, (hi - lo) <= width_floor});
    std::push_heap(segs.begin(), segs.end(), below);
    total_value += r.value;
    total_error += r.error;
  };
  auto recompute_totals = [&] {
    total_value = 0.0;
    total_error = 0.0;
    for (const Segment& s : segs) {
      total_value += s.value;
      total_error += s.error;
    }
  };
  auto tolerance = [&](double value) { return spec.rel_tol * std::abs(value) + spec.abs_tol; };

  push(ta, tb);
  int splits = 0;
  int since_recompute = 0;
  while (true) {
    if (total_error <= tolerance(total_value)) {
      recompute_totals();  // canonical sum; incremental totals drift slightly
      if (total_error <= tolerance(total_value)) break;
    }
    const Segment worst = segs.front();
    if (worst.final || splits >= spec.max_subdivisions) {
      recompute_totals();
      if (total_error <= tolerance(total_value)) break;
      const double reported =
          total_error + std::numeric_limits<double>::epsilon() * std::abs(total_value);
      throw QuadratureError("integrate: tolerance unreachable after " + std::to_string(splits) +
                                " subdivisions",
                            total_value, reported);
    }
    std::pop_heap(segs.begin(), segs.end(), below);
    segs.pop_back();
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    push(worst.a, mid);
    push(mid, worst.b);
    ++splits;
    if (++since_recompute >= 4096) {
      recompute_totals();
      since_recompute = 0;
    }
  }

  const double reported =
      total_error + std::numeric_limits<double>::epsilon() * std::abs(total_value);
  return {total_value, reported, splits};
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  // Brent's method (inverse quadratic interpolation with bisection fallback)
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0) {
    throw RootFindError("find_root: invalid bracket");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;

  double c = a, fc = fa;
  double d = b - a, e = d;
  const int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                       0.5 * rel_tol * std::abs(b) + 1e-300;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;

    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw RootFindError("find_root: no convergence");
}

}  // namespace udw::quad
