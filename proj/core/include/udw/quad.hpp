#pragma once

#include <functional>

#include "udw/errors.hpp"

namespace udw::quad {

/// Variable transform applied before integration.
///  - none:               integrate f on [a, b] directly
///  - sqrt_edge:          substitutes u = sqrt(x - a); tames an integrable
///                        sqrt singularity or sqrt-shaped edge at the lower
///                        limit
///  - semi_infinite_exp:  substitutes x = a + t/(1-t) for b = +infinity;
///                        requires the integrand to decay at least
///                        exponentially
enum class Transform { none, sqrt_edge, semi_infinite_exp };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;  // absolute floor added to the relative target
  int max_subdivisions = 1 << 16;
  Transform transform = Transform::none;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7, K15) quadrature with interval bisection.
///
/// Deterministic: identical inputs produce bit-identical outputs; no
/// randomized components. Terminates when the summed error estimate is
/// below rel_tol * |value| + abs_tol, otherwise throws QuadratureError
/// carrying the best estimate and the achieved error.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Brent's method on a bracketing interval. Requires f(lo) * f(hi) <= 0,
/// otherwise throws RootFindError. Converges to |interval| below
/// rel_tol * |root| plus a few ulps.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-13);

}  // namespace udw::quad
