#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "udw/quad.hpp"

using namespace udw::quad;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("polynomial: int_0^1 x^2 dx = 1/3") {
  const auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("semi-infinite: int_0^inf exp(-x^2) dx = sqrt(pi)/2") {
  QuadratureSpec spec;
  spec.transform = Transform::semi_infinite_exp;
  const auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, kInf, spec);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-10));
}

TEST_CASE("sqrt edge: int_0^1 sqrt(x) dx = 2/3") {
  QuadratureSpec spec;
  spec.transform = Transform::sqrt_edge;
  const auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("error estimates honest within 10x on an analytic library") {
  struct Case {
    std::function<double(double)> f;
    double a, b;
    Transform tr;
    double exact;
  };
  const std::vector<Case> cases = {
      {[](double x) { return x * x; }, 0.0, 1.0, Transform::none, 1.0 / 3.0},
      {[](double x) { return std::sin(x); }, 0.0, M_PI, Transform::none, 2.0},
      {[](double x) { return std::exp(x); }, 0.0, 1.0, Transform::none, std::exp(1.0) - 1.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, Transform::none, M_PI / 4.0},
      {[](double x) { return std::sqrt(x); }, 0.0, 1.0, Transform::sqrt_edge, 2.0 / 3.0},
      {[](double x) { return -std::log(x); }, 0.0, 1.0, Transform::sqrt_edge, 1.0},
      {[](double x) { return std::exp(-x); }, 0.0, kInf, Transform::semi_infinite_exp, 1.0},
      {[](double x) { return std::exp(-x * x); }, 0.0, kInf, Transform::semi_infinite_exp,
       std::sqrt(M_PI) / 2.0},
      {[](double x) { return std::exp(-25.0 * x * x); }, -1.0, 1.0, Transform::none,
       std::sqrt(M_PI) / 5.0 * std::erf(5.0)},
      {[](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, Transform::sqrt_edge, 2.0},
  };
  for (size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    QuadratureSpec spec;
    spec.transform = cases[i].tr;
    const auto r = integrate(cases[i].f, cases[i].a, cases[i].b, spec);
    const double true_error = std::abs(r.value - cases[i].exact);
    CHECK(true_error <= 10.0 * r.error_estimate);
    CHECK(r.value == doctest::Approx(cases[i].exact).epsilon(1e-9));
  }
}

TEST_CASE("determinism: identical inputs give bit-identical results") {
  auto f = [](double x) { return std::exp(-x) * std::cos(10.0 * x); };
  const auto a = integrate(f, 0.0, 20.0);
  const auto b = integrate(f, 0.0, 20.0);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.subdivisions == b.subdivisions);
}

TEST_CASE("unreachable tolerance throws with best-estimate payload") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-30;
  spec.max_subdivisions = 4;
  try {
    integrate([](double x) { return std::sqrt(std::abs(x - 0.3141)); }, 0.0, 1.0, spec);
    FAIL("expected QuadratureError");
  } catch (const udw::QuadratureError& e) {
    // exact value: (2/3)(0.3141^1.5 + 0.6859^1.5) = 0.49607
    CHECK(e.best_estimate == doctest::Approx(0.49607).epsilon(1e-2));
    CHECK(e.achieved_error > 0.0);
  }
}

TEST_CASE("invalid requests are rejected") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate(f, 1.0, 0.0), udw::DomainError);
  CHECK_THROWS_AS(integrate(f, 0.0, kInf), udw::DomainError);  // needs the transform
  QuadratureSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate(f, 0.0, 1.0, bad), udw::DomainError);
  // non-finite integrand values surface as QuadratureError
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0),
                  udw::QuadratureError);
}

TEST_CASE("find_root: sqrt(2) from x^2 - 2 on [1, 2]") {
  const double r = find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-14);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("find_root matches the quadratic formula for emission kinematics") {
  // k^2 - 2k(p - cM) + 2EM with real positive roots
  const double p = 12.0, cM = 3.0, EM = 2.0;
  const double kv = p - cM;
  auto f = [&](double k) { return k * k - 2.0 * k * kv + 2.0 * EM; };
  const double disc = std::sqrt(kv * kv - 2.0 * EM);
  const double lo_root = find_root(f, 0.0, kv, 1e-14);
  const double hi_root = find_root(f, kv, 4.0 * kv, 1e-14);
  CHECK(lo_root == doctest::Approx(kv - disc).epsilon(1e-13));
  CHECK(hi_root == doctest::Approx(kv + disc).epsilon(1e-13));
}

TEST_CASE("find_root rejects an invalid bracket") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                  udw::RootFindError);
}
