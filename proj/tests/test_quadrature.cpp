#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "doctest.h"
#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/quadrature.hpp"

using namespace hs_sharp;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  for (int order : {2, 5, 16, 32}) {
    const auto& rule = gauss_legendre_rule(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    for (int deg = 0; deg < 2 * order; ++deg) {
      double s = 0.0;
      for (int i = 0; i < order; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("integrate_1d on smooth integrands") {
  CHECK(std::abs(integrate_1d([](double t) { return std::sin(t); }, 0.0, pi).value - 2.0) <
        1e-13);
  CHECK(std::abs(integrate_1d([](double t) { return t * t; }, 0.0, 1.0).value - 1.0 / 3.0) <
        1e-15);
  const auto q = integrate_1d([](double t) { return t * std::sin(t) * std::sin(t); }, 0.0,
                              2.0 * pi);
  CHECK(std::abs(q.value - pi * pi) < 1e-12);
  CHECK(q.abs_err < 1e-10);
}

TEST_CASE("graded substitution handles the inverse square-root endpoint") {
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const double b = 1.0 - eps;
    const auto q = integrate_1d_graded([](double t) { return 1.0 / std::sqrt(1.0 - t * t); },
                                       0.0, b);
    CHECK(std::abs(q.value - std::asin(b)) < 1e-10);
  }
}

TEST_CASE("kink splitting recovers a piecewise integral") {
  // |cos t - 1/2| on [0, pi/2] breaks at pi/3.
  const double exact = std::sqrt(3.0) - 1.0 - pi / 12.0;
  const auto q = integrate_2d_split(
      [](double, double t) { return std::abs(std::cos(t) - 0.5); }, {0.0, 1.0},
      {0.0, pi / 2.0}, [](double) { return std::optional<double>(pi / 3.0); });
  CHECK(std::abs(q.value - exact) < 1e-13);

  // A kink on the boundary of the inner range is ignored, not double counted.
  const auto edge = integrate_2d_split([](double, double t) { return t; }, {0.0, 2.0},
                                       {0.0, 1.0}, [](double) { return std::optional(1.0); });
  CHECK(std::abs(edge.value - 1.0) < 1e-14);
}

TEST_CASE("the n = 3, p = 2 normal-direction double integral is 3 pi / 8") {
  const auto f = [](double, double t) {
    const double c = std::cos(t);
    const double a = 3.0 * c * c - 1.0;
    return a * a * c * c * c * std::sin(t);
  };
  const auto q = integrate_2d_split(f, {0.0, pi}, {0.0, pi / 2.0},
                                    [](double) { return std::optional(std::atan(std::sqrt(2.0))); });
  CHECK(std::abs(q.value - 3.0 * pi / 8.0) < 1e-12);
  CHECK(std::abs(moment_integrals(Dim(3)).first - 3.0 * pi / 8.0) < 1e-13);
}

TEST_CASE("kink splitting is harmless for a smooth power") {
  // With p = 2 the exponent p/(p-1) = 2 makes |A|^2 smooth, so the split
  // and unsplit integrals must agree.
  const auto f = [](double phi, double t) {
    const double a = (3.0 * std::cos(t) * std::cos(t) - 1.0) * std::cos(0.4) +
                     3.0 * std::cos(t) * std::sin(t) * std::cos(phi) * std::sin(0.4);
    return a * a * std::pow(std::cos(t), 3) * std::sin(t);
  };
  const auto none = [](double) { return std::optional<double>(); };
  const auto at = [](double phi) {
    const double g = std::sin(0.4) * std::cos(phi);
    return std::optional(std::atan((3.0 * g + std::sqrt(8.0 * std::cos(0.4) * std::cos(0.4) +
                                                        9.0 * g * g)) /
                                   (2.0 * std::cos(0.4))));
  };
  const auto a = integrate_2d_split(f, {0.0, pi}, {0.0, pi / 2.0}, none);
  const auto b = integrate_2d_split(f, {0.0, pi}, {0.0, pi / 2.0}, at);
  CHECK(std::abs(a.value - b.value) < 1e-12);
}

TEST_CASE("refining the rule stays within the reported error") {
  const auto f = [](double t) { return std::exp(std::sin(3.0 * t)) * std::sqrt(1.0 + t); };
  QuadratureSpec coarse{8, 10, 1e-9, 1e-9};
  QuadratureSpec fine{16, 10, 1e-14, 1e-14};
  const auto a = integrate_1d(f, 0.0, 4.0, coarse);
  const auto b = integrate_1d(f, 0.0, 4.0, fine);
  CHECK(std::abs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-15);
}

TEST_CASE("vector quadrature converges every component") {
  const auto f = [](double t, std::span<double> out) {
    out[0] = std::cos(t);
    out[1] = t * t;
  };
  const auto q = integrate_1d_vec(f, 2, 0.0, pi / 2.0, {}, 3);
  CHECK(std::abs(q.value[0] - 1.0) < 1e-14);
  CHECK(std::abs(q.value[1] - pi * pi * pi / 24.0) < 1e-13);
}

TEST_CASE("exhausted refinement raises NonConvergence with the best estimate") {
  QuadratureSpec spec{4, 2, 1e-15, 1e-15};
  const auto f = [](double t) { return 1.0 / std::sqrt(t); };
  try {
    (void)integrate_1d(f, 0.0, 1.0, spec);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(std::abs(e.best().value - 2.0) < 0.5);
    CHECK(e.best().abs_err > 0.0);
  }
}

TEST_CASE("QuadratureSpec validation") {
  CHECK_THROWS_AS((QuadratureSpec{1, 10, 1e-12, 1e-10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureSpec{8, -1, 1e-12, 1e-10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureSpec{8, 3, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((QuadratureSpec{}.validate()));
}
