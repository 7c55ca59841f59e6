#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/quadrature.hpp"
#include "hs_sharp/special_fn.hpp"

using namespace hs_sharp;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("C_1 closed form") {
  CHECK(rel(c1_closed(Dim(2)), 1.0 / pi) < 1e-15);
  CHECK(rel(c1_closed(Dim(3)), 1.0 / pi) < 1e-15);
  CHECK(rel(c1_closed(Dim(4)), 3.0 / (pi * pi)) < 1e-15);
}

TEST_CASE("C_2 closed form") {
  CHECK(rel(c2_closed(Dim(2)), 0.5 / std::sqrt(pi)) < 1e-15);
  CHECK(rel(c2_closed(Dim(3)), std::sqrt(3.0 / (16.0 * pi))) < 1e-15);
  CHECK(rel(c2_closed(Dim(4)), std::sqrt(3.0 / (8.0 * pi * pi))) < 1e-15);
}

TEST_CASE("C_inf closed form") {
  CHECK(rel(cinf_closed(Dim(2)), 2.0 / pi) < 1e-15);
  CHECK(rel(cinf_closed(Dim(3)), 4.0 / (3.0 * std::sqrt(3.0))) < 1e-15);
  CHECK(rel(cinf_closed(Dim(4)), 3.0 * std::sqrt(3.0) / (2.0 * pi)) < 1e-15);
  CHECK(cinf_closed(Dim(3)) == doctest::Approx(0.7698004).epsilon(1e-7));
  CHECK(cinf_closed(Dim(4)) == doctest::Approx(0.8269933).epsilon(1e-7));
}

TEST_CASE("closed_form_constant dispatch") {
  CHECK(*closed_form_constant(Dim(5), Exponent::one()) == c1_closed(Dim(5)));
  CHECK(*closed_form_constant(Dim(5), Exponent::finite(2.0)) == c2_closed(Dim(5)));
  CHECK(*closed_form_constant(Dim(5), Exponent::infinity()) == cinf_closed(Dim(5)));
  CHECK_FALSE(closed_form_constant(Dim(5), Exponent::finite(2.5)).has_value());
}

TEST_CASE("moment integrals") {
  const auto m3 = moment_integrals(Dim(3));
  CHECK(rel(m3.first, 3.0 * pi / 8.0) < 1e-14);
  CHECK(rel(m3.second, 3.0 * pi / 16.0) < 1e-14);
  CHECK_THROWS_AS(moment_integrals(Dim(2)), std::domain_error);

  // Separable definitions integrated numerically.
  for (int n = 3; n <= 10; ++n) {
    const double phi0 = sine_moment(n - 3);
    const double phi2 = integrate_1d(
        [n](double f) { return std::cos(f) * std::cos(f) * std::pow(std::sin(f), n - 3); }, 0.0,
        pi).value;
    const double t1 = integrate_1d(
        [n](double t) {
          const double c = std::cos(t);
          return std::pow(n * c * c - 1.0, 2) * std::pow(std::sin(t), n - 2) * std::pow(c, n);
        },
        0.0, pi / 2.0).value;
    const double t2 = integrate_1d(
        [n](double t) { return std::pow(std::sin(t), n) * std::pow(std::cos(t), n + 2); }, 0.0,
        pi / 2.0).value;
    const auto m = moment_integrals(Dim(n));
    CHECK(rel(m.first, phi0 * t1) < 1e-12);
    CHECK(rel(m.second, double(n) * n * phi2 * t2) < 1e-12);
  }
}

TEST_CASE("closed forms are positive, finite and mutually consistent for n = 2..20") {
  for (int n = 2; n <= 20; ++n) {
    const Dim d(n);
    for (double c : {c1_closed(d), c2_closed(d), cinf_closed(d)}) {
      CHECK(c > 0.0);
      CHECK(std::isfinite(c));
    }
    const double c2 = c2_closed(d);
    CHECK(rel(c2 * c2 * std::pow(2.0, n) * sphere_area(n), double(n) * (n - 1)) < 1e-12);
    CHECK(rel(oscillation_constant(d), cinf_closed(d) / 2.0) < 1e-15);
    if (n >= 3) {
      const auto m = moment_integrals(d);
      CHECK(rel(m.first, (n - 1) * m.second) < 1e-12);
      CHECK(rel(c2, 2.0 * std::sqrt(sphere_area(n - 2)) / sphere_area(n) * std::sqrt(m.first)) <
            1e-12);
    }
  }
}

TEST_CASE("oscillation constant examples") {
  CHECK(rel(oscillation_constant(Dim(2)), 1.0 / pi) < 1e-15);
  CHECK(rel(oscillation_constant(Dim(3)), 2.0 / (3.0 * std::sqrt(3.0))) < 1e-15);
  CHECK(rel(oscillation_constant(Dim(4)), 3.0 * std::sqrt(3.0) / (4.0 * pi)) < 1e-15);
}

TEST_CASE("P_n values and the product identity") {
  CHECK(rel(p_n(0.0, Dim(3)), 1.0 / std::sqrt(3.0)) < 1e-15);
  for (int n = 2; n <= 20; ++n) {
    const Dim d(n);
    CHECK(rel(p_n(0.0, d), std::pow(n, (2.0 - n) / 2.0)) < 1e-14);
    for (double y : {-40.0, -3.0, -0.7, -1e-6, 0.25, 1.0, 5.0, 80.0}) {
      const double prod = p_n(y, d) * p_n(-y, d);
      const double expect = std::pow(4.0 * (n - 1) * y * y + double(n) * n, (2.0 - n) / 2.0);
      CHECK(rel(prod, expect) < 1e-12);
      CHECK(prod <= std::pow(double(n), 2.0 - n) * (1.0 + 1e-15));
      CHECK(rel(std::exp(log_p_n(y, d)), p_n(y, d)) < 1e-13);
    }
  }
  // Large negative y must not lose the value to cancellation.
  const double s = 1.0 / (1e8 + std::hypot(1.0, 1e8));
  CHECK(rel(p_n(-1e8, Dim(3)), s * s / std::sqrt(1.0 + 2.0 * s * s)) < 1e-14);
}
