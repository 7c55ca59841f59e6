#pragma once

// Direction-resolved sharp constants C_p(z) and their supremum over z.
//
// A direction z is reduced to its polar angle beta from e_n; every integrand
// is written with cos(beta) and sin(beta) appearing polynomially, so the
// tangential direction beta = pi/2 is an ordinary evaluation point.
//
// Routes:
//   p = 1          c1_direction: scalar maximisation over t = (e_sigma, e_n)
//   1 < p < inf    cp_direction_double_integral (n >= 3): the (phi, theta)
//                  integral split along the kink curve theta_star
//   1 < p <= inf   cp_direction_hemisphere: the hemisphere integral in
//                  (t = sin tau, azimuth psi), split along the azimuthal kink
//   p = inf        cinf_alpha_integral (n >= 3): smooth one-dimensional form

#include <vector>

#include "hs_sharp/quadrature.hpp"
#include "hs_sharp/types.hpp"

namespace hs_sharp {

/// Below this exponent the double-integral route is refused; the integrand
/// |A|^{p/(p-1)} is too concentrated for reliable quadrature.
inline constexpr double kMinDoubleIntegralExponent = 1.1;

/// A(phi, theta) = (n cos^2 theta - 1) cos beta + n cos theta sin theta cos phi sin beta.
double kink_expression(double phi, double theta, const Direction& dir, Dim n);

/// The unique theta in [0, pi/2] with A(phi, theta) = 0.
/// Throws std::domain_error for out-of-range input or when A vanishes identically.
double theta_star(double phi, const Direction& dir, Dim n);

double alpha_from_beta(double beta, Dim n);
double beta_from_alpha(double alpha, Dim n);

struct C1DirectionDetail {
  double value = 0.0;     ///< C_1(z)
  double argmax_t = 0.0;  ///< maximising t = (e_sigma, e_n)
  int sign = 1;           ///< +1: azimuth cos = +1 (sigma' along z'), -1: opposite
};

C1DirectionDetail c1_direction_detail(Dim n, const Direction& dir);
double c1_direction(Dim n, const Direction& dir);

ConstantResult cp_direction_hemisphere(Dim n, const Exponent& p, const Direction& dir,
                                       const QuadratureSpec& spec = {});

ConstantResult cp_direction_double_integral(Dim n, const Exponent& p, const Direction& dir,
                                            const QuadratureSpec& spec = {});

/// The p = inf direction constant in the alpha parameterisation, alpha >= 0.
Estimate cinf_alpha_integral(Dim n, double alpha, const QuadratureSpec& spec = {});

/// Same quantity written in beta so that beta = pi/2 stays finite.
Estimate cinf_alpha_route(Dim n, const Direction& dir, const QuadratureSpec& spec = {});

/// The route sup_over_direction uses for a single direction.
ConstantResult cp_direction(Dim n, const Exponent& p, const Direction& dir,
                            const QuadratureSpec& spec = {});

/// Grid of 65 beta values on [0, pi/2] followed by golden-section refinement
/// of the best cell to width 1e-10. Ties within error go to the smaller beta.
ConstantResult sup_over_direction(Dim n, const Exponent& p, const QuadratureSpec& spec = {});

struct ProfilePoint {
  double beta = 0.0;
  double value = 0.0;
  double abs_err = 0.0;
};

/// C_p(beta) at `count` equally spaced beta in [0, pi/2] (count >= 2).
std::vector<ProfilePoint> direction_profile(Dim n, const Exponent& p, int count,
                                            const QuadratureSpec& spec = {});

}  // namespace hs_sharp
