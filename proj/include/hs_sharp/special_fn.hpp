#pragma once

// Gamma-function and sphere-measure primitives.
//
// Sphere areas are indexed by the dimension of the ambient space:
//   sphere_area(n) = |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2),
// so sphere_area(2) = 2 pi (the unit circle) and sphere_area(3) = 4 pi.
// sphere_area(1) = 2 counts the two points of S^0.

namespace hs_sharp {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Area of the unit sphere S^{n-1} in R^n, n >= 1.
double sphere_area(int n);

/// ln of sphere_area(n); finite for every n >= 1.
double log_sphere_area(int n);

/// Integral of sin^k over [0, pi] = sqrt(pi) Gamma((k+1)/2) / Gamma((k+2)/2).
double sine_moment(int k);

}  // namespace hs_sharp
