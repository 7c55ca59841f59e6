#pragma once

// Closed-form sharp constants and auxiliary integrals. These are the ground
// truth the numerical routes in variational.hpp are checked against.

#include "hs_sharp/types.hpp"

namespace hs_sharp {

/// C_1 = 2(n-1)/omega_n.
double c1_closed(Dim n);

/// C_2 = sqrt(n(n-1) / (2^n omega_n)).
double c2_closed(Dim n);

/// C_inf = 4 (n-1)^{(n-1)/2} omega_{n-1} / (n^{n/2} omega_n).
double cinf_closed(Dim n);

/// Closed form for p in {1, 2, inf}; nullopt for any other exponent.
std::optional<double> closed_form_constant(Dim n, const Exponent& p);

struct MomentIntegrals {
  double first;   ///< int sin^{n-3}phi dphi int (n cos^2 t - 1)^2 sin^{n-2}t cos^n t dt
  double second;  ///< n^2 int cos^2 phi sin^{n-3}phi dphi int sin^n t cos^{n+2} t dt
};

/// The two moments whose combination I1 cos^2 b + I2 sin^2 b gives C_2(b)^2
/// up to the factor 4 omega_{n-2} / omega_n^2. Requires n >= 3.
MomentIntegrals moment_integrals(Dim n);

/// P_n(y) = s^{n-1} / (1 + (n-1) s^2)^{(n-2)/2}, s = sqrt(1+y^2) + y.
double p_n(double y, Dim n);

/// ln P_n(y); finite for all real y.
double log_p_n(double y, Dim n);

/// Coefficient of osc(u) / x_n in the oscillation bound: C_inf / 2.
double oscillation_constant(Dim n);

}  // namespace hs_sharp
