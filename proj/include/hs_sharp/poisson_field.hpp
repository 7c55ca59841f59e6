#pragma once

// Poisson integrals over the boundary of R^n_+ and empirical sharpness.
//
// Boundary points are reached along rays y' = x' + x_n tan(theta) omega with
// theta in [0, pi/2) and omega on S^{n-2}. In these coordinates the Poisson
// kernel times the area element is (2/omega_n) sin^{n-2} theta, so the whole
// boundary becomes a finite domain with a bounded density:
//
//   u(x)        = (2/omega_n)       int sin^{n-2}t f
//   grad' u(x)  = (2/(omega_n x_n)) int sin^{n-2}t n cos t sin t omega f
//   d_n u(x)    = (2/(omega_n x_n)) int sin^{n-2}t (1 - n cos^2 t) f
//
// The inner theta integral is split wherever the data says it is not smooth
// along the ray and at every entry or exit of a declared ball. The outer
// integral over S^{n-2} uses hyperspherical angles, split where rays graze
// a declared ball.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hs_sharp/quadrature.hpp"
#include "hs_sharp/types.hpp"

namespace hs_sharp {

/// Looser spec for randomised verification, where only a 1e-3 margin matters.
inline constexpr QuadratureSpec kVerificationSpec{12, 12, 1e-8, 1e-5};

struct HalfSpacePoint {
  std::vector<double> x_prime;  ///< n-1 tangential coordinates
  double x_n = 1.0;             ///< distance to the boundary, > 0

  /// Throws std::invalid_argument unless x_n > 0 and x_prime has n-1 entries.
  void validate(Dim n) const;
};

struct Ball {
  std::vector<double> center;  ///< point of R^{n-1}
  double radius = 0.0;
};

struct BoundaryData {
  /// Must be safe for concurrent calls and finite everywhere.
  std::function<double(std::span<const double>)> eval;

  /// Optional: distances r > 0 along the ray origin + r dir where eval is
  /// not smooth (sign changes, kinks). Appended to `out`.
  std::function<void(std::span<const double> origin, std::span<const double> dir,
                     std::vector<double>& out)>
      ray_breaks;

  /// Optional: exact L^p norm when known; nullopt defers to quadrature.
  std::function<std::optional<double>(const Exponent&)> known_norm;
  std::optional<Ball> support;  ///< nullopt: unbounded support
  std::vector<Ball> focus;      ///< regions where the data has structure
  /// The data vanishes outside the union of the focus balls.
  bool zero_outside_focus = false;

  /// Range of the data; used by the oscillation check.
  std::optional<double> sup;
  std::optional<double> inf;

  /// Natural length for the compactified norm quadrature.
  double scale = 1.0;
};

BoundaryData constant_data(double c);

/// c on the closed ball, 0 outside.
BoundaryData ball_indicator_data(Ball ball, double c);

/// known_norm(p) if it answers, otherwise the numerical L^p norm over the
/// declared support (compactified polar coordinates about the support centre
/// with length `scale`). p = inf is never computed numerically.
double boundary_norm(const BoundaryData& f, const Exponent& p, Dim n,
                     const QuadratureSpec& spec = {});

Estimate poisson_eval(const BoundaryData& f, const HalfSpacePoint& x, Dim n,
                      const QuadratureSpec& spec = {});

/// Components (d_1 u, ..., d_{n-1} u, d_n u).
VectorEstimate poisson_gradient(const BoundaryData& f, const HalfSpacePoint& x, Dim n,
                                const QuadratureSpec& spec = {});

/// z = sin(beta) e_1 + cos(beta) e_n.
std::vector<double> direction_vector(const Direction& dir, Dim n);

/// Kernel of f -> (grad u(x), z), in Euclidean form.
double directional_kernel(std::span<const double> y_prime, const HalfSpacePoint& x,
                          const Direction& dir, Dim n);

/// Bump radii used for p = 1; the bump has radius x_n / m.
inline constexpr double kBumpScales[] = {8.0, 16.0, 32.0};

/// Near-extremal data for (grad u(x), z):
///   p = inf   sign(K_z) on the ball of radius R about x'
///   1<p<inf   sign(K_z)|K_z|^{1/(p-1)} on the same ball
///   p = 1     normalised C-infinity bump of radius x_n / m at the maximiser
///             of |K_z|, carrying its sign
/// `m` is used only for p = 1. Throws std::invalid_argument when
/// R <= 10 x_n.
BoundaryData extremal_data(const Exponent& p, const HalfSpacePoint& x, const Direction& dir,
                           Dim n, double truncation_radius, double m = kBumpScales[0]);

struct SharpnessReport {
  double ratio = 0.0;  ///< |grad u(x)| x_n^{(n+p-1)/p} / ||f||_p
  double bound = 0.0;  ///< C_p
  double gap = 0.0;    ///< 1 - ratio / bound
  double quadrature_err = 0.0;  ///< error of ratio from quadrature alone
  double directional_ratio = 0.0;  ///< same with (grad u(x), z) in place of |grad u|
  double directional_bound = 0.0;  ///< C_p(z)
  double norm = 0.0;
  std::vector<double> gradient;
  /// p = 1 only: bump scales m and the ratio reached at each; `ratio` is the
  /// Richardson extrapolation in 1/m^2 of the last two.
  std::vector<double> bump_scales;
  std::vector<double> bump_ratios;
};

/// Ratio for given data against the supplied bounds.
SharpnessReport measure_ratio(const BoundaryData& f, const Exponent& p, Dim n,
                              const HalfSpacePoint& x, const Direction& dir, double bound,
                              double directional_bound, const QuadratureSpec& spec = {});

SharpnessReport sharpness_ratio(const Exponent& p, Dim n, const HalfSpacePoint& x,
                                const Direction& dir, double truncation_radius,
                                const QuadratureSpec& spec = {});

/// C_p via closed form when available, else sup_over_direction.
double sharp_bound(const Exponent& p, Dim n, const QuadratureSpec& spec = {});
/// C_p(z) via closed form at beta = 0 when available, else cp_direction.
double sharp_direction_bound(const Exponent& p, Dim n, const Direction& dir,
                             const QuadratureSpec& spec = {});

struct OscillationReport {
  double gradient_norm = 0.0;
  double oscillation = 0.0;  ///< sup f - inf f, which equals osc u over R^n_+
  double bound = 0.0;        ///< (C_inf / 2) osc / x_n
  double quadrature_err = 0.0;
  bool holds = false;
};

/// Requires f.sup and f.inf.
OscillationReport oscillation_check(const BoundaryData& f, Dim n, const HalfSpacePoint& x,
                                    const QuadratureSpec& spec = {});

/// b(r) = exp(1 - 1/(1 - r^2)) on r < 1, scaled to radius and amplitude.
struct Bump {
  std::vector<double> center;
  double radius = 1.0;
  double amplitude = 1.0;
};

/// Sum of bumps with pairwise disjoint supports.
struct BumpFamily {
  std::vector<Bump> bumps;

  /// y' -> lambda y' applied to the family.
  BumpFamily dilated(double lambda) const;
};

/// Exact norms: sup = max |s_k|; ||f||_p^p = sum |s_k|^p rho_k^{n-1} omega_{n-1}
/// int_0^1 r^{n-2} b(r)^p dr.
BoundaryData bump_family_data(const BumpFamily& family, Dim n);

/// int_0^1 r^{n-2} b(r)^p dr.
double bump_radial_moment(Dim n, double p);

/// One to four disjoint bumps near x', the first with amplitude +-1 and the
/// rest in [-1, 1]. Draws consume `rng` in a fixed order.
BumpFamily random_bump_family(Dim n, const HalfSpacePoint& x, std::mt19937_64& rng);

/// x' uniform in [-1, 1]^{n-1}, x_n uniform in [0.5, 2].
HalfSpacePoint random_point(Dim n, std::mt19937_64& rng);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

}  // namespace hs_sharp
