#pragma once

// Deterministic Gauss-Legendre quadrature with local panel bisection.
//
// Every panel carries two estimates: one Gauss-Legendre rule on the whole
// panel and the sum of the same rule on its two halves. The panel error is
// the difference of the two levels; the panel with the largest error is
// bisected until the summed error meets max(abs_tol, rel_tol * |value|) or
// the depth budget (max_refinements) is exhausted.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hs_sharp {

struct QuadratureSpec {
  int base_order = 32;       ///< Gauss-Legendre points per panel
  int max_refinements = 10;  ///< maximum bisection depth of any panel
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  /// Throws std::invalid_argument when the invariants are violated.
  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double abs_err = 0.0;
};

struct VectorEstimate {
  std::vector<double> value;
  std::vector<double> abs_err;
};

/// Raised when the refinement budget runs out; carries the best estimate.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Estimate best)
      : std::runtime_error(what), best_(best) {}
  const Estimate& best() const noexcept { return best_; }

 private:
  Estimate best_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule; safe to call concurrently.
const GaussLegendreRule& gauss_legendre_rule(int order);

using Integrand1d = std::function<double(double)>;
using VectorIntegrand1d = std::function<void(double, std::span<double>)>;

Estimate integrate_1d(const Integrand1d& f, double a, double b,
                      const QuadratureSpec& spec = {});

/// Same as integrate_1d after the substitution x = a + (b - a) s(u) with
/// s(u) = u^3 (10 - 15 u + 6 u^2). s' vanishes to second order at both ends,
/// which turns algebraic endpoint behaviour (x - a)^k into u^{3k + 2}.
Estimate integrate_1d_graded(const Integrand1d& f, double a, double b,
                             const QuadratureSpec& spec = {});

/// Vector-valued integrand; each component must meet the tolerance.
/// `initial_panels` uniform panels seed the bisection.
VectorEstimate integrate_1d_vec(const VectorIntegrand1d& f, std::size_t dim, double a,
                                double b, const QuadratureSpec& spec = {},
                                int initial_panels = 1);

VectorEstimate integrate_1d_vec_graded(const VectorIntegrand1d& f, std::size_t dim,
                                       double a, double b, const QuadratureSpec& spec = {});

/// Location of the inner variable where the integrand loses smoothness, as a
/// function of the outer variable. Returning nullopt means no kink there.
using KinkCurve = std::function<std::optional<double>(double)>;

using Integrand2d = std::function<double(double outer, double inner)>;

/// Tensor-product integral over outer x inner. For each outer node the inner
/// integral is split at the kink (when it lies strictly inside the inner
/// range) and each smooth piece is integrated separately. The outer range is
/// additionally split at `outer_breaks`. All sub-integrals use the graded
/// substitution. The error is the root-sum-square of the outer piece errors
/// and the worst inner error times the outer length.
Estimate integrate_2d_split(const Integrand2d& f, Interval outer, Interval inner,
                            const KinkCurve& kink, const QuadratureSpec& spec = {},
                            std::span<const double> outer_breaks = {});

}  // namespace hs_sharp
