#pragma once

// Executable forms of the algebraic inequality
//
//   ((mu+1)/(mu+x))^{mu-1} + ((mu+1)/(1+mu x))^{mu-1} x^{mu+1}
//       <= 2x + mu(3mu+1)/(mu+1)^2 (1-x)^2,      x >= 0, mu >= 1,
//
// and its two corollaries, as signed gaps (left side minus right side) that
// must be <= 0, plus grid scans with equality-case detection.

#include <cstddef>
#include <vector>

#include "hs_sharp/types.hpp"

namespace hs_sharp {

/// Left minus right side. Evaluated in a cancellation-free form that is
/// exactly zero at x = 1 and at mu = 1; for x > 1 via G(x) = x^2 G(1/x).
double lemma_gap(double x, double mu);

/// The same gap from the literal formula (power terms in log space).
/// No reflection, so it is an independent check of lemma_gap.
double lemma_gap_direct(double x, double mu);

/// 2x + mu(3mu+1)/(mu+1)^2 (1-x)^2
double lemma_rhs(double x, double mu);

/// P_n(y)^2 + P_n(-y)^2 - (2n^2 + 4(n-1)(3n-2)y^2) / n^n. Even in y.
double corollary1_gap(double y, Dim n);
double corollary1_rhs(double y, Dim n);

/// sum_{k=3}^{n+1} C(n+1,k) [(n+x)^{2-k} + (-1)^k (1+nx)^{2-k}] (1-x)^k
double corollary2_gap(double x, Dim n);

/// Binomial coefficient through log_gamma.
double binomial(int n, int k);

struct GapPoint {
  double x = 0.0;      ///< x (lemma, corollary 2) or y (corollary 1)
  double param = 0.0;  ///< mu (lemma) or n (corollaries)
  double gap = 0.0;
  double rel_gap = 0.0;       ///< gap / |right-hand side|
  bool stated_case = false;   ///< lies on (or within 1e-3 of) an equality case
};

struct ScanReport {
  std::size_t points = 0;
  GapPoint max_gap;                     ///< largest signed gap on the grid
  std::vector<GapPoint> equality_cases; ///< |rel_gap| <= margin
  std::size_t violations = 0;           ///< gap > tolerance
  std::size_t unexpected_equalities = 0;
  double tolerance = 0.0;
  double margin = 0.0;

  bool ok() const noexcept { return violations == 0 && unexpected_equalities == 0; }
};

inline constexpr double kGapTolerance = 1e-12;
inline constexpr double kEqualityMargin = 1e-15;

/// Equality cases: x = 1 or mu = 1.
ScanReport scan_lemma(const std::vector<double>& xs, const std::vector<double>& mus,
                      double tolerance = kGapTolerance, double margin = kEqualityMargin);

/// Equality cases: y = 0 or n = 2.
ScanReport scan_corollary1(const std::vector<double>& ys, const std::vector<int>& ns,
                           double tolerance = kGapTolerance, double margin = kEqualityMargin);

/// Equality case: x = 1.
ScanReport scan_corollary2(const std::vector<double>& xs, const std::vector<int>& ns,
                           double tolerance = kGapTolerance, double margin = kEqualityMargin);

std::vector<double> linspace(double lo, double hi, int count);
std::vector<double> logspace(double lo, double hi, int count);

/// 5000 uniform points on [0, hi] merged with 5000 log-spaced points on
/// [1e-3, hi] and the point x = 1.
std::vector<double> default_lemma_x_grid(double hi = 100.0);

}  // namespace hs_sharp
