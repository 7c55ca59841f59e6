#include "hs_sharp/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/special_fn.hpp"

namespace hs_sharp {

namespace {

void require_lemma_domain(double x, double mu) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("lemma: x must be >= 0");
  if (!(mu >= 1.0) || !std::isfinite(mu)) throw std::domain_error("lemma: mu must be >= 1");
}

// Gap for 0 <= x <= 1 written as
//   (T1 - 1) + x^2 (B^{mu-1} - 1) - (2mu+1)(mu-1)/(mu+1)^2 (1-x)^2
// with T1 = (1 + (1-x)/(mu+x))^{mu-1}, B = 1 + (x-1)/(1+mu x).
double lemma_gap_unit(double x, double mu) {
  const double m1 = mu - 1.0;
  const double first = std::expm1(m1 * std::log1p((1.0 - x) / (mu + x)));
  double second = 0.0;
  if (x > 0.0 && m1 > 0.0) {
    second = x * x * std::expm1(m1 * std::log1p((x - 1.0) / (1.0 + mu * x)));
  }
  const double third = -(2.0 * mu + 1.0) * m1 / ((mu + 1.0) * (mu + 1.0)) * (1.0 - x) * (1.0 - x);
  return first + second + third;
}

// Near x = 1: with m = mu+1, e = 1-x,
//   (mu+1)^2 G = sum_{k>=3} C(m,k) e^k [(mu+x)^{2-k} + (-1)^k (1+mu x)^{2-k}],
// the binomial expansion of (mu+1)^m around mu+x and 1+mu x whose k <= 2 terms
// cancel the right-hand side exactly. Used for 1/2 <= x <= 2, where |e|/(mu+x)
// and |e|/(1+mu x) stay at or below 1/2. Avoiding 1/x keeps e exact for x > 1.
double lemma_gap_series(double x, double mu) {
  const double m = mu + 1.0;
  const double e = 1.0 - x;
  const double a = mu + x;
  const double b = 1.0 + mu * x;
  double coeff = m * (m - 1.0) * (m - 2.0) / 6.0;
  double sum = 0.0;
  for (int k = 3; k < 400 && coeff != 0.0; ++k) {
    double bracket;
    if (k % 2 == 0) {
      bracket = std::pow(a, 2 - k) + std::pow(b, 2 - k);
    } else {
      bracket = std::pow(b, 2 - k) * std::expm1((2 - k) * std::log1p((mu - 1.0) * e / b));
    }
    const double term = coeff * std::pow(e, k) * bracket;
    sum += term;
    if (k > m + 3.0 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    coeff *= (m - k) / (k + 1.0);
  }
  return sum / (m * m);
}

bool near_one(double v) { return std::abs(v - 1.0) <= 1e-3; }

void record(ScanReport& report, const GapPoint& pt) {
  if (report.points == 0 || pt.gap > report.max_gap.gap) report.max_gap = pt;
  ++report.points;
  if (pt.gap > report.tolerance) ++report.violations;
  if (std::abs(pt.rel_gap) <= report.margin) {
    report.equality_cases.push_back(pt);
    if (!pt.stated_case) ++report.unexpected_equalities;
  }
}

}  // namespace

double lemma_rhs(double x, double mu) {
  return 2.0 * x + mu * (3.0 * mu + 1.0) / ((mu + 1.0) * (mu + 1.0)) * (1.0 - x) * (1.0 - x);
}

double lemma_gap(double x, double mu) {
  require_lemma_domain(x, mu);
  if (x >= 0.5 && x <= 2.0) return lemma_gap_series(x, mu);
  if (x < 0.5) return lemma_gap_unit(x, mu);
  return x * x * lemma_gap_unit(1.0 / x, mu);
}

double lemma_gap_direct(double x, double mu) {
  require_lemma_domain(x, mu);
  const double m1 = mu - 1.0;
  const double log_base = std::log(mu + 1.0);
  const double first = std::exp(m1 * (log_base - std::log(mu + x)));
  double second = 0.0;
  if (x > 0.0) {
    second = std::exp(m1 * (log_base - std::log1p(mu * x)) + (mu + 1.0) * std::log(x));
  }
  return first + second - lemma_rhs(x, mu);
}

double corollary1_rhs(double y, Dim n) {
  const int d = n.value();
  return (2.0 * d * d + 4.0 * (d - 1) * (3 * d - 2) * y * y) / std::pow(d, d);
}

double corollary1_gap(double y, Dim n) {
  const int d = n.value();
  // x = (sqrt(1+y^2) - |y|)^2 maps the corollary onto the lemma with mu = n-1:
  //   gap = n^{2-n} lemma_gap(x, n-1) / x.
  const double a = std::abs(y);
  const double s = a + std::hypot(1.0, a);
  const double x = 1.0 / (s * s);
  return std::pow(d, 2 - d) * lemma_gap(x, d - 1.0) / x;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0)));
}

namespace {

// sum_{k=3}^{m} C(m,k) r^k, the binomial tail of (1+r)^m beyond second order.
double binomial_tail(int m, double r) {
  if (std::abs(r) >= 0.25) {
    return std::pow(1.0 + r, m) - 1.0 - m * r - 0.5 * m * (m - 1.0) * r * r;
  }
  double sum = 0.0;
  for (int k = m; k >= 3; --k) sum += binomial(m, k) * std::pow(r, k);
  return sum;
}

}  // namespace

double corollary2_gap(double x, Dim n) {
  if (!(x >= 0.0)) throw std::domain_error("corollary2_gap: x must be >= 0");
  const int d = n.value();
  const double u = 1.0 - x;
  const double a = d + x;
  const double b = 1.0 + d * x;
  if (std::abs(u) >= 0.25 * std::min(a, b)) {
    // Far from x = 1 the terms grow like C(n+1,k) and cancel; each half of the
    // sum is a*a times a binomial tail, summed in closed form where r is large.
    return a * a * binomial_tail(d + 1, u / a) + b * b * binomial_tail(d + 1, -u / b);
  }
  double sum = 0.0;
  for (int k = 3; k <= d + 1; ++k) {
    double bracket;
    if (k % 2 == 0) {
      bracket = std::pow(a, 2 - k) + std::pow(b, 2 - k);
    } else {
      // a - b = (n-1)(1-x); keeps the odd brackets accurate near x = 1
      bracket = std::pow(b, 2 - k) * std::expm1((2 - k) * std::log1p((d - 1) * u / b));
    }
    sum += binomial(d + 1, k) * bracket * std::pow(u, k);
  }
  return sum;
}

ScanReport scan_lemma(const std::vector<double>& xs, const std::vector<double>& mus,
                      double tolerance, double margin) {
  ScanReport report;
  report.tolerance = tolerance;
  report.margin = margin;
  for (double mu : mus) {
    for (double x : xs) {
      const double gap = lemma_gap(x, mu);
      const double rhs = lemma_rhs(x, mu);
      record(report, {x, mu, gap, gap / std::abs(rhs), near_one(x) || near_one(mu)});
    }
  }
  return report;
}

ScanReport scan_corollary1(const std::vector<double>& ys, const std::vector<int>& ns,
                           double tolerance, double margin) {
  ScanReport report;
  report.tolerance = tolerance;
  report.margin = margin;
  for (int n : ns) {
    const Dim dim(n);
    for (double y : ys) {
      const double gap = corollary1_gap(y, dim);
      // y <= 5e-4 corresponds to |x - 1| <= 1e-3 in the lemma variable
      record(report, {y, static_cast<double>(n), gap, gap / corollary1_rhs(y, dim),
                      std::abs(y) <= 5e-4 || n == 2});
    }
  }
  return report;
}

ScanReport scan_corollary2(const std::vector<double>& xs, const std::vector<int>& ns,
                           double tolerance, double margin) {
  ScanReport report;
  report.tolerance = tolerance;
  report.margin = margin;
  for (int n : ns) {
    const Dim dim(n);
    for (double x : xs) {
      const double gap = corollary2_gap(x, dim);
      // (n+1)^2 times the lemma right-hand side at mu = n
      const double scale = (n + 1.0) * (n + 1.0) * lemma_rhs(x, n);
      record(report, {x, static_cast<double>(n), gap, gap / scale, near_one(x)});
    }
  }
  return report;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2 || !(lo <= hi)) throw std::invalid_argument("linspace: need count >= 2, lo <= hi");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0)) throw std::invalid_argument("logspace: lo must be positive");
  std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
  for (double& v : out) v = std::exp(v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_lemma_x_grid(double hi) {
  std::vector<double> xs = linspace(0.0, hi, 5000);
  const std::vector<double> logs = logspace(1e-3, hi, 5000);
  xs.insert(xs.end(), logs.begin(), logs.end());
  xs.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace hs_sharp
