#include "hs_sharp/constants_closed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hs_sharp/special_fn.hpp"

namespace hs_sharp {

double c1_closed(Dim n) {
  const int d = n.value();
  return std::exp(std::log(2.0 * (d - 1)) - log_sphere_area(d));
}

double c2_closed(Dim n) {
  const int d = n.value();
  const double log_sq = std::log(static_cast<double>(d) * (d - 1)) - d * std::numbers::ln2 -
                        log_sphere_area(d);
  return std::exp(0.5 * log_sq);
}

double cinf_closed(Dim n) {
  const int d = n.value();
  const double log_value = std::log(4.0) + 0.5 * (d - 1) * std::log(d - 1.0) +
                           log_sphere_area(d - 1) - 0.5 * d * std::log(d) -
                           log_sphere_area(d);
  return std::exp(log_value);
}

std::optional<double> closed_form_constant(Dim n, const Exponent& p) {
  if (p.is_one()) return c1_closed(n);
  if (p.is_infinity()) return cinf_closed(n);
  if (p.p() == 2.0) return c2_closed(n);
  return std::nullopt;
}

MomentIntegrals moment_integrals(Dim n) {
  const int d = n.value();
  if (d < 3) throw std::domain_error("moment_integrals: requires n >= 3");
  // sqrt(pi) Gamma((n-2)/2) Gamma((n+1)/2) / (8 (n-1)!)
  const double log_common = 0.5 * std::log(std::numbers::pi) + log_gamma(0.5 * (d - 2)) +
                            log_gamma(0.5 * (d + 1)) - std::log(8.0) - log_gamma(d);
  const double common = std::exp(log_common);
  return {static_cast<double>(d) * (d - 1) * common, static_cast<double>(d) * common};
}

double log_p_n(double y, Dim n) {
  const int d = n.value();
  // s = sqrt(1+y^2) + y without cancellation for negative y
  const double h = std::hypot(1.0, y);
  const double s = y >= 0.0 ? y + h : 1.0 / (std::abs(y) + h);
  const double log_s = std::log(s);
  double log_den;
  const double t = std::log(d - 1.0) + 2.0 * log_s;  // ln((n-1) s^2)
  if (t > 30.0) {
    log_den = t + std::log1p(std::exp(-t));
  } else {
    log_den = std::log1p((d - 1.0) * s * s);
  }
  return (d - 1) * log_s - 0.5 * (d - 2) * log_den;
}

double p_n(double y, Dim n) { return std::exp(log_p_n(y, n)); }

double oscillation_constant(Dim n) { return 0.5 * cinf_closed(n); }

}  // namespace hs_sharp
