#include "hs_sharp/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hs_sharp {

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be positive and finite, got " +
                            std::to_string(x));
  }
#if defined(__GLIBC__)
  // Reentrant variant: std::lgamma writes the global signgam.
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_sphere_area(int n) {
  if (n < 1) {
    throw std::domain_error("sphere_area: dimension must be >= 1, got " + std::to_string(n));
  }
  const double half = 0.5 * n;
  return std::numbers::ln2 + half * std::log(std::numbers::pi) - log_gamma(half);
}

double sphere_area(int n) { return std::exp(log_sphere_area(n)); }

double sine_moment(int k) {
  if (k < 0) {
    throw std::domain_error("sine_moment: k must be nonnegative, got " + std::to_string(k));
  }
  return std::exp(0.5 * std::log(std::numbers::pi) + log_gamma(0.5 * (k + 1)) -
                  log_gamma(0.5 * (k + 2)));
}

}  // namespace hs_sharp
