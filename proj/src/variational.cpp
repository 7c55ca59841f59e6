#include "hs_sharp/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/parallel.hpp"
#include "hs_sharp/special_fn.hpp"

namespace hs_sharp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr int kSupGridSize = 65;
constexpr double kSupBracketWidth = 1e-10;

struct Sample {
  double x = 0.0;
  double value = 0.0;
  double err = 0.0;
};

// Golden-section maximisation on [lo, hi]. Every evaluation is appended to
// `seen`; the final bracket's two interior samples are returned.
template <class F>
std::pair<Sample, Sample> golden_max(F&& f, double lo, double hi, double width,
                                     std::vector<Sample>& seen) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  Sample c = f(b - kInvPhi * (b - a));
  Sample d = f(a + kInvPhi * (b - a));
  seen.push_back(c);
  seen.push_back(d);
  while (b - a > width) {
    if (c.value >= d.value) {
      b = d.x;
      d = c;
      c = f(b - kInvPhi * (b - a));
      seen.push_back(c);
    } else {
      a = c.x;
      c = d;
      d = f(a + kInvPhi * (b - a));
      seen.push_back(d);
    }
  }
  return {c, d};
}

// Largest value; among samples equal to it within their combined error the
// smallest abscissa wins.
Sample pick_best(const std::vector<Sample>& samples) {
  const Sample* top = &samples.front();
  for (const Sample& s : samples) {
    if (s.value > top->value) top = &s;
  }
  const Sample* best = top;
  for (const Sample& s : samples) {
    if (s.x < best->x && s.value >= top->value - (s.err + top->err)) best = &s;
  }
  return *best;
}

void require_beta_phi(double phi, int n) {
  if (n < 2) throw std::domain_error("theta_star: dimension must be >= 2");
  if (!(phi >= 0.0) || !(phi <= kPi)) {
    throw std::domain_error("theta_star: phi must lie in [0, pi]");
  }
}

double pow_abs(double v, double q) {
  const double a = std::abs(v);
  if (q == 1.0) return a;
  if (q == 2.0) return a * a;
  return std::pow(a, q);
}

double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// The n = 2 hemisphere is the half circle sigma = (sin s, cos s); the inner
// product reduces to -cos(2s - beta) and t = cos s.
ConstantResult hemisphere_planar(const Exponent& p, const Direction& dir,
                                 const QuadratureSpec& spec) {
  const double q = p.conjugate();
  const double weight_power = p.is_infinity() ? 0.0 : 2.0 / (p.p() - 1.0);
  const double beta = dir.beta();
  const Integrand1d f = [&](double s) {
    const double w = weight_power == 0.0 ? 1.0 : std::pow(std::cos(s), weight_power);
    return pow_abs(std::cos(2.0 * s - beta), q) * w;
  };
  std::vector<double> cuts{-kHalfPi, 0.5 * beta - 0.25 * kPi, 0.5 * beta + 0.25 * kPi,
                           kHalfPi};
  std::sort(cuts.begin(), cuts.end());
  Estimate total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const Estimate piece = integrate_1d_graded(f, cuts[i], cuts[i + 1], spec);
    total.value += piece.value;
    total.abs_err += piece.abs_err;
  }
  const double prefactor = 2.0 / sphere_area(2);
  ConstantResult r;
  r.value = prefactor * std::pow(total.value, 1.0 / q);
  r.abs_err = r.value / (q * total.value) * total.abs_err;
  r.argmax_param = beta;
  r.argmax_beta = beta;
  r.method = Method::HemisphereQuadrature;
  return r;
}

}  // namespace

double kink_expression(double phi, double theta, const Direction& dir, Dim n) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int d = n.value();
  return (d * c * c - 1.0) * dir.cos_beta() + d * c * s * std::cos(phi) * dir.sin_beta();
}

double theta_star(double phi, const Direction& dir, Dim n) {
  const int d = n.value();
  require_beta_phi(phi, d);
  const double cb = dir.cos_beta();
  const double b = d * dir.sin_beta() * std::cos(phi);
  const double root = std::sqrt(b * b + 4.0 * (d - 1) * cb * cb);
  if (root == 0.0) {
    throw std::domain_error("theta_star: kink expression vanishes identically");
  }
  // Positive root of cos(beta) T^2 - b T - (n-1) cos(beta) = 0, T = tan(theta),
  // in whichever of its two algebraic forms avoids cancellation.
  if (b >= 0.0) return std::atan2(b + root, 2.0 * cb);
  return std::atan2(2.0 * (d - 1) * cb, root - b);
}

double alpha_from_beta(double beta, Dim n) {
  const int d = n.value();
  return d * std::tan(beta) / (2.0 * std::sqrt(d - 1.0));
}

double beta_from_alpha(double alpha, Dim n) {
  const int d = n.value();
  return std::atan(2.0 * std::sqrt(d - 1.0) * alpha / d);
}

C1DirectionDetail c1_direction_detail(Dim n, const Direction& dir) {
  const int d = n.value();
  const double cb = dir.cos_beta();
  const double sb = dir.sin_beta();
  auto h = [&](double t, int sign) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    return std::abs(cb * (1.0 - d * t * t) - sign * d * t * s * sb) * int_pow(t, d);
  };
  constexpr int kGrid = 4000;
  C1DirectionDetail best{0.0, 0.0, 1};
  double best_raw = -1.0;
  for (int sign : {1, -1}) {
    int best_i = 0;
    double local = -1.0;
    for (int i = 0; i <= kGrid; ++i) {
      const double v = h(static_cast<double>(i) / kGrid, sign);
      if (v > local) {
        local = v;
        best_i = i;
      }
    }
    double t_best = static_cast<double>(best_i) / kGrid;
    if (best_i > 0 && best_i < kGrid) {
      std::vector<Sample> seen;
      auto eval = [&](double t) { return Sample{t, h(t, sign), 0.0}; };
      golden_max(eval, static_cast<double>(best_i - 1) / kGrid,
                 static_cast<double>(best_i + 1) / kGrid, 1e-13, seen);
      for (const Sample& s : seen) {
        if (s.value > local) {
          local = s.value;
          t_best = s.x;
        }
      }
    }
    if (local > best_raw) {
      best_raw = local;
      best.argmax_t = t_best;
      best.sign = sign;
    }
  }
  best.value = 2.0 / sphere_area(d) * best_raw;
  return best;
}

double c1_direction(Dim n, const Direction& dir) { return c1_direction_detail(n, dir).value; }

ConstantResult cp_direction_hemisphere(Dim n, const Exponent& p, const Direction& dir,
                                       const QuadratureSpec& spec) {
  if (p.is_one()) {
    throw std::domain_error("cp_direction_hemisphere: p = 1 uses c1_direction");
  }
  const int d = n.value();
  if (d == 2) return hemisphere_planar(p, dir, spec);

  const double q = p.conjugate();
  const double weight_power = p.is_infinity() ? 0.0 : d / (p.p() - 1.0);
  const double cb = dir.cos_beta();
  const double sb = dir.sin_beta();

  // outer tau in [0, pi/2] with t = sin(tau); inner azimuth psi in [0, pi]
  auto expression = [=](double t, double s, double cos_psi) {
    return cb * (1.0 - d * t * t) - d * t * s * sb * cos_psi;
  };
  const Integrand2d f = [&](double tau, double psi) {
    const double t = std::sin(tau);
    const double s = std::cos(tau);
    const double weight = (weight_power == 0.0 ? 1.0 : std::pow(t, weight_power)) *
                          int_pow(s, d - 2) * int_pow(std::sin(psi), d - 3);
    return pow_abs(expression(t, s, std::cos(psi)), q) * weight;
  };
  const KinkCurve kink = [&](double tau) -> std::optional<double> {
    const double t = std::sin(tau);
    const double s = std::cos(tau);
    const double den = d * t * s * sb;
    if (den <= 0.0) return std::nullopt;
    const double ratio = cb * (1.0 - d * t * t) / den;
    if (!(std::abs(ratio) < 1.0)) return std::nullopt;
    return std::acos(ratio);
  };
  // The azimuthal kink enters or leaves [0, pi] where it crosses psi = 0 or
  // psi = pi; those are the polar kinks at phi = 0 and phi = pi.
  const std::array<double, 2> breaks{kHalfPi - theta_star(0.0, dir, n),
                                     kHalfPi - theta_star(kPi, dir, n)};
  const Estimate j = integrate_2d_split(f, {0.0, kHalfPi}, {0.0, kPi}, kink, spec, breaks);

  const double prefactor = 2.0 / sphere_area(d);
  ConstantResult r;
  r.value = prefactor * std::pow(sphere_area(d - 2) * j.value, 1.0 / q);
  r.abs_err = r.value / (q * j.value) * j.abs_err;
  r.argmax_param = dir.beta();
  r.argmax_beta = dir.beta();
  r.method = Method::HemisphereQuadrature;
  return r;
}

ConstantResult cp_direction_double_integral(Dim n, const Exponent& p, const Direction& dir,
                                            const QuadratureSpec& spec) {
  const int d = n.value();
  if (d < 3) throw std::domain_error("cp_direction_double_integral: requires n >= 3");
  if (!p.is_finite()) {
    throw std::domain_error("cp_direction_double_integral: requires 1 < p < inf");
  }
  if (p.p() < kMinDoubleIntegralExponent) {
    throw std::domain_error("cp_direction_double_integral: refused for p < " +
                            format_double(kMinDoubleIntegralExponent));
  }
  const double q = p.conjugate();
  const double weight_power = d / (p.p() - 1.0);
  const Integrand2d f = [&](double phi, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double a = kink_expression(phi, theta, dir, n);
    return pow_abs(a, q) * std::pow(c, weight_power) * int_pow(s, d - 2) *
           int_pow(std::sin(phi), d - 3);
  };
  const KinkCurve kink = [&](double phi) -> std::optional<double> {
    return theta_star(phi, dir, n);
  };
  const std::array<double, 1> breaks{kHalfPi};
  const Estimate j = integrate_2d_split(f, {0.0, kPi}, {0.0, kHalfPi}, kink, spec, breaks);

  const double prefactor = 2.0 * std::pow(sphere_area(d - 2), 1.0 / q) / sphere_area(d);
  ConstantResult r;
  r.value = prefactor * std::pow(j.value, 1.0 / q);
  r.abs_err = r.value / (q * j.value) * j.abs_err;
  r.argmax_param = dir.beta();
  r.argmax_beta = dir.beta();
  r.method = Method::GammaSup;
  return r;
}

Estimate cinf_alpha_integral(Dim n, double alpha, const QuadratureSpec& spec) {
  const int d = n.value();
  if (d < 3) throw std::domain_error("cinf_alpha_integral: requires n >= 3");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("cinf_alpha_integral: alpha must be finite and >= 0");
  }
  const Integrand1d f = [&](double phi) {
    return p_n(alpha * std::cos(phi), n) * int_pow(std::sin(phi), d - 3);
  };
  const Estimate left = integrate_1d_graded(f, 0.0, kHalfPi, spec);
  const Estimate right = integrate_1d_graded(f, kHalfPi, kPi, spec);
  const double prefactor =
      4.0 * sphere_area(d - 2) * std::pow(d - 1.0, 0.5 * (d - 1)) /
      (sphere_area(d) * std::sqrt(static_cast<double>(d) * d + 4.0 * (d - 1) * alpha * alpha));
  return {prefactor * (left.value + right.value), prefactor * (left.abs_err + right.abs_err)};
}

Estimate cinf_alpha_route(Dim n, const Direction& dir, const QuadratureSpec& spec) {
  const int d = n.value();
  if (d < 3) throw std::domain_error("cinf_alpha_route: requires n >= 3");
  // sqrt(n^2 + 4(n-1) alpha^2) = n / cos(beta); cos(beta) is folded into P_n
  // in log space so the tangential end stays finite.
  const double cb = dir.cos_beta();
  const double alpha = alpha_from_beta(dir.beta(), n);
  const double log_cb = std::log(cb);
  const Integrand1d f = [&](double phi) {
    return std::exp(log_cb + log_p_n(alpha * std::cos(phi), n)) *
           int_pow(std::sin(phi), d - 3);
  };
  const Estimate left = integrate_1d_graded(f, 0.0, kHalfPi, spec);
  const Estimate right = integrate_1d_graded(f, kHalfPi, kPi, spec);
  const double prefactor =
      4.0 * sphere_area(d - 2) * std::pow(d - 1.0, 0.5 * (d - 1)) / (d * sphere_area(d));
  return {prefactor * (left.value + right.value), prefactor * (left.abs_err + right.abs_err)};
}

ConstantResult cp_direction(Dim n, const Exponent& p, const Direction& dir,
                            const QuadratureSpec& spec) {
  const int d = n.value();
  if (p.is_one()) {
    ConstantResult r;
    r.value = c1_direction(n, dir);
    r.abs_err = 0.0;
    r.argmax_param = dir.beta();
    r.argmax_beta = dir.beta();
    r.method = Method::DirectionScan;
    return r;
  }
  if (p.is_infinity()) {
    if (d == 2) return cp_direction_hemisphere(n, p, dir, spec);
    const Estimate e = cinf_alpha_route(n, dir, spec);
    ConstantResult r;
    r.value = e.value;
    r.abs_err = e.abs_err;
    r.argmax_param = alpha_from_beta(dir.beta(), n);
    r.argmax_beta = dir.beta();
    r.method = Method::AlphaSup;
    return r;
  }
  if (d == 2) return cp_direction_hemisphere(n, p, dir, spec);
  if (p.p() < kMinDoubleIntegralExponent) {
    ConstantResult r = cp_direction_hemisphere(n, p, dir, spec);
    r.warning = "p < " + format_double(kMinDoubleIntegralExponent) +
                ": double-integral route refused, hemisphere route used";
    return r;
  }
  return cp_direction_double_integral(n, p, dir, spec);
}

ConstantResult sup_over_direction(Dim n, const Exponent& p, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<ConstantResult> grid(kSupGridSize);
  std::vector<double> betas(kSupGridSize);
  for (int i = 0; i < kSupGridSize; ++i) {
    betas[i] = (i + 1 == kSupGridSize) ? kHalfPi : kHalfPi * i / (kSupGridSize - 1);
  }
  parallel_for(kSupGridSize, [&](std::size_t i) {
    grid[i] = cp_direction(n, p, Direction::from_beta(betas[i]), spec);
  });

  std::vector<Sample> samples;
  samples.reserve(kSupGridSize + 64);
  for (int i = 0; i < kSupGridSize; ++i) {
    samples.push_back({betas[i], grid[i].value, grid[i].abs_err});
  }
  const Sample grid_best = pick_best(samples);
  const auto it = std::find(betas.begin(), betas.end(), grid_best.x);
  const std::size_t idx = static_cast<std::size_t>(it - betas.begin());
  const double lo = idx == 0 ? 0.0 : betas[idx - 1];
  const double hi = idx + 1 == betas.size() ? kHalfPi : betas[idx + 1];

  auto eval = [&](double beta) {
    const ConstantResult r = cp_direction(n, p, Direction::from_beta(beta), spec);
    return Sample{beta, r.value, r.abs_err};
  };
  const auto [c, d] = golden_max(eval, lo, hi, kSupBracketWidth, samples);
  const Sample best = pick_best(samples);

  ConstantResult result = cp_direction(n, p, Direction::from_beta(best.x), spec);
  result.abs_err = best.err + std::abs(c.value - d.value);
  result.argmax_beta = best.x;
  result.argmax_param =
      result.method == Method::AlphaSup ? alpha_from_beta(best.x, n) : best.x;
  for (const ConstantResult& g : grid) {
    if (!g.warning.empty()) result.warning = g.warning;
  }
  return result;
}

std::vector<ProfilePoint> direction_profile(Dim n, const Exponent& p, int count,
                                            const QuadratureSpec& spec) {
  if (count < 2) throw std::invalid_argument("direction_profile: count must be >= 2");
  std::vector<ProfilePoint> out(count);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const double beta =
        (static_cast<int>(i) + 1 == count) ? kHalfPi : kHalfPi * static_cast<double>(i) / (count - 1);
    const ConstantResult r = cp_direction(n, p, Direction::from_beta(beta), spec);
    out[i] = {beta, r.value, r.abs_err};
  });
  return out;
}

}  // namespace hs_sharp
