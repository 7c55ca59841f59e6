#include "hs_sharp/poisson_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hs_sharp/constants_closed.hpp"
#include "hs_sharp/special_fn.hpp"
#include "hs_sharp/variational.hpp"

namespace hs_sharp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double distance_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

bool inside(const Ball& ball, std::span<const double> y) {
  return distance_sq(y, ball.center) <= ball.radius * ball.radius;
}

// Positive roots of a r^2 + b r + c, robust when a is tiny or zero.
void positive_roots(double a, double b, double c, std::vector<double>& out) {
  if (a == 0.0) {
    if (b != 0.0 && -c / b > 0.0) out.push_back(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) return;
  for (double r : {q / a, c / q}) {
    if (r > 0.0 && std::isfinite(r)) out.push_back(r);
  }
}

void ball_ray_breaks(const Ball& ball, std::span<const double> origin,
                     std::span<const double> dir, std::vector<double>& out) {
  double w = 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const double c = ball.center[i] - origin[i];
    w += dir[i] * c;
    d2 += c * c;
  }
  positive_roots(1.0, -2.0 * w, d2 - ball.radius * ball.radius, out);
}

using RayKernel =
    std::function<void(double theta, std::span<const double> omega, double fval,
                       std::span<double> out)>;

// Integral over S^{m-1} x [0, pi/2) of kernel(theta, omega, f(origin +
// height tan(theta) omega)), m = origin.size(), with the unit-sphere measure.
class RayIntegrator {
 public:
  RayIntegrator(const BoundaryData& f, std::span<const double> origin, double height,
                std::size_t dim, RayKernel kernel, double theta_max)
      : f_(f),
        origin_(origin.begin(), origin.end()),
        height_(height),
        dim_(dim),
        kernel_(std::move(kernel)),
        theta_max_(theta_max),
        m_(static_cast<int>(origin.size())),
        omega_(origin.size()),
        point_(origin.size()),
        inner_err_(dim, 0.0) {
    if (f_.support) balls_.push_back(*f_.support);
    balls_.insert(balls_.end(), f_.focus.begin(), f_.focus.end());
  }

  VectorEstimate run(const QuadratureSpec& spec) {
    VectorEstimate total{std::vector<double>(dim_, 0.0), std::vector<double>(dim_, 0.0)};
    if (m_ == 1) {
      for (double s : {1.0, -1.0}) {
        omega_[0] = s;
        add(total, inner(spec));
      }
    } else {
      total = level(0, 1.0, spec);
    }
    double measure = m_ == 1 ? 2.0 : sphere_area(m_);
    for (std::size_t k = 0; k < dim_; ++k) total.abs_err[k] += inner_err_[k] * measure;
    return total;
  }

 private:
  static void add(VectorEstimate& acc, const VectorEstimate& piece) {
    for (std::size_t k = 0; k < acc.value.size(); ++k) {
      acc.value[k] += piece.value[k];
      acc.abs_err[k] += piece.abs_err[k];
    }
  }

  static QuadratureSpec tighter(const QuadratureSpec& spec) {
    QuadratureSpec s = spec;
    s.abs_tol = spec.abs_tol * 0.1;
    s.rel_tol = std::max(spec.rel_tol * 0.1, 1e-14);
    return s;
  }

  VectorEstimate inner(const QuadratureSpec& spec) {
    breaks_.clear();
    for (const Ball& b : balls_) ball_ray_breaks(b, origin_, omega_, breaks_);
    if (f_.ray_breaks) f_.ray_breaks(origin_, omega_, breaks_);
    std::vector<double> thetas{0.0};
    for (double r : breaks_) {
      const double t = std::atan(r / height_);
      if (t > 0.0 && t < theta_max_) thetas.push_back(t);
    }
    thetas.push_back(theta_max_);
    std::sort(thetas.begin(), thetas.end());

    VectorEstimate acc{std::vector<double>(dim_, 0.0), std::vector<double>(dim_, 0.0)};
    auto integrand = [&](double theta, std::span<double> out) {
      const double r = height_ * std::tan(theta);
      for (int i = 0; i < m_; ++i) point_[i] = origin_[i] + r * omega_[i];
      kernel_(theta, omega_, f_.eval(point_), out);
    };
    for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
      const double a = thetas[i];
      const double b = thetas[i + 1];
      if (b - a <= 1e-14) continue;
      if (f_.support || f_.zero_outside_focus) {
        const double r = height_ * std::tan(0.5 * (a + b));
        for (int k = 0; k < m_; ++k) point_[k] = origin_[k] + r * omega_[k];
        if (f_.support && !inside(*f_.support, point_)) continue;
        if (f_.zero_outside_focus &&
            std::none_of(f_.focus.begin(), f_.focus.end(),
                         [&](const Ball& ball) { return inside(ball, point_); })) {
          continue;
        }
      }
      add(acc, integrate_1d_vec_graded(integrand, dim_, a, b, spec));
    }
    for (std::size_t k = 0; k < dim_; ++k) inner_err_[k] = std::max(inner_err_[k], acc.abs_err[k]);
    return acc;
  }

  // Angles where rays start or stop meeting a ball, at hyperspherical level j
  // with omega_[0..j-1] fixed and P = product of the sines so far.
  void cone_breaks(int j, double P, bool last, std::vector<double>& out) const {
    for (const Ball& ball : balls_) {
      std::vector<double> c(m_);
      for (int i = 0; i < m_; ++i) c[i] = ball.center[i] - origin_[i];
      const double dist = std::sqrt(dot(c, c));
      if (dist <= ball.radius || P <= 1e-300) continue;
      for (double& v : c) v /= dist;
      const double cos_delta = std::sqrt(1.0 - (ball.radius / dist) * (ball.radius / dist));
      double prefix = 0.0;
      for (int i = 0; i < j; ++i) prefix += omega_[i] * c[i];
      const double bound = (cos_delta - prefix) / P;
      double psi0;
      double amp;
      if (last) {
        psi0 = std::atan2(c[j + 1], c[j]);
        amp = std::hypot(c[j], c[j + 1]);
      } else {
        double rest = 0.0;
        for (int i = j + 1; i < m_; ++i) rest += c[i] * c[i];
        rest = std::sqrt(rest);
        psi0 = std::atan2(rest, c[j]);
        amp = std::hypot(c[j], rest);
      }
      if (amp == 0.0) continue;
      const double ratio = bound / amp;
      if (!(std::abs(ratio) < 1.0)) continue;
      const double half = std::acos(ratio);
      for (double psi : {psi0 - half, psi0 + half}) {
        if (last) {
          psi = std::fmod(psi + 4.0 * kPi, 2.0 * kPi);
          out.push_back(psi);
        } else if (psi > 0.0 && psi < kPi) {
          out.push_back(psi);
        }
      }
    }
  }

  VectorEstimate level(int j, double P, const QuadratureSpec& spec) {
    const bool last = (j == m_ - 2);
    const double hi = last ? 2.0 * kPi : kPi;
    // keeps omega_1 = 0 as a cut on every level
    const int panels = last ? 4 : 2;
    std::vector<double> cuts;
    for (int i = 0; i <= panels; ++i) cuts.push_back(hi * i / panels);
    cone_breaks(j, P, last, cuts);
    std::sort(cuts.begin(), cuts.end());

    const QuadratureSpec child = tighter(spec);
    const int weight_power = m_ - 2 - j;
    auto integrand = [&, j, P, last, weight_power](double psi, std::span<double> out) {
      const double c = std::cos(psi);
      const double s = std::sin(psi);
      omega_[j] = P * c;
      VectorEstimate v;
      if (last) {
        omega_[j + 1] = P * s;
        v = inner(child);
      } else {
        v = level(j + 1, P * s, child);
      }
      const double w = weight_power > 0 ? std::pow(s, weight_power) : 1.0;
      for (std::size_t k = 0; k < dim_; ++k) out[k] = w * v.value[k];
    };

    VectorEstimate acc{std::vector<double>(dim_, 0.0), std::vector<double>(dim_, 0.0)};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] <= 1e-13) continue;
      add(acc, integrate_1d_vec_graded(integrand, dim_, cuts[i], cuts[i + 1], spec));
    }
    return acc;
  }

  const BoundaryData& f_;
  std::vector<double> origin_;
  double height_;
  std::size_t dim_;
  RayKernel kernel_;
  double theta_max_;
  int m_;
  std::vector<double> omega_;
  std::vector<double> point_;
  std::vector<double> inner_err_;
  std::vector<Ball> balls_;
  std::vector<double> breaks_;
};

void require_data(const BoundaryData& f) {
  if (!f.eval) throw std::invalid_argument("boundary data has no evaluator");
}

double bump_profile(double r2) {
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

}  // namespace

void HalfSpacePoint::validate(Dim n) const {
  if (!(x_n > 0.0) || !std::isfinite(x_n)) throw std::invalid_argument("x_n must be positive");
  if (static_cast<int>(x_prime.size()) != n.value() - 1) {
    throw std::invalid_argument("x_prime must have n-1 coordinates");
  }
}

BoundaryData constant_data(double c) {
  BoundaryData f;
  f.eval = [c](std::span<const double>) { return c; };
  f.known_norm = [c](const Exponent& p) -> std::optional<double> {
    if (p.is_infinity() || c == 0.0) return std::abs(c);
    return std::numeric_limits<double>::infinity();
  };
  f.sup = c;
  f.inf = c;
  return f;
}

BoundaryData ball_indicator_data(Ball ball, double c) {
  const int m = static_cast<int>(ball.center.size());
  if (m < 1 || !(ball.radius > 0.0)) throw std::invalid_argument("ball_indicator_data: bad ball");
  BoundaryData f;
  f.eval = [ball, c](std::span<const double> y) { return inside(ball, y) ? c : 0.0; };
  const double volume = (m == 1 ? 2.0 : sphere_area(m)) * std::pow(ball.radius, m) / m;
  f.known_norm = [c, volume](const Exponent& p) -> std::optional<double> {
    if (p.is_infinity()) return std::abs(c);
    return std::abs(c) * std::pow(volume, 1.0 / p.p());
  };
  f.support = ball;
  f.sup = std::max(c, 0.0);
  f.inf = std::min(c, 0.0);
  f.scale = ball.radius;
  return f;
}

double boundary_norm(const BoundaryData& f, const Exponent& p, Dim n,
                     const QuadratureSpec& spec) {
  require_data(f);
  if (f.known_norm) {
    if (auto v = f.known_norm(p)) return *v;
  }
  if (p.is_infinity()) throw std::invalid_argument("sup norm must be declared");
  if (!f.support) throw std::invalid_argument("numerical norm needs a bounded support");
  const int d = n.value();
  const double pp = p.p();
  const double h = f.scale;
  const double theta_max = std::atan(f.support->radius / h);
  RayKernel kernel = [d, pp, h](double theta, std::span<const double>, double fval,
                                std::span<double> out) {
    // dy' = h^{n-1} sin^{n-2} / cos^n dtheta domega
    const double c = std::cos(theta);
    out[0] = std::pow(std::abs(fval), pp) * std::pow(h, d - 1) *
             std::pow(std::sin(theta), d - 2) / std::pow(c, d);
  };
  RayIntegrator integ(f, f.support->center, h, 1, kernel, theta_max);
  const VectorEstimate e = integ.run(spec);
  return std::pow(e.value[0], 1.0 / pp);
}

Estimate poisson_eval(const BoundaryData& f, const HalfSpacePoint& x, Dim n,
                      const QuadratureSpec& spec) {
  require_data(f);
  x.validate(n);
  const int d = n.value();
  RayKernel kernel = [d](double theta, std::span<const double>, double fval,
                         std::span<double> out) {
    out[0] = (d == 2 ? 1.0 : std::pow(std::sin(theta), d - 2)) * fval;
  };
  RayIntegrator integ(f, x.x_prime, x.x_n, 1, kernel, kHalfPi);
  const VectorEstimate e = integ.run(spec);
  const double pref = 2.0 / sphere_area(d);
  return {pref * e.value[0], pref * e.abs_err[0]};
}

VectorEstimate poisson_gradient(const BoundaryData& f, const HalfSpacePoint& x, Dim n,
                                const QuadratureSpec& spec) {
  require_data(f);
  x.validate(n);
  const int d = n.value();
  const std::size_t dim = static_cast<std::size_t>(d);
  RayKernel kernel = [d](double theta, std::span<const double> omega, double fval,
                         std::span<double> out) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double w = (d == 2 ? 1.0 : std::pow(s, d - 2)) * fval;
    const double tangential = w * d * s * c;
    for (int i = 0; i < d - 1; ++i) out[i] = tangential * omega[i];
    out[d - 1] = w * (1.0 - d * c * c);
  };
  RayIntegrator integ(f, x.x_prime, x.x_n, dim, kernel, kHalfPi);
  VectorEstimate e = integ.run(spec);
  const double pref = 2.0 / (sphere_area(d) * x.x_n);
  for (std::size_t k = 0; k < dim; ++k) {
    e.value[k] *= pref;
    e.abs_err[k] *= pref;
  }
  return e;
}

std::vector<double> direction_vector(const Direction& dir, Dim n) {
  std::vector<double> z(n.value(), 0.0);
  z[0] = dir.sin_beta();
  z[n.value() - 1] = dir.cos_beta();
  return z;
}

double directional_kernel(std::span<const double> y_prime, const HalfSpacePoint& x,
                          const Direction& dir, Dim n) {
  const int d = n.value();
  const double xn = x.x_n;
  const double rho2 = distance_sq(y_prime, x.x_prime);
  const double d1 = y_prime[0] - x.x_prime[0];
  const double dist2 = rho2 + xn * xn;
  // (2/omega_n) [cos b (rho^2 - (n-1) x_n^2) + n x_n sin b d_1] / |y - x|^{n+2}
  const double numer = dir.cos_beta() * (rho2 - (d - 1) * xn * xn) + d * xn * dir.sin_beta() * d1;
  return 2.0 / sphere_area(d) * numer / std::pow(dist2, 0.5 * (d + 2));
}

BoundaryData extremal_data(const Exponent& p, const HalfSpacePoint& x, const Direction& dir,
                           Dim n, double truncation_radius, double m) {
  x.validate(n);
  if (!(truncation_radius > 10.0 * x.x_n)) {
    throw std::invalid_argument("truncation radius must exceed 10 x_n");
  }
  const int d = n.value();
  BoundaryData f;
  const Ball ball{x.x_prime, truncation_radius};

  if (p.is_one()) {
    if (!(m >= 1.0)) throw std::invalid_argument("bump scale m must be >= 1");
    const C1DirectionDetail detail = c1_direction_detail(n, dir);
    const double offset = x.x_n * std::tan(std::acos(std::clamp(detail.argmax_t, 0.0, 1.0)));
    std::vector<double> best = x.x_prime;
    double best_k = 0.0;
    for (double s : {1.0, -1.0}) {
      std::vector<double> y = x.x_prime;
      y[0] += s * offset;
      const double k = directional_kernel(y, x, dir, n);
      if (std::abs(k) > std::abs(best_k)) {
        best_k = k;
        best = y;
      }
    }
    const double sign = best_k < 0.0 ? -1.0 : 1.0;
    const double rho = x.x_n / m;
    const double mass = (d == 2 ? 2.0 : sphere_area(d - 1)) * std::pow(rho, d - 1) *
                        bump_radial_moment(n, 1.0);
    const double height = sign / mass;
    const Ball bump_ball{best, rho};
    f.eval = [bump_ball, height](std::span<const double> y) {
      return height * bump_profile(distance_sq(y, bump_ball.center) /
                                   (bump_ball.radius * bump_ball.radius));
    };
    f.known_norm = [height](const Exponent& q) -> std::optional<double> {
      if (q.is_one()) return 1.0;
      if (q.is_infinity()) return std::abs(height);
      return std::nullopt;
    };
    f.support = bump_ball;
    f.sup = std::max(height, 0.0);
    f.inf = std::min(height, 0.0);
    f.scale = rho;
    return f;
  }

  const double xn = x.x_n;
  const double cb = dir.cos_beta();
  const double sb = dir.sin_beta();
  const std::vector<double> xp = x.x_prime;
  // Zero set of K_z: cos b (|y'-x'|^2 - (n-1) x_n^2) + n x_n sin b (y'-x')_1 = 0.
  f.ray_breaks = [xp, xn, cb, sb, d](std::span<const double> origin,
                                     std::span<const double> dir_vec, std::vector<double>& out) {
    double e2 = 0.0;
    double ew = 0.0;
    for (std::size_t i = 0; i < origin.size(); ++i) {
      const double e = origin[i] - xp[i];
      e2 += e * e;
      ew += e * dir_vec[i];
    }
    const double e1 = origin[0] - xp[0];
    positive_roots(cb, 2.0 * cb * ew + d * xn * sb * dir_vec[0],
                   cb * (e2 - (d - 1) * xn * xn) + d * xn * sb * e1, out);
  };
  f.support = ball;
  f.scale = xn;

  // Kernel scaled by omega_n x_n^n / 2 so it is O(1) near x'.
  const double unit = sphere_area(d) * std::pow(xn, d) / 2.0;
  const HalfSpacePoint xc = x;
  if (p.is_infinity()) {
    f.eval = [ball, xc, dir, n](std::span<const double> y) {
      if (!inside(ball, y)) return 0.0;
      const double k = directional_kernel(y, xc, dir, n);
      return k > 0.0 ? 1.0 : (k < 0.0 ? -1.0 : 0.0);
    };
    f.known_norm = [](const Exponent& q) -> std::optional<double> {
      if (q.is_infinity()) return 1.0;
      return std::nullopt;
    };
    f.sup = 1.0;
    f.inf = -1.0;
  } else {
    const double power = 1.0 / (p.p() - 1.0);
    f.eval = [ball, xc, dir, n, unit, power](std::span<const double> y) {
      if (!inside(ball, y)) return 0.0;
      const double k = unit * directional_kernel(y, xc, dir, n);
      return std::copysign(std::pow(std::abs(k), power), k);
    };
  }
  return f;
}

double sharp_bound(const Exponent& p, Dim n, const QuadratureSpec& spec) {
  if (auto c = closed_form_constant(n, p)) return *c;
  return sup_over_direction(n, p, spec).value;
}

double sharp_direction_bound(const Exponent& p, Dim n, const Direction& dir,
                             const QuadratureSpec& spec) {
  if (dir.beta() == 0.0) {
    if (auto c = closed_form_constant(n, p)) return *c;
  }
  return cp_direction(n, p, dir, spec).value;
}

SharpnessReport measure_ratio(const BoundaryData& f, const Exponent& p, Dim n,
                              const HalfSpacePoint& x, const Direction& dir, double bound,
                              double directional_bound, const QuadratureSpec& spec) {
  const VectorEstimate g = poisson_gradient(f, x, n, spec);
  const std::vector<double> z = direction_vector(dir, n);
  double norm2 = 0.0;
  double err2 = 0.0;
  double along = 0.0;
  for (std::size_t k = 0; k < g.value.size(); ++k) {
    norm2 += g.value[k] * g.value[k];
    err2 += g.abs_err[k] * g.abs_err[k];
    along += g.value[k] * z[k];
  }
  SharpnessReport r;
  r.norm = boundary_norm(f, p, n, spec);
  if (!(r.norm > 0.0) || !std::isfinite(r.norm)) {
    throw std::invalid_argument("boundary data must have finite nonzero norm");
  }
  const double scale = std::pow(x.x_n, p.scaling_power(n.value())) / r.norm;
  r.gradient = g.value;
  r.ratio = std::sqrt(norm2) * scale;
  r.directional_ratio = along * scale;
  r.quadrature_err = std::sqrt(err2) * scale;
  r.bound = bound;
  r.directional_bound = directional_bound;
  r.gap = 1.0 - r.ratio / bound;
  return r;
}

SharpnessReport sharpness_ratio(const Exponent& p, Dim n, const HalfSpacePoint& x,
                                const Direction& dir, double truncation_radius,
                                const QuadratureSpec& spec) {
  const double bound = sharp_bound(p, n, spec);
  const double dbound = sharp_direction_bound(p, n, dir, spec);
  if (!p.is_one()) {
    return measure_ratio(extremal_data(p, x, dir, n, truncation_radius), p, n, x, dir, bound,
                         dbound, spec);
  }
  SharpnessReport last;
  std::vector<double> ratios;
  std::vector<double> directional;
  double err = 0.0;
  for (double m : kBumpScales) {
    last = measure_ratio(extremal_data(p, x, dir, n, truncation_radius, m), p, n, x, dir, bound,
                         dbound, spec);
    ratios.push_back(last.ratio);
    directional.push_back(last.directional_ratio);
    err = std::max(err, last.quadrature_err);
  }
  // Bump averages of a smooth maximum deviate by O(1/m^2); m doubles each step.
  const std::size_t k = ratios.size();
  last.ratio = (4.0 * ratios[k - 1] - ratios[k - 2]) / 3.0;
  last.directional_ratio = (4.0 * directional[k - 1] - directional[k - 2]) / 3.0;
  last.quadrature_err = 5.0 / 3.0 * err;
  last.gap = 1.0 - last.ratio / bound;
  last.bump_scales.assign(std::begin(kBumpScales), std::end(kBumpScales));
  last.bump_ratios = ratios;
  return last;
}

OscillationReport oscillation_check(const BoundaryData& f, Dim n, const HalfSpacePoint& x,
                                    const QuadratureSpec& spec) {
  if (!f.sup || !f.inf) throw std::invalid_argument("oscillation_check needs sup and inf");
  const VectorEstimate g = poisson_gradient(f, x, n, spec);
  OscillationReport r;
  double err2 = 0.0;
  for (std::size_t k = 0; k < g.value.size(); ++k) {
    r.gradient_norm += g.value[k] * g.value[k];
    err2 += g.abs_err[k] * g.abs_err[k];
  }
  r.gradient_norm = std::sqrt(r.gradient_norm);
  r.quadrature_err = std::sqrt(err2);
  r.oscillation = *f.sup - *f.inf;
  r.bound = oscillation_constant(n) * r.oscillation / x.x_n;
  const double slack = 1e-12 * std::max(std::abs(*f.sup), std::abs(*f.inf)) / x.x_n;
  r.holds = r.gradient_norm <= r.bound + r.quadrature_err + slack;
  return r;
}

BumpFamily BumpFamily::dilated(double lambda) const {
  BumpFamily out = *this;
  for (Bump& b : out.bumps) {
    for (double& c : b.center) c *= lambda;
    b.radius *= lambda;
  }
  return out;
}

double bump_radial_moment(Dim n, double p) {
  const int d = n.value();
  QuadratureSpec spec;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-13;
  return integrate_1d(
             [d, p](double r) {
               const double b = bump_profile(r * r);
               return (d == 2 ? 1.0 : std::pow(r, d - 2)) * (b == 0.0 ? 0.0 : std::pow(b, p));
             },
             0.0, 1.0, spec)
      .value;
}

BoundaryData bump_family_data(const BumpFamily& family, Dim n) {
  const int d = n.value();
  if (family.bumps.empty()) throw std::invalid_argument("bump family is empty");
  for (const Bump& b : family.bumps) {
    if (static_cast<int>(b.center.size()) != d - 1 || !(b.radius > 0.0)) {
      throw std::invalid_argument("bump does not match the dimension");
    }
  }
  BoundaryData f;
  const std::vector<Bump> bumps = family.bumps;
  f.eval = [bumps](std::span<const double> y) {
    double v = 0.0;
    for (const Bump& b : bumps) {
      const double r2 = distance_sq(y, b.center) / (b.radius * b.radius);
      if (r2 < 1.0) v += b.amplitude * bump_profile(r2);
    }
    return v;
  };
  double sup = 0.0;
  double inf = 0.0;
  double amp = 0.0;
  for (const Bump& b : bumps) {
    f.focus.push_back({b.center, b.radius});
    sup = std::max(sup, b.amplitude);
    inf = std::min(inf, b.amplitude);
    amp = std::max(amp, std::abs(b.amplitude));
  }
  f.zero_outside_focus = true;
  f.sup = sup;
  f.inf = inf;
  const double sphere = d == 2 ? 2.0 : sphere_area(d - 1);
  f.known_norm = [bumps, amp, n, d, sphere](const Exponent& p) -> std::optional<double> {
    if (p.is_infinity()) return amp;
    const double pp = p.p();
    const double moment = bump_radial_moment(n, pp);
    double s = 0.0;
    for (const Bump& b : bumps) {
      s += std::pow(std::abs(b.amplitude), pp) * std::pow(b.radius, d - 1) * sphere * moment;
    }
    return std::pow(s, 1.0 / pp);
  };
  return f;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

HalfSpacePoint random_point(Dim n, std::mt19937_64& rng) {
  HalfSpacePoint x;
  x.x_prime.resize(n.value() - 1);
  for (double& c : x.x_prime) c = 2.0 * uniform01(rng) - 1.0;
  x.x_n = 0.5 + 1.5 * uniform01(rng);
  return x;
}

BumpFamily random_bump_family(Dim n, const HalfSpacePoint& x, std::mt19937_64& rng) {
  const int m = n.value() - 1;
  const int count = 1 + static_cast<int>(4.0 * uniform01(rng));
  BumpFamily fam;
  for (int k = 0; k < count; ++k) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Bump b;
      b.center.resize(m);
      for (int i = 0; i < m; ++i) b.center[i] = x.x_prime[i] + x.x_n * (6.0 * uniform01(rng) - 3.0);
      b.radius = x.x_n * (0.2 + uniform01(rng));
      b.amplitude = k == 0 ? (uniform01(rng) < 0.5 ? -1.0 : 1.0) : 2.0 * uniform01(rng) - 1.0;
      bool disjoint = true;
      for (const Bump& o : fam.bumps) {
        const double gap = std::sqrt(distance_sq(o.center, b.center)) - o.radius - b.radius;
        if (gap <= 0.0) disjoint = false;
      }
      if (disjoint) {
        fam.bumps.push_back(std::move(b));
        break;
      }
    }
  }
  return fam;
}

}  // namespace hs_sharp
