#include "hs_sharp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace hs_sharp {

void QuadratureSpec::validate() const {
  if (base_order < 2) {
    throw std::invalid_argument("QuadratureSpec: base_order must be >= 2");
  }
  if (max_refinements < 0) {
    throw std::invalid_argument("QuadratureSpec: max_refinements must be >= 0");
  }
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be nonnegative");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw std::invalid_argument("QuadratureSpec: abs_tol and rel_tol cannot both be zero");
  }
}

namespace {

GaussLegendreRule compute_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_order.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // one more evaluation for the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

struct Panel {
  double a;
  double b;
  int depth;
  std::vector<double> whole;
  std::vector<double> left;
  std::vector<double> right;
};

class VectorAdaptive {
 public:
  VectorAdaptive(const VectorIntegrand1d& f, std::size_t dim, const QuadratureSpec& spec)
      : f_(f), dim_(dim), spec_(spec), rule_(gauss_legendre_rule(spec.base_order)),
        scratch_(dim) {}

  VectorEstimate run(double a, double b, int initial_panels) {
    spec_.validate();
    if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
    VectorEstimate out{std::vector<double>(dim_, 0.0), std::vector<double>(dim_, 0.0)};
    if (a == b) return out;
    const int count = std::max(1, initial_panels);
    std::vector<Panel> panels;
    panels.reserve(count * 4);
    for (int i = 0; i < count; ++i) {
      const double pa = a + (b - a) * i / count;
      const double pb = (i + 1 == count) ? b : a + (b - a) * (i + 1) / count;
      panels.push_back(make_panel(pa, pb, 0, rule(pa, pb)));
    }

    std::vector<double> tol(dim_);
    const int max_splits = 200000;
    for (int split = 0;; ++split) {
      std::fill(out.value.begin(), out.value.end(), 0.0);
      std::fill(out.abs_err.begin(), out.abs_err.end(), 0.0);
      for (const Panel& p : panels) {
        for (std::size_t k = 0; k < dim_; ++k) {
          const double fine = p.left[k] + p.right[k];
          out.value[k] += fine;
          out.abs_err[k] += std::abs(fine - p.whole[k]);
        }
      }
      bool converged = true;
      for (std::size_t k = 0; k < dim_; ++k) {
        tol[k] = std::max(spec_.abs_tol, spec_.rel_tol * std::abs(out.value[k]));
        if (!(out.abs_err[k] <= tol[k])) converged = false;
      }
      if (converged) return out;

      std::size_t worst = panels.size();
      double worst_score = -1.0;
      for (std::size_t i = 0; i < panels.size(); ++i) {
        const Panel& p = panels[i];
        if (p.depth >= spec_.max_refinements) continue;
        double score = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
          const double e = std::abs(p.left[k] + p.right[k] - p.whole[k]);
          score = std::max(score, std::isfinite(e) ? e / tol[k] : HUGE_VAL);
        }
        if (score > worst_score) {
          worst_score = score;
          worst = i;
        }
      }
      if (worst == panels.size() || split >= max_splits) {
        std::size_t bad = 0;
        for (std::size_t k = 1; k < dim_; ++k) {
          if (out.abs_err[k] / tol[k] > out.abs_err[bad] / tol[bad]) bad = k;
        }
        throw NonConvergence("quadrature did not converge on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "] within the refinement budget",
                             Estimate{out.value[bad], out.abs_err[bad]});
      }
      Panel parent = std::move(panels[worst]);
      const double mid = 0.5 * (parent.a + parent.b);
      panels[worst] = make_panel(parent.a, mid, parent.depth + 1, std::move(parent.left));
      panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                    make_panel(mid, parent.b, parent.depth + 1, std::move(parent.right)));
    }
  }

 private:
  std::vector<double> rule(double a, double b) {
    std::vector<double> acc(dim_, 0.0);
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      const double x = centre + half * rule_.nodes[i];
      std::fill(scratch_.begin(), scratch_.end(), 0.0);
      f_(x, scratch_);
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!std::isfinite(scratch_[k])) {
          throw std::domain_error("integrate: integrand is not finite at x = " +
                                  std::to_string(x));
        }
        acc[k] += rule_.weights[i] * scratch_[k];
      }
    }
    for (double& v : acc) v *= half;
    return acc;
  }

  Panel make_panel(double a, double b, int depth, std::vector<double> whole) {
    const double mid = 0.5 * (a + b);
    Panel p{a, b, depth, std::move(whole), rule(a, mid), rule(mid, b)};
    return p;
  }

  const VectorIntegrand1d& f_;
  std::size_t dim_;
  QuadratureSpec spec_;
  const GaussLegendreRule& rule_;
  std::vector<double> scratch_;
};

// s(u) = u^3 (10 - 15u + 6u^2), s'(u) = 30 u^2 (1 - u)^2
inline double grade(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
inline double grade_jacobian(double u) {
  const double w = u * (1.0 - u);
  return 30.0 * w * w;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(order));
  return *slot;
}

VectorEstimate integrate_1d_vec(const VectorIntegrand1d& f, std::size_t dim, double a,
                                double b, const QuadratureSpec& spec, int initial_panels) {
  if (dim == 0) throw std::invalid_argument("integrate_1d_vec: dim must be positive");
  VectorAdaptive engine(f, dim, spec);
  return engine.run(a, b, initial_panels);
}

Estimate integrate_1d(const Integrand1d& f, double a, double b, const QuadratureSpec& spec) {
  const VectorIntegrand1d wrapped = [&f](double x, std::span<double> out) { out[0] = f(x); };
  const VectorEstimate r = integrate_1d_vec(wrapped, 1, a, b, spec);
  return {r.value[0], r.abs_err[0]};
}

VectorEstimate integrate_1d_vec_graded(const VectorIntegrand1d& f, std::size_t dim,
                                       double a, double b, const QuadratureSpec& spec) {
  const double width = b - a;
  const VectorIntegrand1d mapped = [&](double u, std::span<double> out) {
    const double jac = grade_jacobian(u) * width;
    if (jac == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    f(a + width * grade(u), out);
    for (double& v : out) v *= jac;
  };
  return integrate_1d_vec(mapped, dim, 0.0, 1.0, spec);
}

Estimate integrate_1d_graded(const Integrand1d& f, double a, double b,
                             const QuadratureSpec& spec) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  const double width = b - a;
  const Integrand1d mapped = [&](double u) {
    const double jac = grade_jacobian(u) * width;
    return jac == 0.0 ? 0.0 : f(a + width * grade(u)) * jac;
  };
  return integrate_1d(mapped, 0.0, 1.0, spec);
}

Estimate integrate_2d_split(const Integrand2d& f, Interval outer, Interval inner,
                            const KinkCurve& kink, const QuadratureSpec& spec,
                            std::span<const double> outer_breaks) {
  spec.validate();
  if (!(outer.lo <= outer.hi) || !(inner.lo <= inner.hi)) {
    throw std::invalid_argument("integrate_2d_split: empty or reversed range");
  }
  double inner_err = 0.0;
  const Integrand1d row = [&](double x) {
    const Integrand1d slice = [&](double y) { return f(x, y); };
    std::optional<double> cut;
    if (kink) cut = kink(x);
    Estimate r;
    if (cut && *cut > inner.lo && *cut < inner.hi) {
      const Estimate lower = integrate_1d_graded(slice, inner.lo, *cut, spec);
      const Estimate upper = integrate_1d_graded(slice, *cut, inner.hi, spec);
      r = {lower.value + upper.value, lower.abs_err + upper.abs_err};
    } else {
      r = integrate_1d_graded(slice, inner.lo, inner.hi, spec);
    }
    inner_err = std::max(inner_err, r.abs_err);
    return r.value;
  };

  std::vector<double> cuts{outer.lo};
  for (double c : outer_breaks) {
    if (c > outer.lo && c < outer.hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(outer.hi);

  double value = 0.0;
  double err_sq = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Estimate piece = integrate_1d_graded(row, cuts[i], cuts[i + 1], spec);
    value += piece.value;
    err_sq += piece.abs_err * piece.abs_err;
  }
  const double inner_total = inner_err * (outer.hi - outer.lo);
  return {value, std::sqrt(err_sq + inner_total * inner_total)};
}

}  // namespace hs_sharp
