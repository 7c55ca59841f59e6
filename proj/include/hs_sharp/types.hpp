#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hs_sharp {

/// Dimension n >= 2 of the half-space R^n_+.
class Dim {
 public:
  explicit Dim(int n);
  int value() const noexcept { return n_; }
  friend bool operator==(Dim, Dim) = default;

 private:
  int n_;
};

/// Boundary-norm index p in [1, inf].
class Exponent {
 public:
  enum class Kind { One, Finite, Infinity };

  static Exponent one() { return Exponent(Kind::One, 1.0); }
  static Exponent infinity() { return Exponent(Kind::Infinity, 0.0); }
  /// Requires p > 1 and finite; throws std::domain_error otherwise.
  static Exponent finite(double p);

  /// Accepts "1", "inf" (also "infinity"), or a decimal literal > 1.
  /// Throws std::invalid_argument on anything else.
  static Exponent parse(std::string_view token);

  Kind kind() const noexcept { return kind_; }
  bool is_one() const noexcept { return kind_ == Kind::One; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_infinity() const noexcept { return kind_ == Kind::Infinity; }

  /// p itself; only meaningful for One and Finite.
  double p() const noexcept { return p_; }

  /// q = p / (p - 1); 1 for Infinity, +inf for One.
  double conjugate() const noexcept;

  /// Power of |y - x| scaling: |grad u| x_n^{(n+p-1)/p} / ||u||_p is scale free.
  double scaling_power(int n) const noexcept;

  /// "1", "inf", or the shortest round-trip decimal of p.
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

/// Unit vector z stored by its polar angle beta from the inward normal e_n.
/// gamma = |z'| / z_n = tan(beta).
class Direction {
 public:
  static Direction from_beta(double beta);
  static Direction from_gamma(double gamma);
  static Direction normal() { return Direction(0.0); }
  static Direction tangential();

  double beta() const noexcept { return beta_; }
  double gamma() const noexcept;
  double cos_beta() const noexcept;
  double sin_beta() const noexcept;

 private:
  explicit Direction(double beta) : beta_(beta) {}
  double beta_;
};

enum class Method { ClosedForm, HemisphereQuadrature, GammaSup, AlphaSup, DirectionScan };

std::string_view method_name(Method m);

struct ConstantResult {
  double value = 0.0;
  double abs_err = 0.0;
  std::optional<double> argmax_param;  ///< beta, or alpha for Method::AlphaSup
  std::optional<double> argmax_beta;   ///< always expressed as the polar angle
  Method method = Method::ClosedForm;
  std::string warning;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace hs_sharp
