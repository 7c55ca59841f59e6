#include "hs_sharp/types.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <system_error>

namespace hs_sharp {

Dim::Dim(int n) : n_(n) {
  if (n < 2) throw std::domain_error("dimension must be >= 2, got " + std::to_string(n));
}

Exponent Exponent::finite(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::domain_error("finite exponent requires 1 < p < inf, got " + std::to_string(p));
  }
  return Exponent(Kind::Finite, p);
}

Exponent Exponent::parse(std::string_view token) {
  if (token == "inf" || token == "infinity" || token == "Inf") return infinity();
  if (token == "1") return one();
  double p = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(token) + "'");
  }
  if (p == 1.0) return one();
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent must be 1, inf or a decimal > 1, got '" +
                                std::string(token) + "'");
  }
  return finite(p);
}

double Exponent::conjugate() const noexcept {
  switch (kind_) {
    case Kind::One: return HUGE_VAL;
    case Kind::Infinity: return 1.0;
    case Kind::Finite: break;
  }
  return p_ / (p_ - 1.0);
}

double Exponent::scaling_power(int n) const noexcept {
  if (kind_ == Kind::Infinity) return 1.0;
  return (n + p_ - 1.0) / p_;
}

std::string Exponent::to_string() const {
  switch (kind_) {
    case Kind::One: return "1";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
  }
  return format_double(p_);
}

Direction Direction::from_beta(double beta) {
  if (!(beta >= 0.0) || !(beta <= std::numbers::pi / 2)) {
    throw std::domain_error("direction angle beta must lie in [0, pi/2], got " +
                            std::to_string(beta));
  }
  return Direction(beta);
}

Direction Direction::from_gamma(double gamma) {
  if (!(gamma >= 0.0)) throw std::domain_error("gamma must be nonnegative");
  return Direction(std::atan(gamma));
}

Direction Direction::tangential() { return Direction(std::numbers::pi / 2); }

double Direction::gamma() const noexcept { return std::tan(beta_); }
double Direction::cos_beta() const noexcept { return std::cos(beta_); }
double Direction::sin_beta() const noexcept { return std::sin(beta_); }

std::string_view method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::HemisphereQuadrature: return "hemisphere_quadrature";
    case Method::GammaSup: return "gamma_sup";
    case Method::AlphaSup: return "alpha_sup";
    case Method::DirectionScan: return "direction_scan";
  }
  return "unknown";
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace hs_sharp
