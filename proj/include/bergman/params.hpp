#pragma once

#include <cmath>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

/// Validated weight exponents (alpha, beta) of the measure
/// |z|^{2 beta} (1 - |z|^2)^alpha dA, together with the decomposition
/// beta = beta0 + m, m = ceil(beta), -1 < beta0 <= 0.
class KernelParams {
 public:
  static KernelParams make(double alpha, double beta) {
    if (!std::isfinite(alpha) || !(alpha > -1.0)) {
      throw DomainError("E_ALPHA_RANGE", "alpha must satisfy alpha > -1, got " + std::to_string(alpha));
    }
    if (!std::isfinite(beta) || !(beta > -1.0)) {
      throw DomainError("E_BETA_RANGE", "beta must satisfy beta > -1, got " + std::to_string(beta));
    }
    return KernelParams(alpha, beta);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  int m() const noexcept { return m_; }
  double beta0() const noexcept { return beta0_; }

  bool alpha_is_integer() const noexcept { return is_integer(alpha_); }
  /// beta in N, i.e. beta0 == 0.
  bool beta_is_integer() const noexcept { return beta0_ == 0.0; }
  /// alpha as an int; only meaningful when alpha_is_integer().
  int alpha_int() const noexcept { return static_cast<int>(alpha_); }

  /// Same alpha, beta replaced by beta0 (the m = 0 reduction).
  KernelParams reduced() const { return KernelParams(alpha_, beta0_); }

  friend bool operator==(const KernelParams&, const KernelParams&) = default;

 private:
  KernelParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    const double c = std::ceil(beta);
    m_ = static_cast<int>(c);
    beta0_ = beta - c;
    if (beta0_ == 0.0) beta0_ = 0.0;  // normalize -0.0
  }

  double alpha_;
  double beta_;
  int m_ = 0;
  double beta0_ = 0.0;
};

inline int require_integer_alpha(const KernelParams& p, const char* what) {
  if (!p.alpha_is_integer()) {
    throw DomainError("E_ALPHA_NOT_INTEGER", std::string(what) + " requires integer alpha");
  }
  return p.alpha_int();
}

}  // namespace bergman
