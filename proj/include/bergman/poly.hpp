#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

using cplx = std::complex<double>;

/// Dense polynomial sum_n c_n xi^n with complex coefficients.
///
/// The coefficient list is canonical: trailing zeros are dropped, so the last
/// stored coefficient is nonzero unless the polynomial is identically zero,
/// in which case the list is the single entry {0}.
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_{cplx{0.0}} {}
  explicit ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  ComplexPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

  static ComplexPoly from_real(std::span<const double> c) {
    return ComplexPoly(std::vector<cplx>(c.begin(), c.end()));
  }

  /// (1 - z)^e for integer e >= 0.
  static ComplexPoly one_minus_z_pow(int e) {
    std::vector<cplx> c(static_cast<std::size_t>(e) + 1);
    double b = 1.0;
    for (int n = 0; n <= e; ++n) {
      c[n] = (n % 2 == 0) ? b : -b;
      b = b * (e - n) / (n + 1);
    }
    return ComplexPoly(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx operator[](int n) const { return n >= 0 && n <= degree() ? coeffs_[n] : cplx{0.0}; }
  cplx leading() const { return coeffs_.back(); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  bool has_real_coeffs() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
  }

  /// Horner evaluation.
  cplx operator()(cplx z) const {
    cplx acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Horner evaluation of p(z) and p'(z) in one pass.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
    cplx p{0.0};
    cplx dp{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    return {p, dp};
  }

  /// sum_n |c_n| |z|^n, the scale of rounding errors in Horner's rule.
  double abs_sum(double r) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  ComplexPoly derivative() const {
    if (degree() == 0) return ComplexPoly();
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = coeffs_[n] * static_cast<double>(n);
    return ComplexPoly(std::move(d));
  }

  /// p(s * xi).
  ComplexPoly scaled(cplx s) const {
    std::vector<cplx> c(coeffs_);
    cplx f{1.0};
    for (auto& ci : c) {
      ci *= f;
      f *= s;
    }
    return ComplexPoly(std::move(c));
  }

  friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (int n = 0; n < static_cast<int>(c.size()); ++n) c[n] = a[n] + b[n];
    return ComplexPoly(std::move(c));
  }

  friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (int n = 0; n < static_cast<int>(c.size()); ++n) c[n] = a[n] - b[n];
    return ComplexPoly(std::move(c));
  }

  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return ComplexPoly(std::move(c));
  }

  friend ComplexPoly operator*(cplx s, const ComplexPoly& a) {
    std::vector<cplx> c(a.coeffs_);
    for (auto& ci : c) ci *= s;
    return ComplexPoly(std::move(c));
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
  }

  std::vector<cplx> coeffs_;
};

/// Power series a_0 + ... + a_N z^N with a certified bound on the discarded
/// part: tail_bound >= sum_{n>N} |a_n|, hence a sup-norm bound for the
/// truncation error on the closed unit disk. tail_bound == 0 means the
/// series is exactly the polynomial.
class TruncatedSeries {
 public:
  TruncatedSeries() : coeffs_{cplx{0.0}} {}
  TruncatedSeries(std::vector<cplx> coeffs, double tail_bound)
      : coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
    if (!(tail_bound_ >= 0.0)) throw DomainError("E_TAIL_BOUND", "tail bound must be nonnegative");
  }
  explicit TruncatedSeries(const ComplexPoly& p) : coeffs_(p.coeffs()), tail_bound_(0.0) {}

  int truncation_order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double tail_bound() const noexcept { return tail_bound_; }
  bool is_exact() const noexcept { return tail_bound_ == 0.0; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx operator[](int n) const { return n >= 0 && n <= truncation_order() ? coeffs_[n] : cplx{0.0}; }

  /// Value of the truncated sum; the full series differs by at most
  /// tail_bound() on the closed unit disk.
  cplx operator()(cplx z) const {
    cplx acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Formal derivative of the truncated sum, evaluated at z.
  cplx derivative(cplx z) const {
    cplx p{0.0};
    cplx dp{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    return dp;
  }

  ComplexPoly to_poly() const { return ComplexPoly(coeffs_); }

 private:
  std::vector<cplx> coeffs_;
  double tail_bound_ = 0.0;
};

/// Max coefficientwise relative difference |a_n - b_n| / max(|b_n|, floor).
inline double max_relative_difference(std::span<const cplx> a, std::span<const cplx> b,
                                      double floor = 1e-300) {
  const std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = i < a.size() ? a[i] : cplx{0.0};
    const cplx bi = i < b.size() ? b[i] : cplx{0.0};
    worst = std::max(worst, std::abs(ai - bi) / std::max(std::abs(bi), floor));
  }
  return worst;
}

inline double max_relative_difference(const ComplexPoly& a, const ComplexPoly& b) {
  return max_relative_difference(std::span<const cplx>(a.coeffs()), std::span<const cplx>(b.coeffs()));
}

}  // namespace bergman
