#include "support.hpp"

#include <cmath>
#include <numbers>

#include "bergman/analytic.hpp"

using namespace bergman;
using Catch::Approx;

TEST_CASE("ln_gamma and beta_fn special values", "[special]") {
  CHECK(ln_gamma(1.0) == Approx(0.0).margin(1e-15));
  CHECK(ln_gamma(2.0) == Approx(0.0).margin(1e-15));
  CHECK(ln_gamma(0.5) == Approx(std::log(std::sqrt(std::numbers::pi))).epsilon(1e-14));
  CHECK(beta_fn(1.0, 1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(beta_fn(1.0, 3.7) == Approx(1.0 / 3.7).epsilon(1e-13));
  CHECK(beta_fn(3.0, 0.5) == Approx(16.0 / 15.0).epsilon(1e-13));
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(beta_fn(-0.1, 1.0), DomainError);
}

TEST_CASE("ln_gamma recurrence over its accuracy range", "[special]") {
  for (double x = 1e-3; x < 1e4; x *= 1.37) {
    CHECK(ln_gamma(x + 1.0) - ln_gamma(x) == Approx(std::log(x)).margin(1e-12 * std::max(1.0, std::abs(ln_gamma(x)))));
  }
}

TEST_CASE("generalized binomial", "[special]") {
  CHECK(gen_binom(3.0, 2) == 3.0);
  CHECK(gen_binom(7.25, 0) == 1.0);
  CHECK(gen_binom(1.5, 2) == Approx(0.375).epsilon(1e-15));
  CHECK(gen_binom(4.0, 5) == 0.0);
  CHECK(gen_binom(40.0, 20) == 137846528820.0);
}

TEST_CASE("KernelParams decomposition", "[params]") {
  auto p = KernelParams::make(2.0, 1.5);
  CHECK(p.m() == 2);
  CHECK(p.beta0() == Approx(-0.5));
  CHECK_FALSE(p.beta_is_integer());
  auto q = KernelParams::make(0.5, 3.0);
  CHECK(q.m() == 3);
  CHECK(q.beta0() == 0.0);
  CHECK_FALSE(std::signbit(q.beta0()));
  CHECK(q.beta_is_integer());
  auto r = KernelParams::make(1.0, -0.3);
  CHECK(r.m() == 0);
  CHECK(r.beta0() == Approx(-0.3));
  CHECK(KernelParams::make(0.0, -0.0).beta_is_integer());
  try {
    KernelParams::make(-1.0, 0.0);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.code() == "E_ALPHA_RANGE");
  }
  try {
    KernelParams::make(0.0, -1.0);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.code() == "E_BETA_RANGE");
  }
}

TEST_CASE("ComplexPoly is canonical and evaluates by Horner", "[poly]") {
  ComplexPoly p({cplx{1.0}, cplx{2.0}, cplx{0.0}, cplx{0.0}});
  CHECK(p.degree() == 1);
  CHECK(ComplexPoly({cplx{0.0}, cplx{0.0}}).is_zero());
  CHECK(ComplexPoly({cplx{0.0}}).degree() == 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> c;
    for (int n = 0; n < 12; ++n) c.push_back(cplx{testing::uniform(-1, 1), testing::uniform(-1, 1)});
    ComplexPoly q(c);
    const cplx z = testing::disk_point(2.0);
    cplx direct{0.0};
    double scale = 0.0;
    for (int n = 0; n < 12; ++n) {
      direct += c[n] * std::pow(z, n);
      scale += std::abs(c[n]) * std::pow(std::abs(z), n);
    }
    CHECK(std::abs(q(z) - direct) <= 64 * 2.2e-16 * scale);
  }
}

TEST_CASE("Q closed form matches the kernel basis expansion", "[analytic][oracle]") {
  // Oracle: mpmath expansion of xi^m (1-xi)^{alpha+2} sum_n B(a+1,b+1)/B(a+1,n+b+1) xi^n
  const auto q1 = build_Q(KernelParams::make(2.0, -0.5));
  const std::vector<double> e1{1.0, 3.0, -1.0, 0.2};
  REQUIRE(q1.degree() == 3);
  for (int n = 0; n <= 3; ++n) CHECK(q1[n].real() == Approx(e1[n]).epsilon(1e-13));

  const auto q2 = build_Q(KernelParams::make(3.0, 1.5));
  const std::vector<double> e2{0.030303030303030303, 0.12121212121212121, -0.060606060606060606,
                               0.024242424242424242, -0.004329004329004329};
  REQUIRE(q2.degree() == 4);
  for (int n = 0; n <= 4; ++n) CHECK(q2[n].real() == Approx(e2[n]).epsilon(1e-13));

  const auto q3 = build_Q(KernelParams::make(4.0, -0.25));
  const std::vector<double> e3{1.0, 1.6666666666666667, -1.4285714285714286, 0.90909090909090909,
                               -0.33333333333333333, 0.052631578947368421};
  for (int n = 0; n <= 5; ++n) CHECK(q3[n].real() == Approx(e3[n]).epsilon(1e-13));
}

TEST_CASE("Q special cases", "[analytic]") {
  const auto q0 = build_Q(KernelParams::make(0.0, -0.5));
  CHECK(q0.degree() == 1);
  CHECK(q0[0].real() == Approx(1.0));
  CHECK(q0[1].real() == Approx(1.0));
  for (int alpha = 0; alpha <= 6; ++alpha) {
    for (int m = 0; m <= 3; ++m) {
      const auto q = build_Q(KernelParams::make(alpha, m));
      CHECK(q.degree() == 0);
      CHECK(q[0].real() == Approx((alpha + 1) * beta_fn(alpha + 1.0, m + 1.0)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(build_Q(KernelParams::make(1.5, -0.5)), DomainError);
}

TEST_CASE("Q closed form and recurrence agree", "[analytic][property]") {
  for (int alpha = 0; alpha <= 12; ++alpha) {
    for (int trial = 0; trial < 10; ++trial) {
      const double beta = testing::uniform(-0.99, 4.0);
      const auto p = KernelParams::make(alpha, beta);
      const auto closed = build_Q(p);
      const auto rec = build_Q_recurrence(p);
      INFO("alpha=" << alpha << " beta=" << beta);
      CHECK(max_relative_difference(rec, closed) < 1e-12);
      if (!p.beta_is_integer()) {
        CHECK(closed.degree() == alpha + 1);
        CHECK(std::abs(closed(cplx{1.0})) > 0.0);
      }
      CHECK_NOTHROW(build_Q_checked(p));
    }
  }
}

TEST_CASE("Q at one steps by (alpha+2)/(alpha+beta+2)", "[analytic]") {
  for (const double beta : {-0.7, -0.2, 1.4, 2.5}) {
    for (int alpha = 0; alpha < 8; ++alpha) {
      const cplx lhs = build_Q(KernelParams::make(alpha + 1, beta))(cplx{1.0});
      const cplx rhs = (alpha + 2.0) / (alpha + beta + 2.0) * build_Q(KernelParams::make(alpha, beta))(cplx{1.0});
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
  }
}

TEST_CASE("G coefficients and value at one", "[analytic]") {
  const auto g = build_G(KernelParams::make(1.0, -0.5));
  CHECK(g.is_exact());
  REQUIRE(g.truncation_order() == 2);
  CHECK(g[0].real() == Approx(-2.0));
  CHECK(g[1].real() == Approx(-4.0));
  CHECK(g[2].real() == Approx(2.0 / 3.0));
  CHECK(g(cplx{1.0}).real() == Approx(-16.0 / 3.0).epsilon(1e-14));  // oracle B(-0.5, 3)
  const auto g0 = build_G(KernelParams::make(0.0, -0.5));
  CHECK(std::abs(g0(cplx{-1.0})) < 1e-15);
  CHECK_THROWS_AS(build_G(KernelParams::make(1.0, 2.0)), DomainError);
}

TEST_CASE("G for real alpha carries a certified tail", "[analytic]") {
  const auto p = KernelParams::make(2.5, -0.3);
  const auto g = build_G(p, 1e-10);
  CHECK(g.tail_bound() < 1e-10);
  CHECK(g.tail_bound() > 0.0);
  CHECK(g.truncation_order() >= 15);
  const auto big = build_G(p, 1e-14);
  for (const cplx z : testing::disk_points(20)) CHECK(std::abs(g(z) - big(z)) <= g.tail_bound() + 1e-13);
}

TEST_CASE("beta G equals Q", "[analytic][property]") {
  for (int alpha = 0; alpha <= 12; ++alpha) {
    for (const double beta : {-0.9, -0.5, -0.1}) {
      const auto p = KernelParams::make(alpha, beta);
      const auto g = build_G(p).to_poly();
      CHECK(max_relative_difference(cplx{beta} * g, build_Q(p)) < 1e-12);
    }
  }
}

TEST_CASE("T_beta transform", "[analytic]") {
  for (int alpha = 0; alpha <= 8; ++alpha) {
    const double beta = testing::random_beta();
    const auto t = apply_T_beta(p_alpha(alpha), beta);
    const auto g = build_G(KernelParams::make(alpha, beta)).to_poly();
    CHECK(max_relative_difference(t, g) < 1e-15);
  }
  CHECK(apply_T_beta(ComplexPoly{}, -0.5).is_zero());
  const double a0 = 2.0, a1 = -3.0, beta = -0.4;
  const auto lin = apply_T_beta(ComplexPoly({cplx{a0}, cplx{a1}}), beta);
  const cplx root = -(a0 / a1) * (beta + 1.0) / beta;
  CHECK(std::abs(lin(root)) < 1e-14);
  // zero of order 2 at the origin is preserved
  const auto z2 = apply_T_beta(ComplexPoly({cplx{0.0}, cplx{0.0}, cplx{1.0}, cplx{2.0}}), beta);
  CHECK(z2[0] == cplx{0.0});
  CHECK(z2[1] == cplx{0.0});
  CHECK(z2[2] != cplx{0.0});
  CHECK_THROWS_AS(apply_T_beta(p_alpha(2), 0.0), DomainError);
  const auto s = one_minus_z_pow_series(2.5, 30);
  const auto ts = apply_T_beta(s, -0.5);
  CHECK(ts.tail_bound() == Approx(s.tail_bound() / (31.0 - 0.5)));
}

TEST_CASE("T_beta derivative identity", "[analytic]") {
  const cplx one{1.0};
  CHECK(check_tbeta_derivative(TruncatedSeries(p_alpha(1)), -0.5, std::span<const cplx>(&one, 1)) < 1e-12);
  CHECK(check_tbeta_derivative(TruncatedSeries(), -0.5, std::span<const cplx>(&one, 1)) == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int alpha = static_cast<int>(testing::uniform(0, 10));
    const auto pts = testing::disk_points(100);
    CHECK(check_tbeta_derivative(TruncatedSeries(p_alpha(alpha)), testing::random_beta(), pts) < 1e-10);
  }
}

TEST_CASE("first-order ODE satisfied by G", "[analytic]") {
  const cplx zero{0.0};
  CHECK(check_ode_z1(3.0, -0.4, std::span<const cplx>(&zero, 1)).residual < 1e-15);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = testing::uniform(-0.9, 8.0);
    const double beta0 = testing::random_beta();
    const auto pts = testing::disk_points(100, 0.999);
    const auto r = check_ode_z1(alpha, beta0, pts);
    INFO("alpha=" << alpha << " beta0=" << beta0);
    CHECK(r.residual <= 10.0 * r.bound + 1e-12);
  }
  const cplx half{0.5};
  const auto r = check_ode_z1(2.5, -0.3, std::span<const cplx>(&half, 1));
  CHECK(r.residual <= 10.0 * r.bound + 1e-13);
  for (int alpha = 0; alpha <= 10; ++alpha) {
    const auto pts = testing::disk_points(50);
    CHECK(check_ode_z1(alpha, testing::random_beta(), pts).residual < 1e-12);
  }
}

TEST_CASE("G recurrence in alpha", "[analytic]") {
  const auto g0 = build_G(KernelParams::make(0.0, -0.5));
  const auto g1 = step_recurrence_G(g0, 0.0, -0.5);
  CHECK(g1[0].real() == Approx(-2.0));
  CHECK(g1[1].real() == Approx(-4.0));
  CHECK(g1[2].real() == Approx(2.0 / 3.0));
  for (int alpha = 0; alpha <= 10; ++alpha) {
    const double beta = testing::random_beta();
    const auto prev = build_G(KernelParams::make(alpha, beta));
    const auto next = build_G(KernelParams::make(alpha + 1, beta));
    const auto a = step_recurrence_G(prev, alpha, beta);
    const auto b = step_recurrence_G_differential(prev, alpha, beta);
    for (int n = 0; n <= alpha + 2; ++n) {
      CHECK(std::abs(a[n] - next[n]) < 1e-11 * std::max(1.0, std::abs(next[n])));
      CHECK(std::abs(b[n] - next[n]) < 1e-11 * std::max(1.0, std::abs(next[n])));
    }
    CHECK(std::abs(a(cplx{1.0}) - (alpha + 2.0) * prev(cplx{1.0}) / (alpha + beta + 2.0)) < 1e-11);
  }
  const auto zero_step = step_recurrence_G(TruncatedSeries(), 1.0, -0.5);
  CHECK(zero_step[0].real() == Approx(1.0 / 2.5));
}

TEST_CASE("G recurrence for real alpha within tail bounds", "[analytic]") {
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = testing::uniform(0.5, 6.0);
    const double beta = testing::random_beta();
    const auto prev = build_G(KernelParams::make(alpha, beta), 1e-9);
    const auto next = build_G(KernelParams::make(alpha + 1.0, beta), 1e-9);
    const auto a = step_recurrence_G(prev, alpha, beta);
    const auto b = step_recurrence_G_differential(prev, alpha, beta);
    for (const cplx z : testing::disk_points(20)) {
      CHECK(std::abs(a(z) - next(z)) <= a.tail_bound() + next.tail_bound() + 1e-11);
      CHECK(std::abs(b(z) - next(z)) <= b.tail_bound() + next.tail_bound() + 1e-11);
    }
  }
}

TEST_CASE("convolution identity", "[analytic]") {
  CHECK(convolution_identity_check(1.0, -0.5, 20) < 1e-10);
  CHECK(convolution_identity_check(3.7, -0.2, 20) < 1e-9);
  CHECK(convolution_identity_check(2.2, -0.7, 0) < 1e-15);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(convolution_identity_check(testing::uniform(-0.9, 10.0), testing::random_beta(), 20) < 1e-9);
  }
}

TEST_CASE("real inputs stay real", "[analytic][property]") {
  const auto g = build_G(KernelParams::make(5.0, -0.35));
  CHECK(g.to_poly().has_real_coeffs());
  CHECK(build_Q_recurrence(KernelParams::make(4.0, 2.3)).has_real_coeffs());
  CHECK(apply_T_beta(p_alpha(6), -0.8).has_real_coeffs());
}
