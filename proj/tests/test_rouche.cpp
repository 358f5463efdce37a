#include "support.hpp"

#include "bergman/curves.hpp"
#include "bergman/rouche.hpp"

using namespace bergman;

TEST_CASE("window bounds for P_alpha reproduce the reference table", "[rouche]") {
  const std::vector<std::array<double, 3>> table{
      {2, -0.381966, -0.177124},   {3, -0.493058, -0.107610},   {4, -0.667086, -0.0649539},
      {5, -0.793482, -0.0387481},  {6, -0.870294, -0.0227925},  {7, -0.917737, -0.0132128},
      {8, -0.947843, -0.00755239}, {9, -0.967185, -0.0042614}};
  for (const auto& [a, b1, b2] : table) {
    const auto rb = rouche_bounds(p_alpha(static_cast<int>(a)), 1.0);
    CHECK(std::abs(rb.beta1 - b1) < 1e-5);
    CHECK(std::abs(rb.beta2 - b2) < 1e-5);
    CHECK(rb.beta1 <= rb.midpoint);
    CHECK(rb.midpoint <= rb.beta2);
    CHECK(rb.midpoint == Catch::Approx(-1.0 / (2.0 + a)));
  }
}

TEST_CASE("psi vanishes at the bounds", "[rouche]") {
  for (int alpha = 2; alpha <= 9; ++alpha) {
    const auto f = TruncatedSeries(p_alpha(alpha));
    const auto rb = rouche_bounds(f, 1.0);
    for (const double b : rb.sign_changes) CHECK(std::abs(rouche_psi(f, 1.0, b)) < 1e-6);
    CHECK(rouche_psi(f, 1.0, 0.5 * (rb.beta2 - 1e-6)) > 0.0);
  }
}

TEST_CASE("verdicts agree with direct counts", "[rouche][property]") {
  for (int alpha = 2; alpha <= 9; ++alpha) {
    const auto f = p_alpha(alpha);
    for (int i = 0; i < 20; ++i) {
      const double beta = testing::uniform(-0.999, -0.001);
      const auto wc = zero_window_verdict(f, 1.0, beta);
      CHECK(wc.consistent);
      if (wc.verdict != ZeroVerdict::Unknown) REQUIRE(wc.count.has_value());
    }
  }
}

TEST_CASE("verdict names and domain", "[rouche]") {
  const auto rb = rouche_bounds(p_alpha(3), 1.0);
  CHECK(zero_window_verdict(rb, -0.01) == ZeroVerdict::NoZero);
  CHECK(zero_window_verdict(rb, -0.99) == ZeroVerdict::OneSimpleZero);
  CHECK(zero_window_verdict(rb, -0.3) == ZeroVerdict::Unknown);
  CHECK(std::string(to_string(ZeroVerdict::OneSimpleZero)) == "one_simple_zero");
  CHECK_THROWS_AS(zero_window_verdict(rb, 0.0), DomainError);
  CHECK_THROWS_AS(rouche_bounds(ComplexPoly(std::vector<cplx>{cplx{0.0}, cplx{0.0}, cplx{1.0}}), 1.0), DomainError);
  CHECK_THROWS_AS(rouche_bounds(p_alpha(3), 0.0), DomainError);
}

TEST_CASE("real alpha uses a certified tail", "[rouche]") {
  const auto f = one_minus_z_pow_series(3.5, 400);
  CHECK_FALSE(f.is_exact());
  const auto rb = rouche_bounds(f, 1.0);
  CHECK(rb.beta1 < rb.beta2);
  CHECK(rb.beta1 > -1.0);
  CHECK(rb.beta2 < 0.0);
  CHECK_THROWS_AS(rouche_bounds(f, 1.5), DomainError);
}
