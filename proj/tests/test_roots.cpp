#include "support.hpp"

#include <algorithm>

#include "bergman/curves.hpp"
#include "bergman/roots.hpp"

using namespace bergman;
using Catch::Approx;

namespace {

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

ComplexPoly from_roots(const std::vector<cplx>& rs) {
  ComplexPoly p(std::vector<cplx>{cplx{1.0}});
  for (const cplx r : rs) p = p * ComplexPoly(std::vector<cplx>{-r, cplx{1.0}});
  return p;
}

}  // namespace

TEST_CASE("roots of a small G match numpy", "[roots][oracle]") {
  // Oracle: mpmath.polyroots on sum (-1)^n binom(4,n)/(n-0.3) xi^n
  const auto rs = sorted(find_roots(g_polynomial(3, -0.3)).roots);
  const std::vector<cplx> expect{{-0.43994115994679342, 0.0},
                                 {1.0920653150272837, -2.5116847865589598},
                                 {1.0920653150272837, 2.5116847865589598},
                                 {3.7372920113737074, 0.0}};
  REQUIRE(rs.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(rs[i] - expect[i]) < 1e-12 * std::abs(expect[i]));
}

TEST_CASE("real polynomials give conjugate-closed root sets", "[roots][property]") {
  for (int alpha = 0; alpha <= 12; ++alpha) {
    const auto rs = find_roots(g_polynomial(alpha, testing::random_beta())).roots;
    REQUIRE(static_cast<int>(rs.size()) == alpha + 1);
    auto conj = rs;
    for (auto& z : conj) z = std::conj(z);
    const auto a = sorted(rs);
    const auto b = sorted(conj);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("roots of random polynomials", "[roots][property]") {
  for (int trial = 0; trial < 50; ++trial) {
    const int deg = 1 + static_cast<int>(testing::uniform(0.0, 15.0));
    std::vector<cplx> truth;
    for (int i = 0; i < deg; ++i) truth.push_back(testing::disk_point(3.0));
    const auto p = from_roots(truth);
    const auto rs = find_roots(p);
    REQUIRE(static_cast<int>(rs.roots.size()) == deg);
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      CHECK(rs.residuals[i] <= detail::root_residual_limit(p, rs.roots[i]));
    }
    for (const cplx t : truth) {
      double best = 1e300;
      for (const cplx r : rs.roots) best = std::min(best, std::abs(r - t));
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("multiple roots are clustered", "[roots]") {
  const auto p = from_roots({cplx{0.5}, cplx{0.5}, cplx{0.5}, cplx{-2.0, 1.0}});
  const auto rs = find_roots(p);
  CHECK(rs.clustered);
  int near_half = 0;
  for (const cplx r : rs.roots) near_half += std::abs(r - 0.5) < 1e-4;
  CHECK(near_half == 3);
}

TEST_CASE("disk counts agree with located roots", "[roots][property]") {
  for (int trial = 0; trial < 40; ++trial) {
    const int alpha = static_cast<int>(testing::uniform(0.0, 10.0));
    const auto p = g_polynomial(alpha, testing::random_beta());
    const double radius = testing::uniform(0.3, 4.0);
    int inside = 0;
    bool near = false;
    for (const cplx r : find_roots(p).roots) {
      inside += std::abs(r) < radius;
      near = near || std::abs(std::abs(r) - radius) < 1e-6;
    }
    if (near) continue;
    CHECK(count_zeros_disk(p, cplx{0.0}, radius).count == inside);
  }
}

TEST_CASE("disk count errors", "[roots]") {
  const auto p = from_roots({cplx{1.0}, cplx{-0.2}});
  CHECK_THROWS_AS(count_zeros_disk(p, cplx{0.0}, 1.0), SingularError);
  CHECK_THROWS_AS(count_zeros_disk(p, cplx{0.0}, -1.0), DomainError);
  CHECK(count_zeros_disk(p, cplx{0.0}, 0.5).count == 1);
  CHECK(count_zeros_disk(p, cplx{1.0}, 0.5).count == 1);
  CHECK(count_zeros_disk(ComplexPoly(std::vector<cplx>{cplx{3.0}}), cplx{0.0}, 2.0).count == 0);
}

TEST_CASE("arg tracking handles roots close to the contour", "[roots]") {
  const auto p = from_roots({cplx{0.0, 1.0 - 2e-7}, cplx{0.0, -1.0 + 2e-7}, cplx{0.3}});
  const auto c = count_zeros_disk(p, cplx{0.0}, 1.0);
  CHECK(c.count == 3);
}
