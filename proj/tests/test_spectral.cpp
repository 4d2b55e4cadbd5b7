#include "doctest.h"
#include "mmf/errors.hpp"
#include "mmf/kernels.hpp"
#include "mmf/spectral.hpp"

#include <chrono>
#include <cmath>

using namespace mmf;
using doctest::Approx;

TEST_CASE("fbm spectral density") {
  CHECK(fbm_sd(HurstIndex(0.5), 3.7).value == Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));
  CHECK(fbm_sd(HurstIndex(0.75), 2.0).value == Approx(0.1057855469152043038).epsilon(1e-14));
  CHECK(fbm_sd(HurstIndex(0.3), -1.3).value == fbm_sd(HurstIndex(0.3), 1.3).value);
  CHECK(std::isinf(fbm_sd(HurstIndex(0.7), 0.0).value));
  CHECK(fbm_sd(HurstIndex(0.3), 0.0).value == 0.0);
  MixtureSpec s({{1.0, 0.25}, {1.0, 0.75}});
  CHECK(mmfbm_sd(s, 1.0).value == Approx(0.24933892525089542371).epsilon(1e-14));
  CHECK(mmfbm_sd(s.scaled(3.0), 1.0).value == Approx(9.0 * 0.24933892525089542371).epsilon(1e-14));
}

TEST_CASE("fou spectral density") {
  CHECK(fou_sd(2.0, HurstIndex(0.5), 1.0).value == Approx(1.0 / (2.0 * M_PI * 5.0)).epsilon(1e-15));
  MixtureSpec s({{1.0, 0.3}, {0.4, 0.8}});
  for (double x : {0.01, 0.5, 3.0, -40.0}) {
    CHECK(mmfou_sd(s, 1.5, x).value * (x * x + 2.25) == Approx(mmfbm_sd(s, x).value).epsilon(1e-14));
    CHECK(mmfou_sd(s, 1.5, x).value >= 0.0);
  }
  CHECK(mmfou_sd(s, 1e8, 1.0).value < 1e-15);
  CHECK_THROWS_AS(fou_sd(0.0, HurstIndex(0.5), 1.0), ParameterError);
}

TEST_CASE("cosine transform of the Bm-driven OU density") {
  MixtureSpec bm({{1.0, 0.5}});
  for (double t : {0.0, 0.3, 1.0, 4.0}) {
    CHECK(spectral_autocov(bm, 1.0, t) == Approx(0.5 * std::exp(-t)).epsilon(1e-8));
  }
}

TEST_CASE("spectral inversion matches the kernel") {
  const MixtureSpec specs[] = {MixtureSpec({{1.0, 0.3}}), MixtureSpec({{1.0, 0.7}}),
                               MixtureSpec({{1.0, 0.3}, {1.0, 0.7}})};
  for (const auto& s : specs) {
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      CAPTURE(s.h_sup());
      CAPTURE(t);
      CHECK(std::abs(spectral_autocov(s, 1.0, t) - mmfou_autocov(s, 1.0, t).value) < 1e-8);
    }
  }
}

TEST_CASE("fourier identity") {
  struct Row { double p, lambda, t, rhs; };
  // Closed form evaluated with mpmath (tests/oracles/special_reference.py).
  const Row rows[] = {{-0.5, 1.0, 1.0, 3.1158398398366566531},
                      {-0.8, 0.5, 2.0, 31.453654023586597485},
                      {-0.2, 2.0, 0.5, 0.71966124446240076609},
                      {-0.01, 1.0, 1.0, 1.17622620310281056723732}};
  for (const auto& r : rows) {
    CAPTURE(r.p);
    const auto c = fourier_identity_check(r.p, r.lambda, r.t);
    CHECK(c.rhs == Approx(r.rhs).epsilon(1e-12));
    CHECK(c.rel_err < 1e-8);
  }
  // p -> 0-: transform of 1/(lambda^2 + x^2).
  const auto near0 = fourier_identity_check(-1e-6, 1.0, 1.0);
  CHECK(near0.lhs == Approx(M_PI * std::exp(-1.0)).epsilon(1e-5));
  CHECK(fourier_identity_check(-0.5, 1.0, -1.0).lhs == Approx(fourier_identity_check(-0.5, 1.0, 1.0).lhs));
  CHECK_THROWS_AS(fourier_identity_check(0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("double gamma integral") {
  for (double a : {-0.4, 0.0, 1.0, 2.5}) {
    CAPTURE(a);
    const auto c = double_gamma_check(a);
    CHECK(c.numeric == Approx(c.exact).epsilon(1e-10));
  }
  CHECK(double_gamma_check(-0.4).exact == Approx(1.4891922488128171533).epsilon(1e-14));
  CHECK_THROWS_AS(double_gamma_check(-1.0), DomainError);
}

TEST_CASE("cfs lower bound is dominated by the density") {
  const MixtureSpec specs[] = {MixtureSpec({{1.0, 0.3}}), MixtureSpec({{1.0, 0.7}}),
                               MixtureSpec({{1.0, 0.3}, {1.0, 0.7}}),
                               MixtureSpec({{0.2, 0.05}, {1.0, 0.45}, {3.0, 0.97}})};
  for (const auto& s : specs) {
    for (int i = 0; i <= 10000; ++i) {
      const double x = std::pow(10.0, -3.0 + 6.0 * i / 10000.0);
      const auto h = cfs_lower_bound(s, std::nullopt, x).value;
      REQUIRE(h > 0.0);
      REQUIRE(mmfbm_sd(s, x).value >= h);
      REQUIRE(mmfou_sd(s, 1.0, x).value >= cfs_lower_bound(s, 1.0, x).value);
    }
  }
  CHECK(cfs_lower_bound(MixtureSpec({{2.0, 0.5}}), std::nullopt, 5.0).value ==
        Approx(4.0 / (2.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("cfs integral") {
  MixtureSpec bm({{1.0, 0.5}});
  for (double x0 : {1.5, 2.0, 10.0})
    CHECK(cfs_integral(bm, std::nullopt, x0) == Approx(std::log(1.0 / (2.0 * M_PI)) / x0).epsilon(1e-12));
  MixtureSpec h7({{1.0, 0.7}});
  CHECK(cfs_integral(h7, std::nullopt, 2.0) == Approx(-1.2551059858424118218).epsilon(1e-10));
  CHECK(cfs_integral(h7, 1.0, 2.0) == Approx(-2.9871201600610742415).epsilon(1e-10));
  CHECK(cfs_integral(h7, std::nullopt, 4.0) == Approx(-0.69686771097720042646).epsilon(1e-10));
  CHECK(std::abs(cfs_integral(h7, 1.0, 8.0)) < std::abs(cfs_integral(h7, 1.0, 4.0)));
  CHECK_THROWS_AS(cfs_integral(h7, std::nullopt, 1.0), ParameterError);
}
