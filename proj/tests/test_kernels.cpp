#include "doctest.h"
#include "mmf/errors.hpp"
#include "mmf/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

using namespace mmf;
using doctest::Approx;

namespace {

struct FouRef { double lambda, h, t, value; };

// Closed forms via mpmath gammainc / hyp1f1 at 40 digits (tests/oracles/fou_reference.py).
const FouRef kFouRefs[] = {
    {1.0, 0.7, 1.0, 0.39447517855134310299},
    {1.0, 0.3, 1.0, 0.061733410504132115987},
    {2.0, 0.3, 0.5, 0.040728861759596407287},
    {0.5, 0.9, 3.0, 2.4258934068003670613},
    {1.0, 0.1, 2.0, -0.010811920644579804938},
    {1.0, 0.05, 0.3, 0.03656426707574898337},
    {1.0, 0.75, 2.0, 0.32641151954426865923},
    {1.0, 0.3, 25.0, -0.0013318422034194211669},
    {1.0, 0.7, 25.0, 0.040650979558800338812},
    {1.0, 0.3, 40.0, -0.00068741186057007589974},
    {3.0, 0.6, 7.0, 0.0028204129848469864191},
    {1.0, 0.5, 2.0, 0.067667641618306345947},
};

}  // namespace

TEST_CASE("fbm covariance") {
  CHECK(fbm_cov(HurstIndex(0.5), 2.0, 3.0).value == Approx(2.0));
  CHECK(fbm_cov(HurstIndex(0.7), 1.5, 1.5).value == Approx(std::pow(1.5, 1.4)));
  CHECK(fbm_cov(HurstIndex(0.3), 0.0, 4.0).value == 0.0);
  CHECK_THROWS_AS(fbm_cov(HurstIndex(0.3), -1.0, 1.0), ParameterError);
  MixtureSpec s({{1.0, 0.3}, {2.0, 0.8}});
  CHECK(mmfbm_cov(s, 1.0, 2.0).value ==
        Approx(fbm_cov_value(0.3, 1.0, 2.0) + 4.0 * fbm_cov_value(0.8, 1.0, 2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(mmfbm_cov(MixtureSpec({{1.0, 0.3}, {1.0, 0.3}}), 1.0, 1.0), ParameterError);
}

TEST_CASE("fbm gram matrix is positive definite and generic over the scalar") {
  MixtureSpec s({{1.0, 0.2}, {0.5, 0.6}, {0.3, 0.95}});
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  Eigen::VectorXd times(40);
  for (auto& t : times) t = u(gen);
  const Eigen::MatrixXd cov = mmfbm_cov_matrix(s, times);
  CHECK((cov - cov.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  CHECK(es.eigenvalues().minCoeff() > -1e-12 * es.eigenvalues().maxCoeff());

  const Eigen::VectorXf tf = times.cast<float>();
  const Eigen::MatrixXf covf = mmfbm_cov_matrix(s, tf);
  CHECK((covf.cast<double>() - cov).cwiseAbs().maxCoeff() < 1e-4 * cov.cwiseAbs().maxCoeff());
}

TEST_CASE("fgn autocovariance") {
  MixtureSpec s({{1.0, 0.75}});
  // 1/2 ((t+1)^{1.5} + (t-1)^{1.5} - 2 t^{1.5}) at t = 10.
  CHECK(fgn_autocov(s, 1.0, 10.0).value == Approx(0.11865974527090585014).epsilon(1e-14));
  CHECK(fgn_autocov(MixtureSpec({{2.0, 0.5}}), 1.0, 7.0).value == 0.0);
  CHECK(fgn_autocov(MixtureSpec({{1.0, 0.3}}), 1.0, 1.0).value ==
        Approx(0.5 * (std::pow(2.0, 0.6) - 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(fgn_autocov(s, 1.0, 0.5), ParameterError);

  // Series branch against a long-double direct evaluation at moderate lags.
  for (double h : {0.1, 0.3, 0.6, 0.9}) {
    for (double t : {3.5, 4.0, 20.0, 300.0}) {
      const long double a = 2.0L * h, tl = t;
      const long double direct = 0.5L * (std::pow(tl + 1.0L, a) + std::pow(tl - 1.0L, a) - 2.0L * std::pow(tl, a));
      CHECK(fgn_component_value(h, 1.0, t) == Approx(static_cast<double>(direct)).epsilon(1e-10));
    }
  }
}

TEST_CASE("fgn asymptotic slope") {
  MixtureSpec s({{1.0, 0.3}, {1.0, 0.8}});
  for (double t : {1e3, 1e4, 1e5}) {
    const double exact = fgn_autocov(s, 1.0, t).value;
    const double asym = fgn_autocov_asymptotic(s, 1.0, t).value;
    CHECK(exact / asym == Approx(1.0).epsilon(10.0 / t));
  }
}

TEST_CASE("fou quadrature branch against closed-form references") {
  for (const auto& r : kFouRefs) {
    CAPTURE(r.h);
    CAPTURE(r.t);
    const double v = fou_autocov_quadrature(r.lambda, HurstIndex(r.h), r.t).value;
    CHECK(v == Approx(r.value).epsilon(1e-11));
  }
}

TEST_CASE("quadrature branch keeps relative accuracy when the kernel is exponentially small") {
  for (double x : {20.0, 30.0, 40.0})
    CHECK(fou_autocov_quadrature(1.0, HurstIndex(0.5), x).value == Approx(0.5 * std::exp(-x)).epsilon(1e-12));
}

TEST_CASE("fou gamma form agrees with references for H >= 1/2") {
  for (const auto& r : kFouRefs) {
    if (r.h < 0.5) continue;
    CAPTURE(r.h);
    CAPTURE(r.t);
    CHECK(fou_autocov_gamma_form(r.lambda, HurstIndex(r.h), r.t).value == Approx(r.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(fou_autocov_gamma_form(1.0, HurstIndex(0.3), 1.0), DomainError);
}

TEST_CASE("fou kernel at lag zero is the stationary variance") {
  for (double h : {0.1, 0.5, 0.8}) {
    for (double lam : {0.5, 2.0}) {
      const double v0 = fou_var0(lam, HurstIndex(h));
      CHECK(fou_autocov(lam, HurstIndex(h), 0.0).value == Approx(v0).epsilon(1e-13));
      CHECK(v0 == Approx(std::pow(lam, -2.0 * h) * h * std::tgamma(2.0 * h)).epsilon(1e-15));
    }
  }
}

TEST_CASE("H = 1/2 takes the exponential special case") {
  const auto v = fou_autocov(1.5, HurstIndex(0.5), 2.0);
  CHECK(v.branch == KernelBranch::special_case_H_half);
  CHECK(v.value == Approx(std::exp(-3.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("branch dispatch and continuity at the crossover") {
  KernelConfig cfg;
  for (double h : {0.1, 0.3, 0.7, 0.9}) {
    CAPTURE(h);
    const double t_c = cfg.crossover;
    const auto below = fou_autocov(1.0, HurstIndex(h), t_c, cfg);
    const auto above = fou_autocov(1.0, HurstIndex(h), std::nextafter(t_c, INFINITY), cfg);
    CHECK(below.branch == KernelBranch::quadrature);
    CHECK(above.branch == KernelBranch::asymptotic);
    CHECK(std::abs(below.value - above.value) <= 1e-8 * std::abs(below.value));
  }
}

TEST_CASE("large-lag expansion") {
  const double lam = 1.0, t = 200.0;
  for (double h : {0.3, 0.7}) {
    const double q = fou_autocov_quadrature(lam, HurstIndex(h), t).value;
    const double a = fou_autocov_asymptotic(lam, HurstIndex(h), t, AsymptoticOrder(5)).value;
    CHECK(a == Approx(q).epsilon(1e-11));
  }
  // Leading term H(2H-1) lambda^{-2} t^{2H-2}.
  CHECK(fou_autocov_asymptotic(2.0, HurstIndex(0.7), 10.0, AsymptoticOrder(1)).value ==
        Approx(0.7 * 0.4 / 4.0 * std::pow(10.0, -0.6)).epsilon(1e-14));
  CHECK_THROWS_AS(AsymptoticOrder(0), ParameterError);
}

TEST_CASE("mixture fou kernel") {
  MixtureSpec s({{1.0, 0.3}, {0.5, 0.7}});
  const double v = mmfou_autocov(s, 1.0, 1.0).value;
  CHECK(v == Approx(0.061733410504132115987 + 0.25 * 0.39447517855134310299).epsilon(1e-11));
  const auto tab = mmfou_lag_table(s, 1.0, 0.5, 5);
  CHECK(tab(2) == Approx(v).epsilon(1e-15));
  Eigen::VectorXd times(4);
  times << 0.0, 0.5, 1.25, 3.0;
  const auto cov = mmfou_cov_matrix(s, 1.0, times);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  CHECK(llt.info() == Eigen::Success);
  CHECK(cov(3, 0) == Approx(mmfou_autocov(s, 1.0, 3.0).value).epsilon(1e-15));
  CHECK_THROWS_AS(mmfou_autocov(s, 0.0, 1.0), ParameterError);
}
