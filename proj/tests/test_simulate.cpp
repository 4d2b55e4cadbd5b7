#include "doctest.h"
#include "mmf/errors.hpp"
#include "mmf/mc.hpp"
#include "mmf/simulate.hpp"

#include <cmath>

using namespace mmf;
using doctest::Approx;

TEST_CASE("grid") {
  PathGrid g(2.0, 5);
  CHECK(g.step() == 0.5);
  CHECK(g.time(4) == 2.0);
  CHECK(g.times()(3) == 1.5);
  CHECK_THROWS_AS(PathGrid(1.0, 1), ParameterError);
  CHECK_THROWS_AS(PathGrid(0.0, 10), ParameterError);
  CHECK(parse_method("circulant_sum") == Method::circulant_sum);
  CHECK_THROWS_AS(parse_method("spectral"), ParameterError);
}

TEST_CASE("random streams are deterministic and split") {
  GaussianStream a(7), b(7), c(8);
  for (int i = 0; i < 10; ++i) {
    const double x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CHECK(derive_seed(1, StreamTag::component, 0) != derive_seed(1, StreamTag::component, 1));
  CHECK(derive_seed(1, StreamTag::component, 0) != derive_seed(1, StreamTag::dense, 0));
}

TEST_CASE("robust cholesky escalates the ridge") {
  Eigen::VectorXd v(3);
  v << 1.0, 2.0, 3.0;
  const Eigen::MatrixXd rank1 = v * v.transpose();
  double ridge = -1.0;
  const Eigen::MatrixXd l = robust_cholesky(rank1, &ridge);
  CHECK(ridge > 0.0);
  CHECK((l * l.transpose() - rank1).norm() < 1e-6);
  double none = -1.0;
  robust_cholesky(Eigen::MatrixXd::Identity(3, 3), &none);
  CHECK(none == 0.0);
  Eigen::MatrixXd bad = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(robust_cholesky(bad), FactorizationError);
}

TEST_CASE("circulant embedding eigenvalues are non-negative for fGn") {
  for (double h : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    const auto root = circulant_root(h, 1.0 / 255.0, 255);
    CHECK(root.size() == 510);
    CHECK(root.minCoeff() >= 0.0);
    // sum of eigenvalues / M equals gamma(0) = h^{2H}
    CHECK(root.squaredNorm() == Approx(std::pow(1.0 / 255.0, 2.0 * h)).epsilon(1e-10));
  }
}

TEST_CASE("paths start at zero and are reproducible") {
  MixtureSpec s({{1.0, 0.3}, {0.5, 0.8}});
  PathGrid g(1.0, 65);
  for (Method m : {Method::dense_exact, Method::circulant_sum}) {
    const auto a = simulate_mmfbm(s, g, 42, m);
    const auto b = simulate_mmfbm(s, g, 42, m);
    const auto c = simulate_mmfbm(s, g, 43, m);
    CHECK(a.values(0) == 0.0);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.method == m);
  }
  const auto u = simulate_mmfou(s.with_lambda(1.0), 1.0, g, 42, Method::dense_exact);
  CHECK(u.values(0) != 0.0);
  CHECK(u.values == simulate_mmfou(s, 1.0, g, 42, Method::dense_exact).values);
  CHECK_THROWS_AS(simulate_mmfou(s, 1.0, g, 1, Method::circulant_sum), ParameterError);
  CHECK_THROWS_AS(simulate_mmfbm(s, PathGrid(1.0, 5000), 1, Method::dense_exact), ParameterError);
}

TEST_CASE("component subseeds make truncations share their common components") {
  MixtureSpec small({{1.0, 0.3}, {0.5, 0.6}});
  MixtureSpec large({{1.0, 0.3}, {0.5, 0.6}, {0.1, 0.8}});
  MixtureSpec larger({{1.0, 0.3}, {0.5, 0.6}, {0.2, 0.8}});
  PathGrid g(1.0, 33);
  const auto a = simulate_mmfbm(small, g, 9, Method::circulant_sum).values;
  const Eigen::VectorXd d1 = simulate_mmfbm(large, g, 9, Method::circulant_sum).values - a;
  const Eigen::VectorXd d2 = simulate_mmfbm(larger, g, 9, Method::circulant_sum).values - a;
  // Both differences are the same third component, scaled by sigma.
  CHECK(d1.norm() > 0.0);
  CHECK((d2 - 2.0 * d1).norm() < 1e-13);
}

TEST_CASE("simulated covariance matches the kernel") {
  const MixtureSpec specs[] = {MixtureSpec({{1.0, 0.3}}), MixtureSpec({{1.0, 0.7}}),
                               MixtureSpec({{0.5, 0.25}, {0.5, 0.75}})};
  PathGrid g(1.0, 64);
  const auto pairs = spread_pairs(g, 20);
  CHECK(pairs.size() >= 20);
  for (const auto& s : specs) {
    auto analytic = [&](double a, double b) { return mmfbm_cov(s, a, b).value; };
    for (Method m : {Method::dense_exact, Method::circulant_sum}) {
      MmfbmSampler sampler(s, g, m);
      const auto r = mc_cov_test(make_simulator(sampler), g, analytic, pairs, 4000, 5);
      CAPTURE(to_json(r));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("negative control fails") {
  MixtureSpec s({{1.0, 0.5}});
  PathGrid g(1.0, 32);
  MmfbmSampler sampler(s, g, Method::circulant_sum);
  auto perturbed = [&](double a, double b) { return 1.1 * std::min(a, b); };
  const auto r = mc_cov_test(make_simulator(sampler), g, perturbed, {{16, 16}, {8, 31}, {31, 31}}, 10000, 3);
  CHECK_FALSE(r.pass);
}

TEST_CASE("standard error shrinks like sqrt(n)") {
  MixtureSpec s({{1.0, 0.5}});
  PathGrid g(1.0, 16);
  MmfbmSampler sampler(s, g, Method::dense_exact);
  auto analytic = [](double a, double b) { return std::min(a, b); };
  const auto r1 = mc_cov_test(make_simulator(sampler), g, analytic, {{15, 15}}, 4000, 1);
  const auto r2 = mc_cov_test(make_simulator(sampler), g, analytic, {{15, 15}}, 8000, 1);
  CHECK(r1.checks[0].std_error / r2.checks[0].std_error == Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(to_json(r1) == to_json(mc_cov_test(make_simulator(sampler), g, analytic, {{15, 15}}, 4000, 1)));
}

TEST_CASE("marginals are gaussian and increments stationary") {
  MixtureSpec s({{1.0, 0.3}, {1.0, 0.7}});
  PathGrid g(1.0, 32);
  MmfbmSampler sampler(s, g, Method::circulant_sum);
  const auto mom = mc_marginal_moments(make_simulator(sampler), g, 20000, 17);
  for (Eigen::Index i = 1; i < 32; ++i) {
    CHECK(std::abs(mom.skewness(i)) <= 0.1);
    CHECK(std::abs(mom.excess_kurtosis(i)) <= 0.2);
  }
  // Var(M_{t+h} - M_t): the shifted-difference process has zero mean.
  const double h = g.step();
  const double exact = std::pow(h, 0.6) + std::pow(h, 1.4);
  Eigen::VectorXd x;
  for (std::size_t start : {0u, 10u, 30u}) {
    double s2 = 0.0, s4 = 0.0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
      sampler.sample_into(derive_seed(23, StreamTag::path, k), x);
      const double d = x(start + 1) - x(start);
      s2 += d * d;
      s4 += d * d * d * d;
    }
    const double v = s2 / n;
    const double se = std::sqrt((s4 / n - v * v) / n);
    CHECK(std::abs(v - exact) <= 3.0 * se);
  }
}

TEST_CASE("mmfOU stationarity and variance") {
  MixtureSpec bm({{1.0, 0.5}});
  PathGrid g(2.0, 40);
  MmfouSampler dense(bm, 1.0, g, Method::dense_exact);
  const auto mom = mc_marginal_moments(make_simulator(dense), g, 10000, 8);
  for (Eigen::Index i = 0; i < 40; i += 13) {
    const double se = 0.5 * std::sqrt(2.0 / 10000.0);
    CHECK(std::abs(mom.variance(i) - 0.5) <= 3.0 * se);
    CHECK(std::abs(mom.mean(i)) <= 3.0 * std::sqrt(0.5 / 10000.0));
  }

  MixtureSpec mix({{1.0, 0.3}, {1.0, 0.7}});
  MmfouSampler mdense(mix, 1.0, g, Method::dense_exact);
  auto kernel = [&](double lag) { return mmfou_autocov(mix, 1.0, lag).value; };
  const auto r = mc_stationarity_test(make_simulator(mdense), g, {0, 1, 5}, {0, 10, 25}, 10000, 4, 4.0,
                                      AutocovHandle(kernel));
  CAPTURE(to_json(r));
  CHECK(r.pass);
  CHECK(r.checks.size() == 3 * 2 + 3 * 3);
}

TEST_CASE("langevin euler is flagged at coarse steps") {
  MixtureSpec s({{1.0, 0.3}});
  PathGrid coarse(20.0, 41);
  MmfouSampler euler(s, 1.0, coarse, Method::langevin_euler);
  auto kernel = [&](double lag) { return mmfou_autocov(s, 1.0, lag).value; };
  const auto r =
      mc_stationarity_test(make_simulator(euler), coarse, {0, 1}, {0, 20, 39}, 10000, 6, 4.0, AutocovHandle(kernel));
  CHECK_FALSE(r.pass);
}
