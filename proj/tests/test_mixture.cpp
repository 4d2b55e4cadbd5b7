#include "doctest.h"
#include "mmf/errors.hpp"
#include "mmf/mixture.hpp"

#include <cmath>

using namespace mmf;

TEST_CASE("hurst index rejects the closed endpoints") {
  CHECK_THROWS_AS(HurstIndex(0.0), DomainError);
  CHECK_THROWS_AS(HurstIndex(1.0), DomainError);
  CHECK_THROWS_AS(HurstIndex(1.2), DomainError);
  CHECK(HurstIndex(0.3).value() == 0.3);
}

TEST_CASE("validation names the broken assumption") {
  MixtureSpec dup({{1.0, 0.3}, {2.0, 0.3}});
  auto r = validate_spec(dup);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].assumption == Assumption::hurst_distinct);
  CHECK(r.message().find("hurst_distinct") != std::string::npos);

  auto neg = validate_spec(MixtureSpec({{-1.0, 0.3}}));
  REQUIRE_FALSE(neg.ok);
  CHECK(neg.violations[0].assumption == Assumption::sigma_positive);

  CHECK(validate_spec(MixtureSpec{}).violations[0].assumption == Assumption::non_empty);
  CHECK(validate_spec(MixtureSpec({{1.0, 0.3}}, -1.0)).violations[0].assumption == Assumption::lambda_positive);
  CHECK_THROWS_AS(require_valid(dup), ParameterError);
  CHECK_THROWS_AS(require_lambda(MixtureSpec({{1.0, 0.3}})), ParameterError);
  CHECK(require_lambda(MixtureSpec({{1.0, 0.3}}, 2.0)) == 2.0);
}

TEST_CASE("spec summaries") {
  MixtureSpec s({{1.0, 0.7}, {2.0, 0.2}, {0.5, 0.4}});
  CHECK(s.h_inf() == 0.2);
  CHECK(s.h_sup() == 0.7);
  CHECK(s.sigma_sq_sum() == doctest::Approx(5.25));
  CHECK(s.scaled(2.0).sigma_sq_sum() == doctest::Approx(21.0));
}

TEST_CASE("harmonic schedule truncation") {
  ScheduleFamily f{ScheduleKind::harmonic, 0.1, 0.9, 0, 1.0};
  auto [spec, rep] = truncate_schedule(f, 1e-4, 2.0);
  CHECK(rep.retained == 80000);
  CHECK(rep.tail_bound <= 1e-4);
  CHECK(schedule_tail_sum(f, rep.retained - 1) * 8.0 > 1e-4);
  CHECK(spec.size() == 80000u);
  CHECK(validate_spec(spec).ok);
}

TEST_CASE("exponential schedule 2^-k truncation") {
  ScheduleFamily f{ScheduleKind::exponential, 0.1, 0.9, 0, std::log(2.0)};
  auto [spec, rep] = truncate_schedule(f, 1e-6, 1.0);
  CHECK(rep.retained == 10);
  CHECK(rep.tail_bound == doctest::Approx(std::pow(4.0, -10) / 3.0).epsilon(1e-12));
  CHECK(spec.components()[9].sigma == doctest::Approx(std::pow(2.0, -10)));
}

TEST_CASE("factorial schedule") {
  ScheduleFamily f{ScheduleKind::factorial, 0.2, 0.8, 4, 1.0};
  auto spec = make_schedule(f);
  CHECK(spec.components()[3].sigma == doctest::Approx(1.0 / 24.0));
  CHECK(spec.components()[3].hurst == doctest::Approx(0.8));
  auto [t, rep] = truncate_schedule(f, 1e-10, 1.0);
  CHECK(rep.tail_bound <= 1e-10);
  CHECK(schedule_tail_sum(f, rep.retained - 1) > 1e-10);
}

TEST_CASE("non square-summable schedules are rejected") {
  CHECK_THROWS_AS(truncate_schedule({ScheduleKind::harmonic, 0.1, 0.9, 0, 0.5}, 1e-3, 1.0), ParameterError);
  CHECK_THROWS_AS(truncate_schedule({ScheduleKind::exponential, 0.1, 0.9, 0, 0.0}, 1e-3, 1.0), ParameterError);
  CHECK_THROWS_AS(make_schedule({ScheduleKind::harmonic, 0.5, 0.5, 3, 1.0}), ParameterError);
  CHECK_THROWS_AS(parse_schedule_kind("geometric"), ParameterError);
}

TEST_CASE("infinite family hurst indices are distinct and bounded") {
  ScheduleFamily f{};
  double prev = -1.0;
  for (int k = 1; k < 200; ++k) {
    const double h = infinite_schedule_hurst(f, k);
    CHECK(h > prev);
    CHECK(h < f.h_hi);
    prev = h;
  }
}
