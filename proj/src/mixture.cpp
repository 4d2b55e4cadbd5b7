#include "mmf/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmf/errors.hpp"

namespace mmf {

HurstIndex::HurstIndex(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream os;
    os << "Hurst index " << value << " outside (0, 1)";
    throw DomainError(os.str());
  }
}

double MixtureSpec::h_inf() const noexcept {
  if (components_.empty()) return std::numeric_limits<double>::quiet_NaN();
  double h = components_.front().hurst;
  for (const auto& c : components_) h = std::min(h, c.hurst);
  return h;
}

double MixtureSpec::h_sup() const noexcept {
  if (components_.empty()) return std::numeric_limits<double>::quiet_NaN();
  double h = components_.front().hurst;
  for (const auto& c : components_) h = std::max(h, c.hurst);
  return h;
}

double MixtureSpec::sigma_sq_sum() const noexcept {
  double s = 0.0;
  for (const auto& c : components_) s += c.sigma * c.sigma;
  return s;
}

MixtureSpec MixtureSpec::scaled(double c) const {
  std::vector<Component> out = components_;
  for (auto& comp : out) comp.sigma *= c;
  return MixtureSpec(std::move(out), lambda_);
}

std::string_view to_string(Assumption a) noexcept {
  switch (a) {
    case Assumption::non_empty: return "non_empty";
    case Assumption::sigma_positive: return "sigma_positive";
    case Assumption::square_summable: return "square_summable";
    case Assumption::hurst_bounds: return "hurst_bounds";
    case Assumption::hurst_distinct: return "hurst_distinct";
    case Assumption::lambda_positive: return "lambda_positive";
  }
  return "unknown";
}

std::string ValidationReport::message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << '\n';
    os << to_string(violations[i].assumption) << ": " << violations[i].detail;
  }
  return os.str();
}

ValidationReport validate_spec(const MixtureSpec& spec) {
  ValidationReport r;
  auto fail = [&](Assumption a, std::size_t idx, std::string detail) {
    r.ok = false;
    r.violations.push_back({a, idx, std::move(detail)});
  };
  const auto& comps = spec.components();
  if (comps.empty()) fail(Assumption::non_empty, 0, "mixture has no components");

  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& c = comps[k];
    if (!(std::isfinite(c.sigma) && c.sigma > 0.0)) {
      std::ostringstream os;
      os << "components[" << k << "].sigma = " << c.sigma << " must be finite and > 0";
      fail(Assumption::sigma_positive, k, os.str());
    }
    if (!(c.hurst > 0.0 && c.hurst < 1.0)) {
      std::ostringstream os;
      os << "components[" << k << "].hurst = " << c.hurst << " must satisfy 0 < H < 1";
      fail(Assumption::hurst_bounds, k, os.str());
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (comps[l].hurst == c.hurst) {
        std::ostringstream os;
        os << "components[" << l << "] and components[" << k << "] share hurst = " << c.hurst
           << "; Hurst indices must be pairwise distinct";
        fail(Assumption::hurst_distinct, k, os.str());
      }
    }
  }
  if (r.ok && !std::isfinite(spec.sigma_sq_sum())) {
    fail(Assumption::square_summable, 0, "sum of sigma_k^2 is not finite");
  }
  if (spec.lambda() && !(std::isfinite(*spec.lambda()) && *spec.lambda() > 0.0)) {
    std::ostringstream os;
    os << "lambda = " << *spec.lambda() << " must be finite and > 0";
    fail(Assumption::lambda_positive, 0, os.str());
  }
  return r;
}

void require_valid(const MixtureSpec& spec) {
  auto r = validate_spec(spec);
  if (!r.ok) throw ParameterError("invalid mixture: " + r.message());
}

double require_lambda(const MixtureSpec& spec) {
  require_valid(spec);
  if (!spec.lambda()) throw ParameterError("lambda_positive: mixture has no lambda; an OU model needs lambda > 0");
  return *spec.lambda();
}

std::string_view to_string(ScheduleKind k) noexcept {
  switch (k) {
    case ScheduleKind::harmonic: return "harmonic";
    case ScheduleKind::factorial: return "factorial";
    case ScheduleKind::exponential: return "exponential";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "harmonic") return ScheduleKind::harmonic;
  if (name == "factorial") return ScheduleKind::factorial;
  if (name == "exponential") return ScheduleKind::exponential;
  throw ParameterError("schedule kind '" + std::string(name) +
                       "' is not one of harmonic, factorial, exponential");
}

double schedule_sigma(const ScheduleFamily& family, int i) {
  if (i < 1) throw ParameterError("schedule index must be >= 1");
  switch (family.kind) {
    case ScheduleKind::harmonic: return std::pow(static_cast<double>(i), -family.decay);
    case ScheduleKind::factorial: return std::exp(-std::lgamma(static_cast<double>(i) + 1.0));
    case ScheduleKind::exponential: return std::exp(-family.decay * static_cast<double>(i));
  }
  return 0.0;
}

namespace {

void check_range(const ScheduleFamily& f) {
  if (!(f.h_lo > 0.0 && f.h_lo <= f.h_hi && f.h_hi < 1.0)) {
    std::ostringstream os;
    os << "hurst range [" << f.h_lo << ", " << f.h_hi << "] must satisfy 0 < h_lo <= h_hi < 1";
    throw ParameterError(os.str());
  }
}

}  // namespace

MixtureSpec make_schedule(const ScheduleFamily& family) {
  check_range(family);
  if (family.count < 1) throw ParameterError("schedule count must be >= 1");
  if (family.count > 1 && family.h_lo == family.h_hi) {
    throw ParameterError("hurst_distinct: a degenerate range [h, h] only supports count = 1");
  }
  std::vector<Component> comps;
  comps.reserve(static_cast<std::size_t>(family.count));
  for (int i = 1; i <= family.count; ++i) {
    double h = family.h_lo;
    if (family.count > 1) {
      h = family.h_lo + (i - 1) * (family.h_hi - family.h_lo) / (family.count - 1);
    }
    comps.push_back({schedule_sigma(family, i), h});
  }
  return MixtureSpec(std::move(comps));
}

double infinite_schedule_hurst(const ScheduleFamily& family, int k) {
  if (k < 1) throw ParameterError("schedule index must be >= 1");
  return family.h_lo + (family.h_hi - family.h_lo) * (1.0 - 1.0 / k);
}

double schedule_tail_sum(const ScheduleFamily& family, int retained) {
  if (retained < 0) throw ParameterError("retained count must be >= 0");
  const double K = retained;
  switch (family.kind) {
    case ScheduleKind::harmonic: {
      const double b = 2.0 * family.decay;
      if (!(b > 1.0)) {
        throw ParameterError("square_summable: harmonic schedule with decay " +
                             std::to_string(family.decay) + " has sum sigma_k^2 = infinity");
      }
      // sum_{k>K} k^{-b} <= int_K^inf x^{-b} dx; K = 0 adds the k = 1 term.
      if (retained == 0) return 1.0 + 1.0 / (b - 1.0);
      return std::pow(K, 1.0 - b) / (b - 1.0);
    }
    case ScheduleKind::factorial: {
      double sum = 0.0;
      for (int k = retained + 1;; ++k) {
        const double term = std::exp(-2.0 * std::lgamma(k + 1.0));
        sum += term;
        if (term <= 1e-18 * sum || term == 0.0) break;
      }
      return sum;
    }
    case ScheduleKind::exponential: {
      const double r = family.decay;
      if (!(r > 0.0)) {
        throw ParameterError("square_summable: exponential schedule with decay " +
                             std::to_string(r) + " has sum sigma_k^2 = infinity");
      }
      return std::exp(-2.0 * r * (K + 1.0)) / (-std::expm1(-2.0 * r));
    }
  }
  return 0.0;
}

std::pair<MixtureSpec, TruncationReport> truncate_schedule(const ScheduleFamily& family,
                                                           double eps, double horizon) {
  if (!(eps > 0.0)) throw ParameterError("truncation eps must be > 0");
  if (!(horizon > 0.0)) throw ParameterError("horizon T must be > 0");
  check_range(family);
  const double scale = std::max(1.0, horizon * horizon * horizon);
  auto bound = [&](int K) { return scale * schedule_tail_sum(family, K); };

  int K = 1;
  if (family.kind == ScheduleKind::harmonic) {
    // Closed-form inversion of the integral bound, then correct for rounding.
    const double b = 2.0 * family.decay;
    bound(1);  // rejects non-summable decay before any arithmetic
    const double guess = std::pow((b - 1.0) * eps / scale, 1.0 / (1.0 - b));
    if (!(guess < 1e9)) throw ParameterError("truncation needs more than 1e9 components");
    K = std::max(1, static_cast<int>(std::ceil(guess)));
    while (K > 1 && bound(K - 1) <= eps) --K;
    while (bound(K) > eps) ++K;
  } else {
    while (bound(K) > eps) {
      ++K;
      if (K > 100000) throw ParameterError("truncation did not reach eps");
    }
  }

  if (K > 1 && family.h_lo == family.h_hi) {
    throw ParameterError("hurst_distinct: truncation with K > 1 needs h_lo < h_hi");
  }
  std::vector<Component> comps;
  comps.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    comps.push_back({schedule_sigma(family, k), infinite_schedule_hurst(family, k)});
  }
  return {MixtureSpec(std::move(comps)), TruncationReport{K, bound(K), horizon}};
}

}  // namespace mmf
