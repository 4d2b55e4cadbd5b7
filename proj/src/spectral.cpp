#include "mmf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "mmf/errors.hpp"
#include "mmf/special.hpp"

namespace mmf {
namespace {

double fbm_sd_const(double h) { return std::sin(M_PI * h) * std::tgamma(1.0 + 2.0 * h) / (2.0 * M_PI); }

double power_at(double x, double exponent) {
  const double ax = std::abs(x);
  if (ax == 0.0) {
    if (exponent < 0.0) return std::numeric_limits<double>::infinity();
    return exponent > 0.0 ? 0.0 : 1.0;
  }
  return std::pow(ax, exponent);
}

void require_lambda_pos(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "lambda = " << lambda << " must be finite and > 0";
    throw ParameterError(os.str());
  }
}

double mmfbm_sd_unchecked(const MixtureSpec& spec, double x) {
  double v = 0.0;
  for (const auto& c : spec.components()) v += c.sigma * c.sigma * fbm_sd_const(c.hurst) * power_at(x, 1.0 - 2.0 * c.hurst);
  return v;
}

// log of the density at x >= 1 without overflow, using log-sum-exp over components.
double log_density(const MixtureSpec& spec, std::optional<double> lambda, double x) {
  const double lx = std::log(x);
  std::vector<double> terms;
  terms.reserve(spec.size());
  for (const auto& c : spec.components())
    terms.push_back(std::log(c.sigma * c.sigma * fbm_sd_const(c.hurst)) + (1.0 - 2.0 * c.hurst) * lx);
  const double m = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  double out = m + std::log(s);
  if (lambda) {
    const double l = *lambda;
    out -= x >= l ? 2.0 * lx + std::log1p((l / x) * (l / x)) : std::log(l * l + x * x);
  }
  return out;
}

}  // namespace

SpectralValue fbm_sd(HurstIndex hurst, double x) {
  if (std::isnan(x)) throw ParameterError("frequency is NaN");
  return {fbm_sd_const(hurst) * power_at(x, 1.0 - 2.0 * hurst.value()), x};
}

SpectralValue mmfbm_sd(const MixtureSpec& spec, double x) {
  require_valid(spec);
  if (std::isnan(x)) throw ParameterError("frequency is NaN");
  return {mmfbm_sd_unchecked(spec, x), x};
}

SpectralValue fou_sd(double lambda, HurstIndex hurst, double x) {
  require_lambda_pos(lambda);
  const auto f = fbm_sd(hurst, x);
  return {f.value / (x * x + lambda * lambda), x};
}

SpectralValue mmfou_sd(const MixtureSpec& spec, double lambda, double x) {
  require_lambda_pos(lambda);
  const auto f = mmfbm_sd(spec, x);
  return {f.value / (x * x + lambda * lambda), x};
}

double spectral_autocov(const MixtureSpec& spec, double lambda, double t, const QuadratureSpec& q) {
  require_valid(spec);
  require_lambda_pos(lambda);
  if (!(t >= 0.0)) throw ParameterError("spectral_autocov needs t >= 0");
  const double l2 = lambda * lambda;
  auto f = [&](double x) { return mmfbm_sd_unchecked(spec, x) / (x * x + l2); };
  EndpointBehavior ends;
  ends.left_exponent = 1.0 - 2.0 * spec.h_sup();
  ends.tail_exponent = -1.0 - 2.0 * spec.h_inf();
  return 2.0 * integrate_cosine(f, t, q, ends).value;
}

IdentityCheck fourier_identity_check(double p, double lambda, double t, const QuadratureSpec& q) {
  if (!(p > -1.0 && p < 0.0)) throw DomainError("fourier_identity_check needs -1 < p < 0");
  require_lambda_pos(lambda);
  if (!(t != 0.0) || !std::isfinite(t)) throw ParameterError("fourier_identity_check needs finite t != 0");
  const double l2 = lambda * lambda;
  auto f = [&](double x) { return std::pow(x, p) / (l2 + x * x); };
  EndpointBehavior ends;
  ends.left_exponent = p;
  ends.tail_exponent = p - 2.0;
  IdentityCheck out;
  out.lhs = 2.0 * integrate_cosine(f, std::abs(t), q, ends).value;
  const double x = lambda * std::abs(t);
  const double brace = std::exp(-x) + inc_gamma_pos_scaled(-p, x) + upper_gamma_reg_scaled(-p, x);
  out.rhs = M_PI / (2.0 * std::cos(0.5 * p * M_PI) * std::pow(lambda, 1.0 - p)) * brace;
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

DoubleGammaCheck double_gamma_check(double alpha, const QuadratureSpec& q) {
  if (!(alpha > -1.0)) throw DomainError("double_gamma_check needs alpha > -1");
  EndpointBehavior sing;
  sing.left_exponent = alpha;
  auto pw = [alpha](double v) { return v > 0.0 ? std::pow(v, alpha) : (alpha == 0.0 ? 1.0 : 0.0); };
  // Inner integral over x at fixed y, split at x = y: the x > y half is
  // e^{-2y} int_0^inf e^{-v} v^alpha dv.
  const double upper_half = integrate([&](double v) { return std::exp(-v) * pw(v); }, 0.0, INFINITY, q, sing).value;
  auto inner = [&](double y) {
    if (y == 0.0) return upper_half;
    const double lower = integrate([&](double v) { return std::exp(v - 2.0 * y) * pw(v); }, 0.0, y, q, sing).value;
    return lower + std::exp(-2.0 * y) * upper_half;
  };
  DoubleGammaCheck out;
  out.numeric = integrate(inner, 0.0, INFINITY, q).value;
  out.exact = gamma_fn(alpha + 1.0);
  return out;
}

SpectralValue cfs_lower_bound(const MixtureSpec& spec, std::optional<double> lambda, double x) {
  require_valid(spec);
  if (lambda) require_lambda_pos(*lambda);
  const double hi = spec.h_inf(), hs = spec.h_sup();
  const double eps = std::min(std::sin(M_PI * hi), std::sin(M_PI * hs));
  const double g = gamma_min_on(1.0 + 2.0 * hi, 1.0 + 2.0 * hs);
  const double amp = eps * g * spec.sigma_sq_sum() / (2.0 * M_PI);
  const double exponent = std::abs(x) <= 1.0 ? 1.0 - 2.0 * hi : 1.0 - 2.0 * hs;
  double v = amp * power_at(x, exponent);
  if (lambda) v /= x * x + *lambda * *lambda;
  return {v, x};
}

double cfs_integral(const MixtureSpec& spec, std::optional<double> lambda, double x0, const QuadratureSpec& q) {
  require_valid(spec);
  if (lambda) require_lambda_pos(*lambda);
  if (!(x0 > 1.0) || !std::isfinite(x0)) throw ParameterError("cfs_integral needs finite x0 > 1");
  // x = x0 / u maps [x0, inf) onto (0, 1]; log f grows like log(1/u) at u = 0.
  auto g = [&](double u) { return log_density(spec, lambda, x0 / u); };
  EndpointBehavior ends;
  ends.left_exponent = -0.5;
  double v = 0.0;
  try {
    v = integrate(g, 0.0, 1.0, q, ends).value / x0;
  } catch (const ConvergenceError& e) {
    throw NumericalError(std::string("cfs integral diverges or failed to converge: ") + e.what());
  }
  if (!std::isfinite(v)) throw NumericalError("cfs integral is not finite");
  return v;
}

}  // namespace mmf
