#include "mmf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmf/errors.hpp"
#include "mmf/special.hpp"

namespace mmf {

const char* to_string(KernelBranch b) noexcept {
  switch (b) {
    case KernelBranch::closed_form: return "closed_form";
    case KernelBranch::quadrature: return "quadrature";
    case KernelBranch::asymptotic: return "asymptotic";
    case KernelBranch::special_case_H_half: return "special_case_H_half";
  }
  return "unknown";
}

AsymptoticOrder::AsymptoticOrder(int n_terms) : n_(n_terms) {
  if (n_terms < 1) throw ParameterError("asymptotic order must be >= 1");
}

namespace {

void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " = " << v << " must be finite and >= 0";
    throw ParameterError(os.str());
  }
}

void require_pos(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " = " << v << " must be finite and > 0";
    throw ParameterError(os.str());
  }
}

// Aggregate branch of a sum: the least exact branch wins.
KernelBranch combine(KernelBranch a, KernelBranch b) {
  auto rank = [](KernelBranch k) {
    switch (k) {
      case KernelBranch::closed_form: return 0;
      case KernelBranch::special_case_H_half: return 1;
      case KernelBranch::quadrature: return 2;
      case KernelBranch::asymptotic: return 3;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

double fou_h_half(double lambda, double t) { return std::exp(-lambda * t) / (2.0 * lambda); }

// Cosh form with the e^{+x} and e^{-x} halves recombined. With x = lambda t,
// a = 2H, c = a - 1:
//   rho = H / (2 lambda^a) [Gamma(a) e^{-x} + J1 + J2],
//   J1 = int_0^x ((x+u)^c - (x-u)^c) e^{-u} du,
//   J2 = e^{-x} int_0^inf (2x+v)^c e^{-v} dv.
// The power difference is formed as (x-u)^c expm1(2c atanh(u/x)), so J1 keeps
// full relative accuracy even when it is exponentially small (H = 1/2).
double fou_quadrature_unchecked(double lambda, double h, double t, const QuadratureSpec& q) {
  const double a = 2.0 * h;
  const double c = a - 1.0;
  const double x = lambda * t;
  const double pre = h / (2.0 * std::pow(lambda, a));
  const double g = std::tgamma(a);
  if (x == 0.0) return pre * 2.0 * g;
  double j1 = 0.0;
  if (c != 0.0) {
    // Integrate in v = x - u so that the v^c singularity sits at a left
    // endpoint, where the quadrature passes v without cancellation.
    auto diff = [&](double v) {
      const double u = x - v;
      if (v > 0.5 * x) return std::pow(v, c) * std::expm1(2.0 * c * std::atanh(u / x)) * std::exp(-u);
      return (std::pow(x + u, c) - std::pow(v, c)) * std::exp(-u);
    };
    EndpointBehavior ends;
    ends.left_exponent = c;
    j1 = integrate(diff, 0.0, x, q, ends).value;
  }
  const double j2 =
      std::exp(-x) * integrate([&](double v) { return std::exp(c * std::log(2.0 * x + v) - v); }, 0.0, INFINITY, q).value;
  return pre * (g * std::exp(-x) + j1 + j2);
}

double fou_asymptotic_unchecked(double lambda, double h, double t, int n_terms) {
  const double a = 2.0 * h;
  double sum = 0.0;
  double coeff = 1.0;  // prod_{j=0}^{2n-1} (2H - j)
  const double inv = 1.0 / (lambda * lambda * t * t);
  double scale = std::pow(t, a);
  for (int n = 1; n <= n_terms; ++n) {
    coeff *= (a - (2 * n - 2)) * (a - (2 * n - 1));
    scale *= inv;
    sum += coeff * scale;
  }
  return 0.5 * sum;
}

KernelValue fou_dispatch(double lambda, double h, double t, const KernelConfig& config) {
  if (h == 0.5) return {fou_h_half(lambda, t), KernelBranch::special_case_H_half};
  if (lambda * t > config.crossover)
    return {fou_asymptotic_unchecked(lambda, h, t, config.order.n_terms()), KernelBranch::asymptotic};
  return {fou_quadrature_unchecked(lambda, h, t, config.quadrature), KernelBranch::quadrature};
}

}  // namespace

KernelValue fbm_cov(HurstIndex hurst, double t, double s) {
  require_nonneg(t, "t");
  require_nonneg(s, "s");
  return {fbm_cov_value(hurst.value(), t, s), KernelBranch::closed_form};
}

KernelValue mmfbm_cov(const MixtureSpec& spec, double t, double s) {
  require_valid(spec);
  require_nonneg(t, "t");
  require_nonneg(s, "s");
  double v = 0.0;
  for (const auto& c : spec.components()) v += c.sigma * c.sigma * fbm_cov_value(c.hurst, t, s);
  return {v, KernelBranch::closed_form};
}

KernelValue fgn_autocov(const MixtureSpec& spec, double delta, double t) {
  require_valid(spec);
  require_pos(delta, "delta");
  require_nonneg(t, "t");
  if (t < delta) throw ParameterError("fgn_autocov needs t >= delta");
  double v = 0.0;
  for (const auto& c : spec.components()) {
    if (c.hurst == 0.5) continue;
    v += c.sigma * c.sigma * fgn_component_value(c.hurst, delta, t);
  }
  return {v, KernelBranch::closed_form};
}

KernelValue fgn_autocov_asymptotic(const MixtureSpec& spec, double delta, double t) {
  require_valid(spec);
  require_pos(delta, "delta");
  if (!(t > delta)) throw ParameterError("fgn_autocov_asymptotic needs t > delta");
  double v = 0.0;
  for (const auto& c : spec.components()) {
    const double h = c.hurst;
    v += c.sigma * c.sigma * h * (2.0 * h - 1.0) * std::pow(t, 2.0 * h - 2.0);
  }
  return {delta * delta * v, KernelBranch::asymptotic};
}

double fou_var0(double lambda, HurstIndex hurst) {
  require_pos(lambda, "lambda");
  const double h = hurst.value();
  return std::pow(lambda, -2.0 * h) * h * std::tgamma(2.0 * h);
}

KernelValue fou_autocov(double lambda, HurstIndex hurst, double t, const KernelConfig& config) {
  require_pos(lambda, "lambda");
  require_nonneg(t, "t");
  return fou_dispatch(lambda, hurst.value(), t, config);
}

KernelValue fou_autocov_quadrature(double lambda, HurstIndex hurst, double t, const QuadratureSpec& q) {
  require_pos(lambda, "lambda");
  require_nonneg(t, "t");
  return {fou_quadrature_unchecked(lambda, hurst.value(), t, q), KernelBranch::quadrature};
}

KernelValue fou_autocov_gamma_form(double lambda, HurstIndex hurst, double t) {
  require_pos(lambda, "lambda");
  require_nonneg(t, "t");
  const double h = hurst.value();
  if (h < 0.5) throw DomainError("incomplete-gamma form of the fOU kernel needs H >= 1/2");
  const double x = lambda * t;
  const double alpha = 2.0 * h - 1.0;
  double brace = std::exp(-x);
  if (alpha == 0.0) {
    brace += std::exp(-x);  // gamma_0 = 1, Gamma_0 = 0
  } else {
    brace += inc_gamma_pos_scaled(alpha, x) + upper_gamma_reg_scaled(alpha, x);
  }
  return {std::tgamma(1.0 + 2.0 * h) / 4.0 * std::pow(lambda, -2.0 * h) * brace, KernelBranch::closed_form};
}

KernelValue fou_autocov_asymptotic(double lambda, HurstIndex hurst, double t, AsymptoticOrder order) {
  require_pos(lambda, "lambda");
  require_pos(t, "t");
  return {fou_asymptotic_unchecked(lambda, hurst.value(), t, order.n_terms()), KernelBranch::asymptotic};
}

KernelValue mmfou_autocov(const MixtureSpec& spec, double lambda, double t, const KernelConfig& config) {
  require_valid(spec);
  require_pos(lambda, "lambda");
  require_nonneg(t, "t");
  KernelValue out{0.0, KernelBranch::closed_form};
  bool first = true;
  for (const auto& c : spec.components()) {
    const auto k = fou_dispatch(lambda, c.hurst, t, config);
    out.value += c.sigma * c.sigma * k.value;
    out.branch = first ? k.branch : combine(out.branch, k.branch);
    first = false;
  }
  return out;
}

KernelValue mmfou_autocov_asymptotic(const MixtureSpec& spec, double lambda, double t, AsymptoticOrder order) {
  require_valid(spec);
  require_pos(lambda, "lambda");
  require_pos(t, "t");
  double v = 0.0;
  for (const auto& c : spec.components())
    v += c.sigma * c.sigma * fou_asymptotic_unchecked(lambda, c.hurst, t, order.n_terms());
  return {v, KernelBranch::asymptotic};
}

Eigen::VectorXd mmfou_lag_table(const MixtureSpec& spec, double lambda, double step, std::size_t n,
                                const KernelConfig& config) {
  require_valid(spec);
  require_pos(lambda, "lambda");
  require_nonneg(step, "step");
  Eigen::VectorXd lags = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& c : spec.components()) {
    const double w = c.sigma * c.sigma;
    for (std::size_t j = 0; j < n; ++j)
      lags(static_cast<Eigen::Index>(j)) += w * fou_dispatch(lambda, c.hurst, step * static_cast<double>(j), config).value;
  }
  return lags;
}

Eigen::MatrixXd mmfou_cov_matrix(const MixtureSpec& spec, double lambda, const Eigen::VectorXd& times,
                                 const KernelConfig& config) {
  require_valid(spec);
  require_pos(lambda, "lambda");
  const Eigen::Index n = times.size();
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double lag = std::abs(times(i) - times(j));
      double v = 0.0;
      for (const auto& c : spec.components()) v += c.sigma * c.sigma * fou_dispatch(lambda, c.hurst, lag, config).value;
      cov(i, j) = cov(j, i) = v;
    }
  }
  return cov;
}

}  // namespace mmf
