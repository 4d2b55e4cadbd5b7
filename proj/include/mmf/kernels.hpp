#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <limits>

#include "mmf/mixture.hpp"
#include "mmf/quadrature.hpp"

namespace mmf {

enum class KernelBranch { closed_form, quadrature, asymptotic, special_case_H_half };

const char* to_string(KernelBranch b) noexcept;

template <class Scalar>
struct BasicKernelValue {
  Scalar value{};
  KernelBranch branch = KernelBranch::closed_form;
};
using KernelValue = BasicKernelValue<double>;

/// Number of terms N >= 1 of the large-lag expansion.
class AsymptoticOrder {
 public:
  explicit AsymptoticOrder(int n_terms);
  int n_terms() const noexcept { return n_; }

 private:
  int n_;
};

/// Branch selection for the fOU kernel.
///
/// The quadrature branch evaluates the cosh-form integral with its two
/// exponential halves rearranged so that no e^{lambda t} cancellation occurs;
/// it is accurate for every lag. crossover (in units of lambda * t) only
/// decides where the cheaper large-lag expansion takes over.
struct KernelConfig {
  double crossover = 40.0;
  AsymptoticOrder order{5};
  QuadratureSpec quadrature{1e-300, 5e-14, 4000};
};

// ---------------------------------------------------------------------------
// Closed-form kernels, generic over the scalar type.

/// r_H(t, s) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2.
template <class Scalar>
Scalar fbm_cov_value(Scalar hurst, Scalar t, Scalar s) {
  using std::abs;
  using std::pow;
  const Scalar two_h = Scalar(2) * hurst;
  return Scalar(0.5) * (pow(t, two_h) + pow(s, two_h) - pow(abs(t - s), two_h));
}

/// (1+u)^{2H} + (1-u)^{2H} - 2 for 0 <= u <= 1, without the O(u) cancellation.
template <class Scalar>
Scalar second_difference_ratio(Scalar hurst, Scalar u) {
  using std::abs;
  using std::pow;
  const Scalar two_h = Scalar(2) * hurst;
  if (two_h == Scalar(1)) return Scalar(0);
  if (u > Scalar(0.3)) return pow(Scalar(1) + u, two_h) + pow(Scalar(1) - u, two_h) - Scalar(2);
  // 2 * sum over even r >= 2 of binom(2H, r) u^r.
  Scalar binom(1), upow(1), sum(0);
  for (int r = 1; r < 200; ++r) {
    binom *= (two_h - Scalar(r - 1)) / Scalar(r);
    upow *= u;
    if (r % 2 == 1) continue;
    const Scalar term = binom * upow;
    sum += term;
    if (abs(term) <= std::numeric_limits<Scalar>::epsilon() * Scalar(1e-2) * abs(sum)) break;
  }
  return Scalar(2) * sum;
}

/// Autocovariance at lag t of increments of length delta of sigma * B^H.
template <class Scalar>
Scalar fgn_component_value(Scalar hurst, Scalar delta, Scalar t) {
  using std::pow;
  if (t == Scalar(0)) return pow(delta, Scalar(2) * hurst);
  if (t < delta) {
    // Overlapping increments; only reached from internal lag tables.
    const Scalar two_h = Scalar(2) * hurst;
    return Scalar(0.5) * (pow(t + delta, two_h) + pow(delta - t, two_h) - Scalar(2) * pow(t, two_h));
  }
  return Scalar(0.5) * pow(t, Scalar(2) * hurst) * second_difference_ratio(hurst, delta / t);
}

/// Covariance matrix [r(t_i, t_j)] of the mixture on the given times (spec assumed valid).
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> mmfbm_cov_matrix(
    const MixtureSpec& spec, const Eigen::MatrixBase<Derived>& times) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = times.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cov =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (const auto& c : spec.components()) {
    const Scalar w = Scalar(c.sigma) * Scalar(c.sigma);
    const Scalar h = Scalar(c.hurst);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = j; i < n; ++i) cov(i, j) += w * fbm_cov_value(h, Scalar(times(i)), Scalar(times(j)));
  }
  cov.template triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  return cov;
}

// ---------------------------------------------------------------------------
// Public scalar kernels. Mixture-level functions validate the spec.

KernelValue fbm_cov(HurstIndex hurst, double t, double s);
KernelValue mmfbm_cov(const MixtureSpec& spec, double t, double s);

/// Increment autocovariance rho(delta; t) of the mixture, t >= delta > 0.
KernelValue fgn_autocov(const MixtureSpec& spec, double delta, double t);
/// delta^2 sum sigma_k^2 H_k (2H_k - 1) t^{2H_k - 2}, t > delta.
KernelValue fgn_autocov_asymptotic(const MixtureSpec& spec, double delta, double t);

/// Stationary variance lambda^{-2H} H Gamma(2H).
double fou_var0(double lambda, HurstIndex hurst);

/// fOU autocovariance with automatic branch selection. lambda > 0, t >= 0.
KernelValue fou_autocov(double lambda, HurstIndex hurst, double t, const KernelConfig& config = {});
/// The quadrature branch, forced regardless of lambda * t.
KernelValue fou_autocov_quadrature(double lambda, HurstIndex hurst, double t,
                                   const QuadratureSpec& q = KernelConfig{}.quadrature);
/// Incomplete-gamma representation; only for H >= 1/2 (DomainError otherwise).
KernelValue fou_autocov_gamma_form(double lambda, HurstIndex hurst, double t);
/// Partial sum of the large-lag expansion, t > 0.
KernelValue fou_autocov_asymptotic(double lambda, HurstIndex hurst, double t, AsymptoticOrder order);

KernelValue mmfou_autocov(const MixtureSpec& spec, double lambda, double t,
                          const KernelConfig& config = {});
KernelValue mmfou_autocov_asymptotic(const MixtureSpec& spec, double lambda, double t,
                                     AsymptoticOrder order);

/// [rho_lambda(j * step)] for j = 0..n-1 (spec assumed valid).
Eigen::VectorXd mmfou_lag_table(const MixtureSpec& spec, double lambda, double step, std::size_t n,
                                const KernelConfig& config = {});

/// Gram matrix [rho_lambda(|t_i - t_j|)] on arbitrary times.
Eigen::MatrixXd mmfou_cov_matrix(const MixtureSpec& spec, double lambda, const Eigen::VectorXd& times,
                                 const KernelConfig& config = {});

}  // namespace mmf
