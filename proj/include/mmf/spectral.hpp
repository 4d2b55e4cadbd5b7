#pragma once

#include <optional>

#include "mmf/mixture.hpp"
#include "mmf/quadrature.hpp"

namespace mmf {

/// Spectral density value at angular frequency x.
struct SpectralValue {
  double value = 0.0;
  double x = 0.0;
};

/// c_H |x|^{1-2H} with c_H = sin(pi H) Gamma(1+2H) / (2 pi).
/// At x = 0: +inf for H > 1/2, 0 for H < 1/2, c_H for H = 1/2.
SpectralValue fbm_sd(HurstIndex hurst, double x);
SpectralValue mmfbm_sd(const MixtureSpec& spec, double x);
/// fbm_sd / (x^2 + lambda^2).
SpectralValue fou_sd(double lambda, HurstIndex hurst, double x);
SpectralValue mmfou_sd(const MixtureSpec& spec, double lambda, double x);

/// Default tolerances for the frequency-domain integrals below.
inline constexpr QuadratureSpec kSpectralQuadrature{1e-11, 1e-10, 4000};

/// 2 int_0^inf cos(t x) f_lambda(x) dx, the stationary autocovariance
/// recovered from the mmfOU spectral density. Independent of the kernels
/// module; used to cross-check it.
double spectral_autocov(const MixtureSpec& spec, double lambda, double t,
                        const QuadratureSpec& q = kSpectralQuadrature);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

/// int_R cos(t x) |x|^p / (lambda^2 + x^2) dx computed numerically (lhs)
/// against its incomplete-gamma closed form (rhs), for -1 < p < 0.
IdentityCheck fourier_identity_check(double p, double lambda, double t,
                                     const QuadratureSpec& q = kSpectralQuadrature);

struct DoubleGammaCheck {
  double numeric = 0.0;
  double exact = 0.0;
};

/// int_0^inf int_0^inf e^{-(x+y)} |x-y|^alpha dx dy by nested quadrature,
/// against Gamma(alpha + 1); alpha > -1.
DoubleGammaCheck double_gamma_check(double alpha, const QuadratureSpec& q = {1e-14, 1e-12, 4000});

/// Power-law lower bound h(x) <= f(x) (or f_lambda(x) when lambda is given):
///   eps * G * sum sigma^2 / (2 pi) * |x|^{1-2H_inf}   for |x| <= 1,
///   eps * G * sum sigma^2 / (2 pi) * |x|^{1-2H_sup}   for |x| >= 1,
/// divided by lambda^2 + x^2 in the OU case, where eps = min(sin pi H_inf,
/// sin pi H_sup) and G = min of Gamma over [1 + 2H_inf, 1 + 2H_sup].
SpectralValue cfs_lower_bound(const MixtureSpec& spec, std::optional<double> lambda, double x);

/// int_{x0}^inf log f(x) / x^2 dx for the mmfBm density (or the mmfOU
/// density when lambda is given), x0 > 1. Finite for every valid spec;
/// NumericalError if the integral diverges.
double cfs_integral(const MixtureSpec& spec, std::optional<double> lambda, double x0,
                    const QuadratureSpec& q = {1e-14, 1e-12, 4000});

}  // namespace mmf
