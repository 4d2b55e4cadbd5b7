#pragma once

namespace mmf {

/// Complete gamma function for alpha > 0 (DomainError otherwise).
double gamma_fn(double alpha);

/// Normalised positive-exponent incomplete integral
///   gamma_alpha(x) = 1/Gamma(alpha) * int_0^x s^{alpha-1} e^{s} ds,
/// for 0 < alpha < 1 and x >= 0. Overflows (IEEE inf) for x beyond ~705.
double inc_gamma_pos(double alpha, double x);

/// e^{-x} * gamma_alpha(x); finite for every x >= 0.
double inc_gamma_pos_scaled(double alpha, double x);

/// Regularised upper incomplete gamma
///   Gamma_alpha(x) = 1/Gamma(alpha) * int_x^inf s^{alpha-1} e^{-s} ds,
/// for 0 < alpha < 1 and x >= 0.
double upper_gamma_reg(double alpha, double x);

/// e^{x} * Gamma_alpha(x); finite for every x >= 0.
double upper_gamma_reg_scaled(double alpha, double x);

/// E|Z|^p for a standard Gaussian Z, p >= 0.
double abs_moment(double p);

/// Location and value of the minimum of Gamma on (0, inf).
inline constexpr double kGammaArgMin = 1.4616321449683623413;
inline constexpr double kGammaMin = 0.88560319441088870028;

/// min of Gamma over [lo, hi] (Gamma is log-convex with a single minimum).
double gamma_min_on(double lo, double hi);

}  // namespace mmf
