#pragma once

#include <functional>
#include <optional>

namespace mmf {

/// Tolerances for adaptive quadrature. The estimate is accepted when the
/// error bound is below max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

/// Algebraic endpoint behaviour declared by the caller.
///
/// left_exponent / right_exponent: f(s) ~ |s - endpoint|^beta with beta > -1.
/// tail_exponent (upper limit +infinity only): f(s) ~ s^tau with tau < -1.
struct EndpointBehavior {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::optional<double> tail_exponent;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Adaptive 15-point Gauss-Kronrod quadrature of f over [a, b], b may be +inf.
///
/// Endpoint singularities s^beta are removed by s = a + L u^{1/(1+beta)};
/// an infinite range is split at a + 1 and the tail mapped by s = a + 1/u.
/// Deterministic: identical inputs give bit-identical outputs.
/// Throws ConvergenceError (carrying the best estimate) if the tolerance is
/// not met within max_subdivisions, NumericalError on a non-finite integrand.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSpec& q = {}, const EndpointBehavior& ends = {});

/// Cosine transform int_0^inf cos(t x) f(x) dx for t >= 0.
///
/// ends.left_exponent describes f at 0 and ends.tail_exponent its algebraic
/// decay. For t > 0 the range is cut at the zeros of cos(t x) and the
/// alternating partial sums are extrapolated with Wynn's epsilon algorithm;
/// q bounds the extrapolation error.
QuadratureResult integrate_cosine(const Integrand& f, double t, const QuadratureSpec& q = {},
                                  const EndpointBehavior& ends = {});

}  // namespace mmf
