#include "mmf/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mmf/errors.hpp"

namespace mmf {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_unit_alpha(double alpha, double x, const char* name) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << name << ": alpha = " << alpha << " outside (0, 1)";
    throw DomainError(os.str());
  }
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << name << ": x = " << x << " must be >= 0";
    throw DomainError(os.str());
  }
}

// sum_{n>=0} x^{n+alpha} e^{-x} / ((n + alpha) n!); every term is positive.
double positive_series_scaled(double alpha, double x) {
  double sum = 0.0;
  if (x <= 600.0) {
    double term = std::exp(alpha * std::log(x) - x);
    for (int n = 0;; ++n) {
      if (n > 0) term *= x / n;
      const double contrib = term / (n + alpha);
      sum += contrib;
      if (n > x && contrib <= kEps * 1e-2 * sum) break;
    }
    return sum;
  }
  const double lx = std::log(x);
  for (int n = 0;; ++n) {
    const double contrib = std::exp((n + alpha) * lx - x - std::lgamma(n + 1.0)) / (n + alpha);
    sum += contrib;
    if (n > x && contrib <= kEps * 1e-2 * sum) break;
  }
  return sum;
}

// Lentz evaluation of the continued fraction for Gamma(a, x) e^{x} x^{-a}.
double upper_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("continued fraction for the upper incomplete gamma did not converge", h, 0.0);
}

// x^alpha * sum_n x^n / Gamma(alpha + n + 1)  (= P(alpha, x) e^{x}).
double lower_series_scaled(double alpha, double x) {
  double term = 1.0 / std::tgamma(alpha + 1.0);
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (alpha + n);
    sum += term;
    if (term <= kEps * 1e-2 * sum) break;
  }
  return std::pow(x, alpha) * sum;
}

}  // namespace

double gamma_fn(double alpha) {
  if (!(alpha > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: alpha = " << alpha << " must be > 0";
    throw DomainError(os.str());
  }
  return std::tgamma(alpha);
}

double inc_gamma_pos_scaled(double alpha, double x) {
  require_unit_alpha(alpha, x, "inc_gamma_pos");
  if (x == 0.0) return 0.0;
  return positive_series_scaled(alpha, x) / std::tgamma(alpha);
}

double inc_gamma_pos(double alpha, double x) {
  require_unit_alpha(alpha, x, "inc_gamma_pos");
  if (x == 0.0) return 0.0;
  if (x <= 600.0) return positive_series_scaled(alpha, x) * std::exp(x) / std::tgamma(alpha);
  // Split the exponential to postpone overflow.
  return positive_series_scaled(alpha, x) * std::exp(0.5 * x) / std::tgamma(alpha) * std::exp(0.5 * x);
}

double upper_gamma_reg_scaled(double alpha, double x) {
  require_unit_alpha(alpha, x, "upper_gamma_reg");
  if (x == 0.0) return 1.0;
  if (x < 1.5) return std::exp(x) - lower_series_scaled(alpha, x);
  return std::exp(alpha * std::log(x)) * upper_continued_fraction(alpha, x) / std::tgamma(alpha);
}

double upper_gamma_reg(double alpha, double x) {
  require_unit_alpha(alpha, x, "upper_gamma_reg");
  if (x == 0.0) return 1.0;
  if (x < 1.5) return 1.0 - std::exp(-x) * lower_series_scaled(alpha, x);
  return std::exp(alpha * std::log(x) - x) * upper_continued_fraction(alpha, x) / std::tgamma(alpha);
}

double abs_moment(double p) {
  if (!(p >= 0.0)) {
    std::ostringstream os;
    os << "abs_moment: p = " << p << " must be >= 0";
    throw DomainError(os.str());
  }
  return std::exp2(0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(std::numbers::pi);
}

double gamma_min_on(double lo, double hi) {
  if (!(lo > 0.0 && lo <= hi)) throw DomainError("gamma_min_on: need 0 < lo <= hi");
  if (lo <= kGammaArgMin && kGammaArgMin <= hi) return kGammaMin;
  return std::min(std::tgamma(lo), std::tgamma(hi));
}

}  // namespace mmf
