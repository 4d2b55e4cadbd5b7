#include "mmf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "mmf/errors.hpp"

namespace mmf {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double eval(const Integrand& f, double s) {
  const double v = f(s);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << v << " at s = " << s;
    throw NumericalError(os.str());
  }
  return v;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double fc = eval(f, centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = hlgth * kXgk[j];
    fv1[j] = eval(f, centr - dx);
    fv2[j] = eval(f, centr + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double h = std::abs(hlgth);
  resabs *= h;
  resasc *= h;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * hlgth, err};
}

QuadratureResult adaptive(const Integrand& f, double a, double b, const QuadratureSpec& q) {
  std::priority_queue<Panel> heap;
  heap.push(gauss_kronrod(f, a, b));
  double total = heap.top().value;
  double total_err = heap.top().error;
  double frozen_value = 0.0, frozen_err = 0.0;
  int subdivisions = 1;

  auto tolerance = [&] { return std::max(q.abs_tol, q.rel_tol * std::abs(total)); };
  while (total_err > tolerance()) {
    if (heap.empty()) break;
    if (subdivisions >= q.max_subdivisions) {
      std::ostringstream os;
      os.precision(6);
      os << "adaptive quadrature on [" << a << ", " << b << "] did not reach tolerance "
         << tolerance() << " within " << q.max_subdivisions << " subdivisions (error bound "
         << total_err << ")";
      throw ConvergenceError(os.str(), total, total_err);
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      // Panel at the resolution limit; its error can no longer be reduced.
      frozen_value += worst.value;
      frozen_err += worst.error;
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++subdivisions;

    // Re-sum in place of incremental updates to avoid drift.
    if (subdivisions % 64 == 0 || heap.size() < 64) {
      auto copy = heap;
      total = frozen_value;
      total_err = frozen_err;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
    }
  }
  if (total_err > tolerance()) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] is limited by round-off (error bound "
       << total_err << ")";
    throw ConvergenceError(os.str(), total, total_err);
  }
  return {total, total_err, subdivisions};
}

QuadratureResult combine(const QuadratureResult& x, const QuadratureResult& y) {
  return {x.value + y.value, x.error + y.error, x.subdivisions + y.subdivisions};
}

QuadratureSpec halved(const QuadratureSpec& q) {
  QuadratureSpec h = q;
  h.abs_tol *= 0.5;
  return h;
}

QuadratureResult finite(const Integrand& f, double a, double b, const QuadratureSpec& q,
                        double left_beta, double right_beta) {
  if (left_beta != 0.0 && right_beta != 0.0) {
    const double m = 0.5 * (a + b);
    return combine(finite(f, a, m, halved(q), left_beta, 0.0), finite(f, m, b, halved(q), 0.0, right_beta));
  }
  const double len = b - a;
  if (left_beta != 0.0) {
    const double p = 1.0 / (1.0 + left_beta);
    Integrand g = [&](double w) { return f(a + len * std::pow(w, p)) * len * p * std::pow(w, p - 1.0); };
    return adaptive(g, 0.0, 1.0, q);
  }
  if (right_beta != 0.0) {
    const double p = 1.0 / (1.0 + right_beta);
    Integrand g = [&](double w) { return f(b - len * std::pow(w, p)) * len * p * std::pow(w, p - 1.0); };
    return adaptive(g, 0.0, 1.0, q);
  }
  return adaptive(f, a, b, q);
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& q,
                           const EndpointBehavior& ends) {
  if (!(q.abs_tol > 0.0 && q.rel_tol > 0.0 && q.max_subdivisions >= 1)) {
    throw ParameterError("quadrature tolerances must be > 0 and max_subdivisions >= 1");
  }
  if (!(ends.left_exponent > -1.0 && ends.right_exponent > -1.0)) {
    throw ParameterError("endpoint exponents must be > -1 for an integrable singularity");
  }
  if (!std::isfinite(a)) throw ParameterError("lower integration limit must be finite");
  if (std::isnan(b)) throw ParameterError("upper integration limit is NaN");
  if (b == a) return {};
  if (b < a) {
    auto r = integrate(f, b, a, q, {ends.right_exponent, ends.left_exponent, std::nullopt});
    return {-r.value, r.error, r.subdivisions};
  }
  if (std::isinf(b)) {
    const double split = a + 1.0;
    const auto head = finite(f, a, split, halved(q), ends.left_exponent, 0.0);
    double tail_beta = 0.0;
    if (ends.tail_exponent) {
      if (!(*ends.tail_exponent < -1.0)) throw ParameterError("tail exponent must be < -1 for convergence");
      tail_beta = -*ends.tail_exponent - 2.0;
    }
    Integrand g = [&](double u) {
      const double s = a + 1.0 / u;
      if (!std::isfinite(s)) return 0.0;
      const double v = f(s);
      return v == 0.0 ? 0.0 : v / (u * u);
    };
    const auto tail = finite(g, 0.0, 1.0, halved(q), tail_beta, 0.0);
    return combine(head, tail);
  }
  return finite(f, a, b, q, ends.left_exponent, ends.right_exponent);
}

namespace {

// Wynn epsilon extrapolation of the limit of partial sums s[0..n-1].
double wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  std::vector<double> prev(n + 1, 0.0), cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t col = 1; cur.size() > 1; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) return cur[i + 1];
      next[i] = prev[i + 1] + 1.0 / diff;
      if (!std::isfinite(next[i])) return best;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) best = cur.back();
  }
  return best;
}

}  // namespace

QuadratureResult integrate_cosine(const Integrand& f, double t, const QuadratureSpec& q,
                                  const EndpointBehavior& ends) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("cosine transform needs finite t >= 0");
  if (t == 0.0) return integrate(f, 0.0, INFINITY, q, ends);

  const QuadratureSpec panel_q{q.abs_tol * 1e-3, std::max(q.rel_tol * 1e-3, 1e-14), q.max_subdivisions};
  auto g = [&](double x) { return std::cos(t * x) * f(x); };
  const double half = M_PI / t;
  const double first_zero = 0.5 * half;

  QuadratureResult out;
  EndpointBehavior head;
  head.left_exponent = ends.left_exponent;
  auto r0 = integrate(g, 0.0, first_zero, panel_q, head);
  out.subdivisions += r0.subdivisions;
  out.error += r0.error;

  constexpr int kMinPanels = 12;
  constexpr int kMaxPanels = 2000;
  constexpr std::size_t kWindow = 40;
  std::vector<double> sums{r0.value};
  double prev_est = NAN, prev_diff = INFINITY;
  for (int k = 1; k <= kMaxPanels; ++k) {
    const double lo = first_zero + (k - 1) * half;
    const auto r = integrate(g, lo, lo + half, panel_q);
    out.subdivisions += r.subdivisions;
    out.error += r.error;
    sums.push_back(sums.back() + r.value);
    if (k < kMinPanels) continue;
    const std::vector<double> window(sums.end() - std::min(kWindow, sums.size()), sums.end());
    const double est = wynn_epsilon(window);
    const double diff = std::abs(est - prev_est);
    const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(est));
    if (std::max(diff, prev_diff) <= tol) {
      out.value = est;
      out.error += std::max(diff, prev_diff);
      return out;
    }
    prev_diff = diff;
    prev_est = est;
  }
  throw ConvergenceError("cosine transform extrapolation did not converge", prev_est, prev_diff);
}

}  // namespace mmf
