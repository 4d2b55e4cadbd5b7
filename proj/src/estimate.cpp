#include "mmf/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmf/errors.hpp"
#include "mmf/format.hpp"
#include "mmf/kernels.hpp"
#include "mmf/special.hpp"

namespace mmf {

double pvar_empirical(const Eigen::VectorXd& values, double p) {
  if (!(p > 0.0)) throw ParameterError("p-variation needs p > 0");
  if (values.size() < 2) throw ParameterError("p-variation needs at least 2 points");
  double s = 0.0;
  for (Eigen::Index k = 1; k < values.size(); ++k) s += std::pow(std::abs(values(k) - values(k - 1)), p);
  return s;
}

double pvar_empirical(const SamplePath& path, double p) { return pvar_empirical(path.values, p); }

double pvar_limit(const MixtureSpec& spec, double p, double horizon) {
  require_valid(spec);
  if (!(p > 0.0)) throw ParameterError("p-variation needs p > 0");
  if (!(horizon > 0.0)) throw ParameterError("horizon T must be > 0");
  const double hi = spec.h_inf();
  const double ph = p * hi;
  // p H_inf = 1 is decided with a few ulps of slack so that p = 1/H hits it.
  const double tol = 8.0 * std::numeric_limits<double>::epsilon();
  if (ph < 1.0 - tol) return std::numeric_limits<double>::infinity();
  if (ph > 1.0 + tol) return 0.0;
  double s2 = 0.0;
  for (const auto& c : spec.components())
    if (c.hurst == hi) s2 += c.sigma * c.sigma;
  return horizon * std::pow(s2, 0.5 * p) * abs_moment(p);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ParameterError("line fit needs at least 2 matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("line fit needs at least 2 distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      rss += r * r;
    }
    f.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return f;
}

namespace {

double target_or_nan(std::optional<double> t) { return t ? *t : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

EstimateReport holder_estimate(const std::vector<SamplePath>& paths, const std::vector<std::size_t>& lags,
                               std::optional<double> target) {
  if (paths.size() < 100) throw ParameterError("holder_estimate needs at least 100 paths");
  const PathGrid& grid = paths.front().grid;
  for (const auto& p : paths)
    if (!(p.grid == grid)) throw ParameterError("holder_estimate needs all paths on one grid");
  std::vector<double> lx, ly;
  for (std::size_t lag : lags) {
    if (lag == 0 || lag >= grid.size()) continue;
    double s = 0.0;
    std::size_t count = 0;
    for (const auto& p : paths) {
      const auto& v = p.values;
      for (Eigen::Index j = 0; j + static_cast<Eigen::Index>(lag) < v.size(); ++j) {
        const double d = v(j + static_cast<Eigen::Index>(lag)) - v(j);
        s += d * d;
      }
      count += static_cast<std::size_t>(v.size()) - lag;
    }
    lx.push_back(std::log(static_cast<double>(lag) * grid.step()));
    ly.push_back(std::log(s / static_cast<double>(count)));
  }
  if (lx.size() < 2) throw ParameterError("holder_estimate needs at least 2 usable lags within the grid");
  const auto f = fit_line(lx, ly);
  return {0.5 * f.slope, target_or_nan(target), lx.size(), 0.5 * f.slope_stderr};
}

EstimateReport holder_estimate(const std::function<double(double)>& variogram, const std::vector<double>& lags,
                               std::optional<double> target) {
  std::vector<double> lx, ly;
  for (double h : lags) {
    if (!(h > 0.0)) continue;
    const double v = variogram(h);
    if (!(v > 0.0)) throw ParameterError("variogram must be positive at every lag");
    lx.push_back(std::log(h));
    ly.push_back(std::log(v));
  }
  if (lx.size() < 2) throw ParameterError("holder_estimate needs at least 2 usable lags");
  const auto f = fit_line(lx, ly);
  return {0.5 * f.slope, target_or_nan(target), lx.size(), 0.5 * f.slope_stderr};
}

double mmfbm_increment_variance(const MixtureSpec& spec, double h) {
  require_valid(spec);
  if (!(h >= 0.0)) throw ParameterError("lag must be >= 0");
  double v = 0.0;
  for (const auto& c : spec.components()) v += c.sigma * c.sigma * std::pow(h, 2.0 * c.hurst);
  return v;
}

double mmfou_increment_variance(const MixtureSpec& spec, double lambda, double h) {
  if (!(h >= 0.0)) throw ParameterError("lag must be >= 0");
  return 2.0 * (mmfou_autocov(spec, lambda, 0.0).value - mmfou_autocov(spec, lambda, h).value);
}

EstimateReport lrd_slope(const std::function<double(double)>& autocov, double t_lo, double t_hi, std::size_t n_pts,
                         std::optional<double> target) {
  if (!(t_lo > 0.0 && t_hi > t_lo)) throw ParameterError("lrd_slope needs 0 < t_lo < t_hi");
  if (n_pts < 2) throw ParameterError("lrd_slope needs n_pts >= 2");
  std::vector<double> lx, ly;
  const double a = std::log(t_lo), b = std::log(t_hi);
  for (std::size_t i = 0; i < n_pts; ++i) {
    const double lt = a + (b - a) * static_cast<double>(i) / static_cast<double>(n_pts - 1);
    const double t = std::exp(lt);
    const double v = autocov(t);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "autocovariance " << v << " at t = " << t
         << " is not positive; no polynomial tail to fit (short-range or sign-changing window)";
      throw ParameterError(os.str());
    }
    lx.push_back(lt);
    ly.push_back(std::log(v));
  }
  const auto f = fit_line(lx, ly);
  return {f.slope, target_or_nan(target), n_pts, f.slope_stderr};
}

EstimateReport lrd_slope_fgn(const MixtureSpec& spec, double delta, double t_lo, double t_hi, std::size_t n_pts) {
  require_valid(spec);
  if (spec.h_sup() == 0.5 && spec.size() == 1)
    throw ParameterError("increment autocovariance is identically zero for H = 1/2; the process is short-range");
  return lrd_slope([&](double t) { return fgn_autocov(spec, delta, t).value; }, t_lo, t_hi, n_pts,
                   2.0 * spec.h_sup() - 2.0);
}

EstimateReport lrd_slope_mmfou(const MixtureSpec& spec, double lambda, double t_lo, double t_hi, std::size_t n_pts) {
  require_valid(spec);
  return lrd_slope([&](double t) { return mmfou_autocov(spec, lambda, t).value; }, t_lo, t_hi, n_pts,
                   2.0 * spec.h_sup() - 2.0);
}

std::vector<PvarRow> pvar_convergence_study(const MixtureSpec& spec, double p, double horizon,
                                            const std::vector<std::size_t>& n_list, const std::vector<Seed>& seeds,
                                            Method method) {
  const double target = pvar_limit(spec, p, horizon);
  if (seeds.empty()) throw ParameterError("pvar_convergence_study needs at least one seed");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw ParameterError("n_list must be increasing");
  std::vector<PvarRow> rows;
  Eigen::VectorXd x;
  for (std::size_t n : n_list) {
    if (n < 1) throw ParameterError("n_list entries must be >= 1");
    const PathGrid grid(horizon, n + 1);
    const MmfbmSampler sampler(spec, grid, method);
    double s1 = 0.0, s2 = 0.0;
    for (Seed s : seeds) {
      sampler.sample_into(s, x);
      const double v = pvar_empirical(x, p);
      s1 += v;
      s2 += v * v;
    }
    const double m = static_cast<double>(seeds.size());
    const double mean = s1 / m;
    const double se = m > 1 ? std::sqrt(std::max(0.0, (s2 / m - mean * mean) * m / (m - 1.0)) / m) : 0.0;
    rows.push_back({n, mean, se, target, std::abs(mean - target)});
  }
  return rows;
}

std::string pvar_table_csv(const std::vector<PvarRow>& rows) {
  std::string out = "n,empirical,target,abs_err\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ',' + format_real(r.empirical) + ',' + format_real(r.target) + ',' +
           format_real(r.abs_err) + '\n';
  return out;
}

}  // namespace mmf
