#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmf/mixture.hpp"
#include "mmf/simulate.hpp"

namespace mmf {

struct EstimateReport {
  double estimate = 0.0;
  double target = 0.0;  // NaN when no analytic target applies
  std::size_t n_used = 0;
  double stderr_or_band = 0.0;
};

/// Sum of |x_k - x_{k-1}|^p over consecutive grid points.
double pvar_empirical(const Eigen::VectorXd& values, double p);
double pvar_empirical(const SamplePath& path, double p);

/// Limit of the equidistant p-variation on [0, T]: +inf if p H_inf < 1,
/// T (sum of sigma^2 over components at H_inf)^{p/2} E|Z|^p if p H_inf = 1,
/// and 0 if p H_inf > 1.
double pvar_limit(const MixtureSpec& spec, double p, double horizon);

/// Slope and its standard error of the least-squares line y = a + b x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Variogram estimate of the Hoelder index: half the log-log slope of the
/// mean squared increment against the lag. lags are in grid steps.
EstimateReport holder_estimate(const std::vector<SamplePath>& paths,
                               const std::vector<std::size_t>& lags = {1, 2, 4, 8},
                               std::optional<double> target = std::nullopt);

/// Same regression on an exact variogram v(h) at the given lags (time units).
EstimateReport holder_estimate(const std::function<double(double)>& variogram, const std::vector<double>& lags,
                               std::optional<double> target = std::nullopt);

/// Exact increment variances: sum sigma^2 h^{2H} for mmfBm and
/// 2 (rho(0) - rho(h)) for mmfOU.
double mmfbm_increment_variance(const MixtureSpec& spec, double h);
double mmfou_increment_variance(const MixtureSpec& spec, double lambda, double h);

/// Log-log slope of a positive autocovariance at n_pts log-spaced lags in
/// [t_lo, t_hi]. ParameterError naming the lag if a value is not positive.
EstimateReport lrd_slope(const std::function<double(double)>& autocov, double t_lo, double t_hi,
                         std::size_t n_pts = 41, std::optional<double> target = std::nullopt);
/// Increment autocovariance with step delta; target 2 H_sup - 2.
EstimateReport lrd_slope_fgn(const MixtureSpec& spec, double delta, double t_lo, double t_hi,
                             std::size_t n_pts = 41);
/// mmfOU stationary autocovariance; target 2 H_sup - 2.
EstimateReport lrd_slope_mmfou(const MixtureSpec& spec, double lambda, double t_lo, double t_hi,
                               std::size_t n_pts = 41);

struct PvarRow {
  std::size_t n = 0;
  double empirical = 0.0;  // Monte Carlo mean of the p-variation sum
  double std_error = 0.0;
  double target = 0.0;
  double abs_err = 0.0;
};

/// Mean p-variation sum over one mmfBm path per seed on grids with n
/// increments, for every n in n_list.
std::vector<PvarRow> pvar_convergence_study(const MixtureSpec& spec, double p, double horizon,
                                            const std::vector<std::size_t>& n_list, const std::vector<Seed>& seeds,
                                            Method method = Method::circulant_sum);

/// Columns n, empirical, target, abs_err.
std::string pvar_table_csv(const std::vector<PvarRow>& rows);

}  // namespace mmf
