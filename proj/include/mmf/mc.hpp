#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmf/rng.hpp"
#include "mmf/simulate.hpp"

namespace mmf {

struct McCheck {
  std::string name;
  double empirical = 0.0;
  double analytic = 0.0;
  double std_error = 0.0;
  double z = 0.0;
};

struct McReport {
  std::size_t n_paths = 0;
  std::vector<McCheck> checks;
  double max_abs_z = 0.0;
  double z_max = 4.0;
  bool pass = false;
};

/// Fills the path values on the harness grid for the given seed.
using PathSimulator = std::function<void(Seed, Eigen::VectorXd&)>;
/// Analytic covariance Cov(X_s, X_t).
using CovarianceHandle = std::function<double(double s, double t)>;
/// Analytic stationary autocovariance at a lag in time units.
using AutocovHandle = std::function<double(double lag)>;

PathSimulator make_simulator(const MmfbmSampler& sampler);
PathSimulator make_simulator(const MmfouSampler& sampler);

/// Grid index pair (i, j).
struct GridPair {
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Roughly n index pairs spread over the grid, including the diagonal
/// and far off-diagonal entries; excludes index 0.
std::vector<GridPair> spread_pairs(const PathGrid& grid, std::size_t n);

/// Empirical E[X_i X_j] over n_paths zero-mean paths against the analytic
/// covariance, each with the Gaussian standard error
/// sqrt((c_ii c_jj + c_ij^2) / n) built from the empirical moments.
/// Paths use subseeds derive_seed(seed, path, p).
McReport mc_cov_test(const PathSimulator& simulate, const PathGrid& grid, const CovarianceHandle& analytic,
                     const std::vector<GridPair>& pairs, std::size_t n_paths, Seed seed, double z_max = 4.0);

/// Lag-l covariance at several anchors. Each anchor after the first is
/// compared with the first through the per-path difference of products,
/// so the check needs no analytic input; when analytic is given, every
/// (anchor, lag) estimate is also compared with analytic(l * step).
McReport mc_stationarity_test(const PathSimulator& simulate, const PathGrid& grid,
                              const std::vector<std::size_t>& lags, const std::vector<std::size_t>& anchors,
                              std::size_t n_paths, Seed seed, double z_max = 4.0,
                              const std::optional<AutocovHandle>& analytic = std::nullopt);

/// Per-grid-point sample mean, variance, skewness and excess kurtosis.
struct MarginalMoments {
  Eigen::VectorXd mean, variance, skewness, excess_kurtosis;
};

MarginalMoments mc_marginal_moments(const PathSimulator& simulate, const PathGrid& grid, std::size_t n_paths,
                                    Seed seed);

std::string to_json(const McReport& report, int indent = 2);

}  // namespace mmf
