#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mmf/kernels.hpp"
#include "mmf/mixture.hpp"
#include "mmf/rng.hpp"

namespace mmf {

/// Equidistant grid t_j = j T / (N - 1), j = 0..N-1.
class PathGrid {
 public:
  PathGrid(double horizon, std::size_t n_points);

  double horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return horizon_ / static_cast<double>(n_ - 1); }
  double time(std::size_t j) const noexcept;
  Eigen::VectorXd times() const;

  friend bool operator==(const PathGrid&, const PathGrid&) = default;

 private:
  double horizon_;
  std::size_t n_;
};

enum class Method { dense_exact, circulant_sum, langevin_euler };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& name);

struct SamplePath {
  PathGrid grid;
  Eigen::VectorXd values;
  Seed seed = 0;
  Method method = Method::dense_exact;
  double ridge = 0.0;  // diagonal shift used by dense_exact, 0 if none
};

/// Largest grid accepted by dense_exact.
inline constexpr std::size_t kDenseMaxPoints = 4096;

/// Lower Cholesky factor of cov, retrying with ridge 1e-12 trace/N grown
/// 10x per attempt (3 retries). Throws FactorizationError if all fail.
Eigen::MatrixXd robust_cholesky(const Eigen::MatrixXd& cov, double* ridge_used = nullptr);

/// sqrt(eigenvalue / M) of the size-M = 2n circulant embedding of the unit-
/// sigma fGn autocovariance with increment length h. Eigenvalues in
/// [-1e-10 max, 0) are clamped to 0; anything more negative throws
/// EmbeddingError.
Eigen::VectorXd circulant_root(double hurst, double h, std::size_t n);

/// Precomputed generator for many mmfBm paths on one grid.
class MmfbmSampler {
 public:
  MmfbmSampler(const MixtureSpec& spec, const PathGrid& grid, Method method);

  SamplePath sample(Seed seed) const;
  /// Writes the N path values into out without allocating a SamplePath.
  void sample_into(Seed seed, Eigen::VectorXd& out) const;

  const PathGrid& grid() const noexcept { return grid_; }
  Method method() const noexcept { return method_; }
  double ridge() const noexcept { return ridge_; }

 private:
  MixtureSpec spec_;
  PathGrid grid_;
  Method method_;
  Eigen::MatrixXd factor_;                // dense_exact
  std::vector<Eigen::VectorXd> roots_;    // circulant_sum, one per component
  double ridge_ = 0.0;
};

/// Precomputed generator for many stationary mmfOU paths on one grid.
/// langevin_euler drives an exponential Euler recursion with circulant_sum
/// increments; it carries an O(h) discretisation bias.
class MmfouSampler {
 public:
  MmfouSampler(const MixtureSpec& spec, double lambda, const PathGrid& grid, Method method,
               const KernelConfig& config = {});

  SamplePath sample(Seed seed) const;
  void sample_into(Seed seed, Eigen::VectorXd& out) const;

  const PathGrid& grid() const noexcept { return grid_; }
  Method method() const noexcept { return method_; }
  double ridge() const noexcept { return ridge_; }

 private:
  MixtureSpec spec_;
  double lambda_;
  PathGrid grid_;
  Method method_;
  Eigen::MatrixXd factor_;
  std::optional<MmfbmSampler> driver_;
  double var0_ = 0.0;
  double ridge_ = 0.0;
};

SamplePath simulate_mmfbm(const MixtureSpec& spec, const PathGrid& grid, Seed seed, Method method);
SamplePath simulate_mmfou(const MixtureSpec& spec, double lambda, const PathGrid& grid, Seed seed,
                          Method method);

/// Columns t, path_1, ..., path_m with 17 significant digits.
std::string paths_to_csv(const PathGrid& grid, const std::vector<Eigen::VectorXd>& paths);
void write_text_file(const std::filesystem::path& file, const std::string& contents);

struct FigureOptions {
  std::size_t n_points = 1000;
  int n_hurst = 10;
  double h_lo = 0.1;
  double h_hi = 0.9;
  double lambda = 1.0;
  int n_paths = 3;
  Seed seed = 20240101;
};

/// Writes mmfbm_<kind>.csv, mmfou_<kind>.csv and components_<kind>.csv into
/// out_dir and returns the paths written.
std::vector<std::filesystem::path> reproduce_figures(ScheduleKind kind, const std::filesystem::path& out_dir,
                                                     const FigureOptions& options = {});

}  // namespace mmf
