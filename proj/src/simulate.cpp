#include "mmf/simulate.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mmf/errors.hpp"
#include "mmf/format.hpp"

namespace mmf {

PathGrid::PathGrid(double horizon, std::size_t n_points) : horizon_(horizon), n_(n_points) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("grid horizon T must be finite and > 0");
  if (n_points < 2) throw ParameterError("grid needs N >= 2 points");
}

double PathGrid::time(std::size_t j) const noexcept {
  return horizon_ * static_cast<double>(j) / static_cast<double>(n_ - 1);
}

Eigen::VectorXd PathGrid::times() const {
  Eigen::VectorXd t(static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j) t(static_cast<Eigen::Index>(j)) = time(j);
  return t;
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::dense_exact: return "dense_exact";
    case Method::circulant_sum: return "circulant_sum";
    case Method::langevin_euler: return "langevin_euler";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "dense_exact" || name == "dense") return Method::dense_exact;
  if (name == "circulant_sum" || name == "circulant") return Method::circulant_sum;
  if (name == "langevin_euler" || name == "langevin") return Method::langevin_euler;
  throw ParameterError("method '" + name + "' is not one of dense_exact, circulant_sum, langevin_euler");
}

Eigen::MatrixXd robust_cholesky(const Eigen::MatrixXd& cov, double* ridge_used) {
  const Eigen::Index n = cov.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  double ridge = 0.0;
  if (llt.info() != Eigen::Success) {
    ridge = 1e-12 * cov.trace() / static_cast<double>(n);
    for (int attempt = 0; attempt <= 3; ++attempt, ridge *= 10.0) {
      Eigen::MatrixXd shifted = cov;
      shifted.diagonal().array() += ridge;
      llt.compute(shifted);
      if (llt.info() == Eigen::Success) break;
    }
    if (llt.info() != Eigen::Success) {
      std::ostringstream os;
      os << "Cholesky factorisation failed even with ridge " << ridge / 10.0 << " on the diagonal";
      throw FactorizationError(os.str());
    }
  }
  if (ridge_used) *ridge_used = ridge;
  return llt.matrixL();
}

Eigen::VectorXd circulant_root(double hurst, double h, std::size_t n) {
  const std::size_t m = 2 * n;
  const double scale = std::pow(h, 2.0 * hurst);
  std::vector<std::complex<double>> c(m), eig;
  for (std::size_t j = 0; j <= n; ++j) {
    const double g = scale * fgn_component_value(hurst, 1.0, static_cast<double>(j));
    c[j] = g;
    if (j > 0 && j < n) c[m - j] = g;
  }
  Eigen::FFT<double> fft;
  fft.fwd(eig, c);
  double max_eig = 0.0;
  for (const auto& e : eig) max_eig = std::max(max_eig, e.real());
  Eigen::VectorXd root(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    double e = eig[j].real();
    if (e < 0.0) {
      if (e < -1e-10 * max_eig) {
        std::ostringstream os;
        os << "circulant embedding for H = " << hurst << ", n = " << n << " has eigenvalue " << e
           << " below -1e-10 * max; use method dense_exact";
        throw EmbeddingError(os.str());
      }
      e = 0.0;
    }
    root(static_cast<Eigen::Index>(j)) = std::sqrt(e / static_cast<double>(m));
  }
  return root;
}

MmfbmSampler::MmfbmSampler(const MixtureSpec& spec, const PathGrid& grid, Method method)
    : spec_(spec), grid_(grid), method_(method) {
  require_valid(spec_);
  const std::size_t n = grid_.size() - 1;
  switch (method_) {
    case Method::dense_exact: {
      if (grid_.size() > kDenseMaxPoints) throw ParameterError("dense_exact supports at most 4096 grid points");
      const Eigen::VectorXd t = grid_.times().tail(static_cast<Eigen::Index>(n));
      factor_ = robust_cholesky(mmfbm_cov_matrix(spec_, t), &ridge_);
      break;
    }
    case Method::circulant_sum:
      for (const auto& c : spec_.components()) roots_.push_back(circulant_root(c.hurst, grid_.step(), n));
      break;
    case Method::langevin_euler:
      throw ParameterError("langevin_euler applies to mmfOU only");
  }
}

void MmfbmSampler::sample_into(Seed seed, Eigen::VectorXd& out) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_.size() - 1);
  out.setZero(n + 1);
  if (method_ == Method::dense_exact) {
    GaussianStream g(derive_seed(seed, StreamTag::dense, 0));
    Eigen::VectorXd z(n);
    g.fill(z);
    out.tail(n).noalias() = factor_.triangularView<Eigen::Lower>() * z;
    return;
  }
  Eigen::FFT<double> fft;
  const std::size_t m = static_cast<std::size_t>(2 * n);
  std::vector<std::complex<double>> w(m), y;
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    GaussianStream g(derive_seed(seed, StreamTag::component, k));
    const auto& root = roots_[k];
    for (std::size_t j = 0; j < m; ++j) {
      const double a = g.next();
      const double b = g.next();
      const double r = root(static_cast<Eigen::Index>(j));
      w[j] = {r * a, r * b};
    }
    fft.fwd(y, w);
    const double sigma = spec_.components()[k].sigma;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += y[static_cast<std::size_t>(j)].real();
      out(j + 1) += sigma * acc;
    }
  }
}

SamplePath MmfbmSampler::sample(Seed seed) const {
  SamplePath p{grid_, {}, seed, method_, ridge_};
  sample_into(seed, p.values);
  return p;
}

MmfouSampler::MmfouSampler(const MixtureSpec& spec, double lambda, const PathGrid& grid, Method method,
                           const KernelConfig& config)
    : spec_(spec), lambda_(lambda), grid_(grid), method_(method) {
  require_valid(spec_);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be finite and > 0");
  switch (method_) {
    case Method::dense_exact: {
      if (grid_.size() > kDenseMaxPoints) throw ParameterError("dense_exact supports at most 4096 grid points");
      const auto lags = mmfou_lag_table(spec_, lambda_, grid_.step(), grid_.size(), config);
      const Eigen::Index n = lags.size();
      Eigen::MatrixXd cov(n, n);
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) cov(i, j) = lags(std::abs(i - j));
      factor_ = robust_cholesky(cov, &ridge_);
      break;
    }
    case Method::langevin_euler:
      driver_.emplace(spec_, grid_, Method::circulant_sum);
      for (const auto& c : spec_.components()) var0_ += c.sigma * c.sigma * fou_var0(lambda_, HurstIndex(c.hurst));
      break;
    case Method::circulant_sum:
      throw ParameterError("circulant_sum applies to mmfBm only; use dense_exact or langevin_euler for mmfOU");
  }
}

void MmfouSampler::sample_into(Seed seed, Eigen::VectorXd& out) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_.size());
  if (method_ == Method::dense_exact) {
    GaussianStream g(derive_seed(seed, StreamTag::dense, 0));
    Eigen::VectorXd z(n);
    g.fill(z);
    out.noalias() = factor_.triangularView<Eigen::Lower>() * z;
    return;
  }
  Eigen::VectorXd m;
  driver_->sample_into(derive_seed(seed, StreamTag::driver, 0), m);
  GaussianStream g(derive_seed(seed, StreamTag::initial, 0));
  out.resize(n);
  out(0) = std::sqrt(var0_) * g.next();
  const double decay = std::exp(-lambda_ * grid_.step());
  for (Eigen::Index j = 0; j + 1 < n; ++j) out(j + 1) = decay * out(j) + (m(j + 1) - m(j));
}

SamplePath MmfouSampler::sample(Seed seed) const {
  SamplePath p{grid_, {}, seed, method_, ridge_};
  sample_into(seed, p.values);
  return p;
}

SamplePath simulate_mmfbm(const MixtureSpec& spec, const PathGrid& grid, Seed seed, Method method) {
  return MmfbmSampler(spec, grid, method).sample(seed);
}

SamplePath simulate_mmfou(const MixtureSpec& spec, double lambda, const PathGrid& grid, Seed seed,
                          Method method) {
  return MmfouSampler(spec, lambda, grid, method).sample(seed);
}

std::string paths_to_csv(const PathGrid& grid, const std::vector<Eigen::VectorXd>& paths) {
  std::string out = "t";
  for (std::size_t k = 0; k < paths.size(); ++k) out += ",path_" + std::to_string(k + 1);
  out += '\n';
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out += format_real(grid.time(j));
    for (const auto& p : paths) {
      out += ',';
      out += format_real(p(static_cast<Eigen::Index>(j)));
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& file, const std::string& contents) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + file.string() + "' for writing");
  os << contents;
  os.close();
  if (!os) throw IoError("failed writing '" + file.string() + "'");
}

std::vector<std::filesystem::path> reproduce_figures(ScheduleKind kind, const std::filesystem::path& out_dir,
                                                     const FigureOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  ScheduleFamily family{kind, options.h_lo, options.h_hi, options.n_hurst, 1.0};
  const MixtureSpec spec = make_schedule(family);
  const PathGrid grid(1.0, options.n_points);
  const std::string name(to_string(kind));

  const MmfbmSampler fbm(spec, grid, Method::circulant_sum);
  const MmfouSampler fou(spec, options.lambda, grid, Method::dense_exact);
  std::vector<Eigen::VectorXd> fbm_paths, fou_paths;
  for (int i = 0; i < options.n_paths; ++i) {
    const Seed s = derive_seed(options.seed, StreamTag::path, static_cast<std::uint64_t>(i));
    fbm_paths.push_back(fbm.sample(s).values);
    fou_paths.push_back(fou.sample(s).values);
  }

  std::string comps = "k,sigma,hurst,lambda\n";
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto& c = spec.components()[k];
    comps += std::to_string(k + 1) + ',' + format_real(c.sigma) + ',' + format_real(c.hurst) + ',' +
             format_real(options.lambda) + '\n';
  }

  std::vector<std::filesystem::path> files = {out_dir / ("mmfbm_" + name + ".csv"),
                                              out_dir / ("mmfou_" + name + ".csv"),
                                              out_dir / ("components_" + name + ".csv")};
  write_text_file(files[0], paths_to_csv(grid, fbm_paths));
  write_text_file(files[1], paths_to_csv(grid, fou_paths));
  write_text_file(files[2], comps);
  return files;
}

}  // namespace mmf
