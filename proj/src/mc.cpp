#include "mmf/mc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "mmf/errors.hpp"

namespace mmf {
namespace {

void finish(McReport& r) {
  r.max_abs_z = 0.0;
  for (const auto& c : r.checks) r.max_abs_z = std::max(r.max_abs_z, std::abs(c.z));
  r.pass = r.max_abs_z <= r.z_max;
}

double z_score(double diff, double se) {
  if (se > 0.0) return diff / se;
  return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
}

}  // namespace

PathSimulator make_simulator(const MmfbmSampler& sampler) {
  return [&sampler](Seed s, Eigen::VectorXd& out) { sampler.sample_into(s, out); };
}

PathSimulator make_simulator(const MmfouSampler& sampler) {
  return [&sampler](Seed s, Eigen::VectorXd& out) { sampler.sample_into(s, out); };
}

std::vector<GridPair> spread_pairs(const PathGrid& grid, std::size_t n) {
  const std::size_t last = grid.size() - 1;
  const std::size_t side = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * n))));
  std::vector<std::size_t> idx;
  for (std::size_t a = 0; a < side; ++a) {
    const std::size_t v = 1 + (a * (last - 1)) / (side - 1);
    if (idx.empty() || idx.back() != v) idx.push_back(v);
  }
  std::vector<GridPair> out;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) out.push_back({idx[a], idx[b]});
  return out;
}

McReport mc_cov_test(const PathSimulator& simulate, const PathGrid& grid, const CovarianceHandle& analytic,
                     const std::vector<GridPair>& pairs, std::size_t n_paths, Seed seed, double z_max) {
  if (n_paths < 1000) throw ParameterError("mc_cov_test needs n_paths >= 1000");
  if (pairs.empty()) throw ParameterError("mc_cov_test needs at least one grid pair");
  for (const auto& p : pairs)
    if (p.i >= grid.size() || p.j >= grid.size()) throw ParameterError("grid pair index outside the grid");

  std::vector<double> cross(pairs.size(), 0.0);
  std::map<std::size_t, double> square;
  for (const auto& p : pairs) square[p.i] = square[p.j] = 0.0;
  Eigen::VectorXd x;
  for (std::size_t k = 0; k < n_paths; ++k) {
    simulate(derive_seed(seed, StreamTag::path, k), x);
    for (std::size_t q = 0; q < pairs.size(); ++q)
      cross[q] += x(static_cast<Eigen::Index>(pairs[q].i)) * x(static_cast<Eigen::Index>(pairs[q].j));
    for (auto& [i, s] : square) s += x(static_cast<Eigen::Index>(i)) * x(static_cast<Eigen::Index>(i));
  }
  const double n = static_cast<double>(n_paths);
  McReport r;
  r.n_paths = n_paths;
  r.z_max = z_max;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto [i, j] = pairs[q];
    const double cij = cross[q] / n, cii = square[i] / n, cjj = square[j] / n;
    const double se = std::sqrt((cii * cjj + cij * cij) / n);
    const double s = grid.time(i), t = grid.time(j);
    const double target = analytic(s, t);
    r.checks.push_back({"cov(" + std::to_string(i) + "," + std::to_string(j) + ")", cij, target, se,
                        z_score(cij - target, se)});
  }
  finish(r);
  return r;
}

McReport mc_stationarity_test(const PathSimulator& simulate, const PathGrid& grid,
                              const std::vector<std::size_t>& lags, const std::vector<std::size_t>& anchors,
                              std::size_t n_paths, Seed seed, double z_max,
                              const std::optional<AutocovHandle>& analytic) {
  if (n_paths < 1000) throw ParameterError("mc_stationarity_test needs n_paths >= 1000");
  if (lags.empty() || anchors.empty()) throw ParameterError("mc_stationarity_test needs lags and anchors");
  for (auto l : lags)
    for (auto a : anchors)
      if (a + l >= grid.size()) throw ParameterError("anchor + lag outside the grid");

  const std::size_t nl = lags.size(), na = anchors.size();
  // Per (lag, anchor): sum of products and squares; per (lag, anchor > 0): moments of differences.
  std::vector<double> prod(nl * na, 0.0), d1(nl * na, 0.0), d2(nl * na, 0.0);
  std::map<std::size_t, double> square;
  for (auto l : lags)
    for (auto a : anchors) square[a] = square[a + l] = 0.0;
  Eigen::VectorXd x;
  std::vector<double> cur(nl * na);
  for (std::size_t k = 0; k < n_paths; ++k) {
    simulate(derive_seed(seed, StreamTag::path, k), x);
    for (std::size_t li = 0; li < nl; ++li)
      for (std::size_t ai = 0; ai < na; ++ai) {
        const auto a = static_cast<Eigen::Index>(anchors[ai]);
        cur[li * na + ai] = x(a) * x(a + static_cast<Eigen::Index>(lags[li]));
        prod[li * na + ai] += cur[li * na + ai];
      }
    for (std::size_t li = 0; li < nl; ++li)
      for (std::size_t ai = 1; ai < na; ++ai) {
        const double d = cur[li * na + ai] - cur[li * na];
        d1[li * na + ai] += d;
        d2[li * na + ai] += d * d;
      }
    for (auto& [i, s] : square) s += x(static_cast<Eigen::Index>(i)) * x(static_cast<Eigen::Index>(i));
  }

  const double n = static_cast<double>(n_paths);
  McReport r;
  r.n_paths = n_paths;
  r.z_max = z_max;
  for (std::size_t li = 0; li < nl; ++li) {
    const std::size_t l = lags[li];
    for (std::size_t ai = 1; ai < na; ++ai) {
      const double mean = d1[li * na + ai] / n;
      const double var = (d2[li * na + ai] / n - mean * mean) * n / (n - 1.0);
      const double se = std::sqrt(std::max(var, 0.0) / n);
      r.checks.push_back({"lag=" + std::to_string(l) + " anchor=" + std::to_string(anchors[ai]) + " vs anchor=" +
                              std::to_string(anchors[0]),
                          mean, 0.0, se, z_score(mean, se)});
    }
    if (!analytic) continue;
    const double target = (*analytic)(static_cast<double>(l) * grid.step());
    for (std::size_t ai = 0; ai < na; ++ai) {
      const std::size_t a = anchors[ai];
      const double c = prod[li * na + ai] / n;
      const double se = std::sqrt((square[a] / n * square[a + l] / n + c * c) / n);
      r.checks.push_back({"lag=" + std::to_string(l) + " anchor=" + std::to_string(a) + " analytic", c, target, se,
                          z_score(c - target, se)});
    }
  }
  finish(r);
  return r;
}

MarginalMoments mc_marginal_moments(const PathSimulator& simulate, const PathGrid& grid, std::size_t n_paths,
                                    Seed seed) {
  if (n_paths < 2) throw ParameterError("mc_marginal_moments needs n_paths >= 2");
  const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
  Eigen::ArrayXd s1 = Eigen::ArrayXd::Zero(m), s2 = s1, s3 = s1, s4 = s1;
  Eigen::VectorXd x;
  for (std::size_t k = 0; k < n_paths; ++k) {
    simulate(derive_seed(seed, StreamTag::path, k), x);
    const Eigen::ArrayXd a = x.array();
    s1 += a;
    s2 += a * a;
    s3 += a * a * a;
    s4 += a * a * a * a;
  }
  const double n = static_cast<double>(n_paths);
  const Eigen::ArrayXd mean = s1 / n;
  const Eigen::ArrayXd m2 = s2 / n - mean * mean;
  const Eigen::ArrayXd m3 = s3 / n - 3.0 * mean * s2 / n + 2.0 * mean.cube();
  const Eigen::ArrayXd m4 = s4 / n - 4.0 * mean * s3 / n + 6.0 * mean.square() * s2 / n - 3.0 * mean.square().square();
  MarginalMoments out;
  out.mean = mean.matrix();
  out.variance = (m2 * n / (n - 1.0)).matrix();
  out.skewness = Eigen::VectorXd::Zero(m);
  out.excess_kurtosis = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (m2(i) <= 0.0) continue;
    out.skewness(i) = m3(i) / std::pow(m2(i), 1.5);
    out.excess_kurtosis(i) = m4(i) / (m2(i) * m2(i)) - 3.0;
  }
  return out;
}

std::string to_json(const McReport& report, int indent) {
  nlohmann::ordered_json j;
  j["n_paths"] = report.n_paths;
  j["z_max"] = report.z_max;
  j["max_abs_z"] = report.max_abs_z;
  j["pass"] = report.pass;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"empirical", c.empirical}, {"analytic", c.analytic},
                      {"std_error", c.std_error}, {"z_score", c.z}});
  return j.dump(indent);
}

}  // namespace mmf
