#include "mmf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>

#include "mmf/errors.hpp"
#include "mmf/estimate.hpp"
#include "mmf/format.hpp"
#include "mmf/io.hpp"
#include "mmf/kernels.hpp"
#include "mmf/mc.hpp"
#include "mmf/simulate.hpp"
#include "mmf/spectral.hpp"

namespace mmf {
namespace {

struct Outcome {
  bool ok = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// Tracks the worst value of a metric that must stay <= tol; NaN counts as worst.
struct Worst {
  explicit Worst(double t) : tol(t) {}
  double tol;
  double value = 0.0;
  std::string where;
  void add(double v, const std::string& w) {
    if (std::isnan(v)) v = INFINITY;
    if (where.empty() || v > value) {
      value = v;
      where = w;
    }
  }
  Outcome outcome(const std::string& what) const {
    return {value <= tol, value, tol, what + " worst " + num(value) + " at " + where};
  }
};

const std::vector<MixtureSpec>& spectral_specs() {
  static const std::vector<MixtureSpec> s = {MixtureSpec({{1.0, 0.3}}), MixtureSpec({{1.0, 0.7}}),
                                             MixtureSpec({{1.0, 0.3}, {1.0, 0.7}})};
  return s;
}

std::string label(const MixtureSpec& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += "(" + num(s.components()[k].sigma) + "," + num(s.components()[k].hurst) + ")";
  }
  return out + "}";
}

Outcome c1_ou_closed_form(Suite) {
  Worst w{1e-12};
  for (double lam : {0.5, 1.0, 2.0})
    for (double t : {0.0, 0.5, 1.0, 5.0, 20.0}) {
      const double exact = std::exp(-lam * t) / (2.0 * lam);
      w.add(rel_err(fou_autocov(lam, HurstIndex(0.5), t).value, exact), "lambda=" + num(lam) + " t=" + num(t));
    }
  return w.outcome("relative error");
}

Outcome c2_variance(Suite) {
  Worst w{1e-10};
  for (int i = 1; i <= 9; ++i) {
    const double h = 0.1 * i;
    for (double lam : {0.5, 1.0, 2.0}) {
      const double v = fou_autocov(lam, HurstIndex(h), 0.0).value;
      const double exact = std::pow(lam, -2.0 * h) * h * std::tgamma(2.0 * h);
      w.add(rel_err(v, exact), "H=" + num(h) + " lambda=" + num(lam));
    }
  }
  return w.outcome("relative error");
}

Outcome c3_dual_formula(Suite) {
  Worst w{1e-8};
  for (double h : {0.5, 0.6, 0.75, 0.9})
    for (double lam : {0.5, 1.0, 2.0})
      for (int i = 0; i <= 30; ++i) {
        const double x = 0.1 * std::pow(200.0, i / 30.0);  // lambda t in [0.1, 20]
        const double t = x / lam;
        const double q = fou_autocov_quadrature(lam, HurstIndex(h), t).value;
        const double g = fou_autocov_gamma_form(lam, HurstIndex(h), t).value;
        w.add(rel_err(q, g), "H=" + num(h) + " lambda=" + num(lam) + " lambda*t=" + num(x));
      }
  return w.outcome("cosh-form vs incomplete-gamma form relative error");
}

Outcome c4_spectral(Suite) {
  Worst w{1e-6};
  for (const auto& s : spectral_specs())
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      const double a = spectral_autocov(s, 1.0, t);
      const double b = mmfou_autocov(s, 1.0, t).value;
      w.add(std::abs(a - b), label(s) + " t=" + num(t));
    }
  return w.outcome("absolute difference");
}

Outcome c5_identities(Suite) {
  Worst fourier{1e-6}, dg{1e-8};
  for (double p : {-0.8, -0.5, -0.2})
    for (double lam : {0.5, 1.0, 2.0})
      for (double t : {0.5, 1.0, 2.0})
        fourier.add(fourier_identity_check(p, lam, t).rel_err,
                    "p=" + num(p) + " lambda=" + num(lam) + " t=" + num(t));
  for (double a : {-0.4, 0.0, 1.0, 2.5}) {
    const auto c = double_gamma_check(a);
    dg.add(std::abs(c.numeric - c.exact), "alpha=" + num(a));
  }
  const auto f = fourier.outcome("fourier identity rel error");
  const auto d = dg.outcome("double gamma abs error");
  return {f.ok && d.ok, std::max(f.worst / f.tolerance, d.worst / d.tolerance), 1.0, f.detail + "; " + d.detail};
}

Outcome c6_crossover(Suite) {
  Worst w{1e-8};
  const double lam = 1.0, t = 25.0;
  std::string each;
  for (double h : {0.3, 0.5, 0.7, 0.9}) {
    const double q = fou_autocov_quadrature(lam, HurstIndex(h), t).value;
    const double a = fou_autocov_asymptotic(lam, HurstIndex(h), t, AsymptoticOrder(5)).value;
    w.add(rel_err(a, q), "H=" + num(h));
    each += " H=" + num(h) + ":" + num(rel_err(a, q));
  }
  auto o = w.outcome("quadrature vs 5-term expansion at lambda*t = 25, relative error");
  o.detail += ";" + each;
  return o;
}

Outcome c7_simulation_law(Suite suite) {
  const std::size_t n_paths = suite == Suite::full ? 10000 : 2000;
  const PathGrid grid(1.0, 256);
  const auto pairs = spread_pairs(grid, 24);
  const std::vector<MixtureSpec> specs = {MixtureSpec({{1.0, 0.3}}), MixtureSpec({{1.0, 0.7}}),
                                          MixtureSpec({{0.5, 0.25}, {0.5, 0.75}})};
  double worst_pos = 0.0, weakest_neg = INFINITY;
  bool ok = true;
  std::string where_pos, where_neg;
  auto record = [&](const McReport& pos, const McReport& neg, const std::string& what) {
    if (!pos.pass) ok = false;
    if (neg.pass) ok = false;
    if (pos.max_abs_z >= worst_pos) {
      worst_pos = pos.max_abs_z;
      where_pos = what;
    }
    if (neg.max_abs_z <= weakest_neg) {
      weakest_neg = neg.max_abs_z;
      where_neg = what;
    }
  };
  Seed seed = 700;
  for (const auto& s : specs) {
    auto cov = [&](double a, double b) { return mmfbm_cov(s, a, b).value; };
    auto cov_bad = [&](double a, double b) { return 1.1 * cov(a, b); };
    for (Method m : {Method::circulant_sum, Method::dense_exact}) {
      const MmfbmSampler sampler(s, grid, m);
      const auto sim = make_simulator(sampler);
      record(mc_cov_test(sim, grid, cov, pairs, n_paths, seed), mc_cov_test(sim, grid, cov_bad, pairs, n_paths, seed),
             "mmfBm " + label(s) + " " + to_string(m));
      ++seed;
    }
    const double lam = 1.0;
    const MmfouSampler ou(s, lam, grid, Method::dense_exact);
    const auto lags = mmfou_lag_table(s, lam, grid.step(), grid.size());
    auto ucov = [&, step = grid.step()](double a, double b) {
      return lags(static_cast<Eigen::Index>(std::llround(std::abs(a - b) / step)));
    };
    auto ucov_bad = [&](double a, double b) { return 1.1 * ucov(a, b); };
    const auto sim = make_simulator(ou);
    record(mc_cov_test(sim, grid, ucov, pairs, n_paths, seed), mc_cov_test(sim, grid, ucov_bad, pairs, n_paths, seed),
           "mmfOU " + label(s) + " dense_exact");
    ++seed;
  }
  return {ok, worst_pos, 4.0,
          "max |z| " + num(worst_pos) + " (" + where_pos + "); weakest negative control max |z| " + num(weakest_neg) +
              " (" + where_neg + "), " + std::to_string(pairs.size()) + " pairs, " + std::to_string(n_paths) +
              " paths"};
}

Outcome c8_pvariation(Suite suite) {
  const std::size_t n_big = suite == Suite::full ? (1u << 16) : (1u << 13);
  std::vector<Seed> seeds;
  for (Seed s = 0; s < (suite == Suite::full ? 32u : 8u); ++s) seeds.push_back(800 + s);
  const auto bm = pvar_convergence_study(MixtureSpec({{1.0, 0.5}}), 2.0, 1.0, {n_big}, seeds);
  const auto mix = pvar_convergence_study(MixtureSpec({{1.0, 0.25}, {1.0, 0.75}}), 4.0, 1.0, {n_big}, seeds);
  std::vector<std::size_t> ns;
  for (std::size_t n = 1u << 10; n <= n_big; n *= 2) ns.push_back(n);
  const auto down = pvar_convergence_study(MixtureSpec({{1.0, 0.5}}), 3.0, 1.0, ns, seeds);
  bool mono = true;
  for (std::size_t i = 1; i < down.size(); ++i) mono = mono && down[i].empirical < down[i - 1].empirical;
  const double e_bm = rel_err(bm[0].empirical, 1.0), e_mix = rel_err(mix[0].empirical, 3.0);
  const bool ok = e_bm <= 0.05 && e_mix <= 0.10 && mono && down.back().empirical < down.front().empirical;
  return {ok, std::max(e_bm / 0.05, e_mix / 0.10), 1.0,
          "Bm p=2 mean " + num(bm[0].empirical) + " (rel " + num(e_bm) + " <= 0.05); mixture p=4 mean " +
              num(mix[0].empirical) + " (rel " + num(e_mix) + " <= 0.10); p=3 means " + num(down.front().empirical) +
              " -> " + num(down.back().empirical) + (mono ? " decreasing" : " NOT monotone")};
}

Outcome c9_holder(Suite suite) {
  const std::size_t n_paths = suite == Suite::full ? 200 : 100;
  const MixtureSpec s({{1.0, 0.3}, {1.0, 0.7}});
  const PathGrid grid(1.0, 1025);
  const MmfbmSampler fbm(s, grid, Method::dense_exact);
  const MmfouSampler fou(s, 1.0, grid, Method::dense_exact);
  std::vector<SamplePath> a, b;
  for (std::size_t k = 0; k < n_paths; ++k) {
    const Seed seed = derive_seed(900, StreamTag::path, k);
    a.push_back(fbm.sample(seed));
    b.push_back(fou.sample(seed));
  }
  const auto ra = holder_estimate(a, {1, 2, 4, 8}, s.h_inf());
  const auto rb = holder_estimate(b, {1, 2, 4, 8}, s.h_inf());
  const double worst = std::max(std::abs(ra.estimate - 0.3), std::abs(rb.estimate - 0.3));
  return {worst <= 0.05, worst, 0.05,
          "mmfBm estimate " + num(ra.estimate) + ", mmfOU estimate " + num(rb.estimate) + " (target 0.30)"};
}

Outcome c10_lrd(Suite) {
  const MixtureSpec s({{1.0, 0.7}});
  const auto f = lrd_slope_fgn(s, 1.0, 1e2, 1e4);
  const auto u = lrd_slope_mmfou(s, 1.0, 1e2, 1e4);
  const double worst = std::max(std::abs(f.estimate - f.target), std::abs(u.estimate - u.target));
  return {worst <= 0.02, worst, 0.02,
          "fGn slope " + num(f.estimate) + ", mmfOU slope " + num(u.estimate) + " (target " + num(f.target) + ")"};
}

Outcome c11_cfs(Suite) {
  bool finite = true;
  std::string values;
  for (const auto& s : spectral_specs()) {
    for (std::optional<double> lam : {std::optional<double>{}, std::optional<double>{1.0}}) {
      const double v = cfs_integral(s, lam, 2.0);
      finite = finite && std::isfinite(v);
      values += label(s) + (lam ? " lambda=1: " : ": ") + num(v) + "; ";
    }
  }
  Worst w{1e-8};
  for (double x0 : {1.5, 2.0, 5.0}) {
    const double v = cfs_integral(MixtureSpec({{1.0, 0.5}}), std::nullopt, x0);
    w.add(std::abs(v - std::log(1.0 / (2.0 * M_PI)) / x0), "x0=" + num(x0));
  }
  const auto o = w.outcome("H=1/2 closed-form error");
  return {finite && o.ok, o.worst, o.tolerance, values + o.detail};
}

Outcome c12_truncation(Suite suite) {
  const std::size_t n_paths = suite == Suite::full ? 1000 : 300;
  ScheduleFamily fam{ScheduleKind::exponential, 0.1, 0.9, 0, std::log(2.0)};
  auto first = [&](int k_max) {
    std::vector<Component> c;
    for (int k = 1; k <= k_max; ++k) c.push_back({schedule_sigma(fam, k), infinite_schedule_hurst(fam, k)});
    return MixtureSpec(std::move(c));
  };
  const PathGrid grid(1.0, 257);
  const MmfbmSampler s10(first(10), grid, Method::circulant_sum);
  const MmfbmSampler s20(first(20), grid, Method::circulant_sum);
  Eigen::VectorXd a, b;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < n_paths; ++k) {
    const Seed seed = derive_seed(1200, StreamTag::path, k);
    s10.sample_into(seed, a);
    s20.sample_into(seed, b);
    const Eigen::ArrayXd d2 = (b - a).array().square();
    // trapezoid rule for int_0^1 (M20 - M10)^2 dt
    const double l2 = grid.step() * (d2.sum() - 0.5 * (d2(0) + d2(d2.size() - 1)));
    m1 += l2;
    m2 += l2 * l2;
  }
  const double n = static_cast<double>(n_paths);
  const double mean = m1 / n;
  const double se = std::sqrt(std::max(0.0, (m2 / n - mean * mean) * n / (n - 1.0)) / n);
  const double bound = std::pow(4.0, -10.0) / 3.0 * std::max(1.0, 1.0);
  const double tail = schedule_tail_sum(fam, 10);
  return {mean <= bound + 4.0 * se && std::abs(tail - bound) <= 1e-15 * bound, mean, bound + 4.0 * se,
          "empirical L2 gap " + num(mean) + " (SE " + num(se) + ") vs bound " + num(bound) + " + 4 SE"};
}

Outcome c13_figures(Suite) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("mmf_figures_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  bool ok = true;
  std::string detail;
  for (ScheduleKind kind : {ScheduleKind::harmonic, ScheduleKind::factorial, ScheduleKind::exponential}) {
    const auto f1 = reproduce_figures(kind, root / "a");
    const auto f2 = reproduce_figures(kind, root / "b");
    for (std::size_t i = 0; i < f1.size(); ++i)
      if (read_text_file(f1[i].string()) != read_text_file(f2[i].string())) {
        ok = false;
        detail += f1[i].filename().string() + " differs between runs; ";
      }
    for (std::size_t i = 0; i < 2; ++i) {
      std::istringstream is(read_text_file(f1[i].string()));
      std::string line;
      std::getline(is, line);
      if (line.rfind("t,path_1", 0) != 0) ok = false;
      std::size_t rows = 0;
      while (std::getline(is, line)) {
        const std::string t = line.substr(0, line.find(','));
        if (t != format_real(static_cast<double>(rows) / 999.0)) {
          ok = false;
          detail += "bad t at row " + std::to_string(rows) + "; ";
          break;
        }
        ++rows;
      }
      if (rows != 1000) {
        ok = false;
        detail += f1[i].filename().string() + " has " + std::to_string(rows) + " rows; ";
      }
    }
    std::istringstream comps(read_text_file(f1[2].string()));
    std::string line;
    std::getline(comps, line);
    std::size_t n_comp = 0;
    while (std::getline(comps, line)) {
      ++n_comp;
      if (line.substr(line.rfind(',') + 1) != "1") ok = false;
    }
    if (n_comp != 10) ok = false;
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return {ok, ok ? 0.0 : 1.0, 0.0,
          ok ? "N=1000 rows, t_j=j/999, 10 components, lambda=1, byte-identical re-runs for all schedules" : detail};
}

struct Entry {
  const char* name;
  double budget;
  Outcome (*run)(Suite);
};

const Entry kEntries[kCriterionCount] = {
    {"closed-form OU kernel at H = 1/2", 1.0, c1_ou_closed_form},
    {"stationary variance identity", 1.0, c2_variance},
    {"cosh form vs incomplete-gamma form", 10.0, c3_dual_formula},
    {"spectral inversion vs kernel", 60.0, c4_spectral},
    {"fourier and double-gamma identities", 60.0, c5_identities},
    {"crossover continuity at lambda*t = 25", 5.0, c6_crossover},
    {"simulation law (MC covariance)", 300.0, c7_simulation_law},
    {"p-variation limits", 600.0, c8_pvariation},
    {"hoelder index via variogram", 300.0, c9_holder},
    {"long-range dependence slope", 10.0, c10_lrd},
    {"CFS log-integral criterion", 10.0, c11_cfs},
    {"truncation L2 bound", 120.0, c12_truncation},
    {"figure reproduction", 30.0, c13_figures},
};

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "quick") return Suite::quick;
  if (name == "full") return Suite::full;
  throw ParameterError("suite '" + name + "' is not one of quick, full");
}

CriterionResult run_criterion(int id, Suite suite) {
  if (id < 1 || id > kCriterionCount) throw ParameterError("criterion id must be in 1..13");
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  r.budget_seconds = e.budget;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = e.run(suite);
  } catch (const Error& ex) {
    o = {false, INFINITY, 0.0, std::string("error: ") + ex.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.within_budget = r.seconds <= r.budget_seconds;
  r.pass = o.ok && r.within_budget;
  r.worst = o.worst;
  r.tolerance = o.tolerance;
  r.detail = o.detail;
  return r;
}

std::vector<CriterionResult> run_suite(Suite suite) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, suite));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << " (" << r.seconds << " s / "
     << r.budget_seconds << " s" << (r.within_budget ? "" : ", OVER BUDGET") << ")";
  return os.str();
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::string out;
  int passed = 0;
  for (const auto& r : results) {
    out += format_result(r) + '\n';
    passed += r.pass ? 1 : 0;
  }
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  return out;
}

}  // namespace mmf
