// mmf: command-line front end.
//
// Exit status: 0 success, 1 invalid parameters, 2 numerical failure (or a
// failed verification), 3 I/O error.
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmf/errors.hpp"
#include "mmf/estimate.hpp"
#include "mmf/format.hpp"
#include "mmf/io.hpp"
#include "mmf/kernels.hpp"
#include "mmf/mc.hpp"
#include "mmf/simulate.hpp"
#include "mmf/spectral.hpp"
#include "mmf/verify.hpp"

namespace {

using namespace mmf;

struct Options {
  std::string spec;
  std::string schedule = "harmonic";
  double t = 0.0;
  std::optional<double> s;
  double x = 1.0;
  double p = 2.0;
  std::size_t grid_n = 257;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::string method;
  std::size_t paths = 1;
  std::string out;
  std::string suite = "quick";
  std::vector<int> criteria;
  std::string what = "holder";
  std::string n_list;
  double t_lo = 1e2, t_hi = 1e4;
};

MixtureSpec load_spec(const Options& o) {
  if (o.spec.empty()) throw ParameterError("--spec is required (inline JSON or a file path)");
  const auto spec = parse_spec_json(read_json_argument(o.spec));
  require_valid(spec);
  return spec;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

std::vector<Eigen::VectorXd> draw_paths(const MixtureSpec& spec, const PathGrid& grid, const Options& o,
                                        Method& method_used) {
  std::vector<Eigen::VectorXd> paths;
  if (spec.lambda()) {
    method_used = o.method.empty() ? Method::dense_exact : parse_method(o.method);
    const MmfouSampler sampler(spec, *spec.lambda(), grid, method_used);
    for (std::size_t i = 0; i < o.paths; ++i) paths.push_back(sampler.sample(derive_seed(o.seed, StreamTag::path, i)).values);
  } else {
    method_used = o.method.empty() ? Method::circulant_sum : parse_method(o.method);
    const MmfbmSampler sampler(spec, grid, method_used);
    for (std::size_t i = 0; i < o.paths; ++i) paths.push_back(sampler.sample(derive_seed(o.seed, StreamTag::path, i)).values);
  }
  return paths;
}

int cmd_cov(const Options& o) {
  const auto spec = load_spec(o);
  KernelValue v;
  if (spec.lambda()) {
    const double lag = o.s ? std::abs(o.t - *o.s) : o.t;
    v = mmfou_autocov(spec, *spec.lambda(), lag);
  } else {
    v = mmfbm_cov(spec, o.t, o.s.value_or(o.t));
  }
  std::cout << format_real(v.value) << '\n';
  std::cerr << "branch: " << to_string(v.branch) << '\n';
  return 0;
}

int cmd_sd(const Options& o) {
  const auto spec = load_spec(o);
  const auto v = spec.lambda() ? mmfou_sd(spec, *spec.lambda(), o.x) : mmfbm_sd(spec, o.x);
  std::cout << format_real(v.value) << '\n';
  return 0;
}

int cmd_simulate(const Options& o) {
  const auto spec = load_spec(o);
  const PathGrid grid(o.horizon, o.grid_n);
  Method m{};
  const auto paths = draw_paths(spec, grid, o, m);
  emit(o, paths_to_csv(grid, paths));
  return 0;
}

std::vector<std::size_t> parse_n_list(const Options& o) {
  std::vector<std::size_t> ns;
  if (o.n_list.empty()) {
    ns.push_back(o.grid_n - 1);
    return ns;
  }
  std::stringstream ss(o.n_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      ns.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw ParameterError("--n-list entry '" + item + "' is not a positive integer");
    }
  }
  return ns;
}

int cmd_pvar(const Options& o) {
  const auto spec = load_spec(o);
  std::vector<Seed> seeds;
  for (std::size_t i = 0; i < o.paths; ++i) seeds.push_back(derive_seed(o.seed, StreamTag::path, i));
  const Method m = o.method.empty() ? Method::circulant_sum : parse_method(o.method);
  emit(o, pvar_table_csv(pvar_convergence_study(spec, o.p, o.horizon, parse_n_list(o), seeds, m)));
  return 0;
}

std::string report_json(const EstimateReport& r, const std::string& kind) {
  nlohmann::ordered_json j;
  j["estimator"] = kind;
  j["estimate"] = r.estimate;
  j["target"] = std::isnan(r.target) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.target);
  j["n_used"] = r.n_used;
  j["stderr_or_band"] = r.stderr_or_band;
  return j.dump(2) + "\n";
}

int cmd_estimate(const Options& o) {
  const auto spec = load_spec(o);
  if (o.what == "holder") {
    const PathGrid grid(o.horizon, o.grid_n);
    Method m{};
    Options po = o;
    po.paths = std::max<std::size_t>(o.paths, 100);
    std::vector<SamplePath> paths;
    for (auto& v : draw_paths(spec, grid, po, m)) paths.push_back({grid, std::move(v), o.seed, m, 0.0});
    emit(o, report_json(holder_estimate(paths, {1, 2, 4, 8}, spec.h_inf()), "holder"));
  } else if (o.what == "lrd") {
    const auto r = spec.lambda() ? lrd_slope_mmfou(spec, *spec.lambda(), o.t_lo, o.t_hi)
                                 : lrd_slope_fgn(spec, 1.0, o.t_lo, o.t_hi);
    emit(o, report_json(r, "lrd"));
  } else if (o.what == "mc") {
    const PathGrid grid(o.horizon, o.grid_n);
    const std::size_t n = std::max<std::size_t>(o.paths, 1000);
    const auto pairs = spread_pairs(grid, 24);
    McReport r;
    if (spec.lambda()) {
      const double lam = *spec.lambda();
      const MmfouSampler sampler(spec, lam, grid, o.method.empty() ? Method::dense_exact : parse_method(o.method));
      r = mc_cov_test(make_simulator(sampler), grid,
                      [&](double a, double b) { return mmfou_autocov(spec, lam, std::abs(a - b)).value; }, pairs, n,
                      o.seed);
    } else {
      const MmfbmSampler sampler(spec, grid, o.method.empty() ? Method::circulant_sum : parse_method(o.method));
      r = mc_cov_test(make_simulator(sampler), grid, [&](double a, double b) { return mmfbm_cov(spec, a, b).value; },
                      pairs, n, o.seed);
    }
    emit(o, to_json(r) + "\n");
  } else {
    throw ParameterError("--what must be one of holder, lrd, mc");
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const Suite suite = parse_suite(o.suite);
  std::vector<CriterionResult> results;
  if (o.criteria.empty()) {
    results = run_suite(suite);
  } else {
    for (int id : o.criteria) results.push_back(run_criterion(id, suite));
  }
  std::cout << format_table(results);
  for (const auto& r : results)
    if (!r.pass) return 2;
  return 0;
}

int cmd_figures(const Options& o) {
  if (o.out.empty()) throw ParameterError("figures needs --out <directory>");
  ScheduleKind kind;
  FigureOptions fo;
  const auto first = o.schedule.find_first_not_of(" \t");
  if (first != std::string::npos && o.schedule[first] == '{') {
    const auto fam = parse_schedule_json(o.schedule);
    kind = fam.kind;
    fo.h_lo = fam.h_lo;
    fo.h_hi = fam.h_hi;
    fo.n_hurst = fam.count;
  } else {
    kind = parse_schedule_kind(o.schedule);
  }
  if (o.seed != 1) fo.seed = o.seed;
  if (o.paths > 1) fo.n_paths = static_cast<int>(o.paths);
  for (const auto& f : reproduce_figures(kind, o.out, fo)) std::cout << f.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed fractional Brownian motion and fractional Ornstein-Uhlenbeck toolkit"};
  app.require_subcommand(1);
  Options o;

  auto spec_opt = [&](CLI::App* c) {
    c->add_option("--spec", o.spec, "mixture as inline JSON or a JSON file path");
  };
  auto grid_opts = [&](CLI::App* c) {
    c->add_option("--grid-n", o.grid_n, "number of grid points N")->check(CLI::PositiveNumber);
    c->add_option("--horizon", o.horizon, "time horizon T");
    c->add_option("--seed", o.seed, "64-bit seed");
    c->add_option("--method", o.method, "dense_exact, circulant_sum or langevin_euler");
    c->add_option("--paths", o.paths, "number of paths");
    c->add_option("--out", o.out, "output file (stdout if omitted)");
  };

  auto* cov = app.add_subcommand("cov", "covariance r(t,s) of the mixture, or rho(|t-s|) when lambda is set");
  spec_opt(cov);
  cov->add_option("--t", o.t, "time or lag")->required();
  cov->add_option("--s", o.s, "second time (default: t)");

  auto* sd = app.add_subcommand("sd", "spectral density at frequency x");
  spec_opt(sd);
  sd->add_option("--x", o.x, "angular frequency")->required();

  auto* sim = app.add_subcommand("simulate", "simulate paths to CSV (mmfOU when lambda is set)");
  spec_opt(sim);
  grid_opts(sim);

  auto* pv = app.add_subcommand("pvar", "Monte Carlo p-variation table");
  spec_opt(pv);
  grid_opts(pv);
  pv->add_option("--p", o.p, "variation order p > 0");
  pv->add_option("--n-list", o.n_list, "comma-separated increment counts (default: grid-n - 1)");

  auto* est = app.add_subcommand("estimate", "holder (variogram), lrd (slope) or mc (covariance z-test)");
  spec_opt(est);
  grid_opts(est);
  est->add_option("--what", o.what, "holder, lrd or mc");
  est->add_option("--t-lo", o.t_lo, "lrd window start");
  est->add_option("--t-hi", o.t_hi, "lrd window end");

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  ver->add_option("--suite", o.suite, "quick or full");
  ver->add_option("--criterion", o.criteria, "criterion id (repeatable)");

  auto* fig = app.add_subcommand("figures", "sample-path CSVs for a sigma schedule");
  fig->add_option("--schedule", o.schedule, "harmonic, factorial, exponential or a schedule JSON");
  fig->add_option("--out", o.out, "output directory")->required();
  fig->add_option("--seed", o.seed, "64-bit seed");
  fig->add_option("--paths", o.paths, "paths per figure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cov) return cmd_cov(o);
    if (*sd) return cmd_sd(o);
    if (*sim) return cmd_simulate(o);
    if (*pv) return cmd_pvar(o);
    if (*est) return cmd_estimate(o);
    if (*ver) return cmd_verify(o);
    if (*fig) return cmd_figures(o);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
