#include "htopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace htopt {

namespace {

using nlohmann::json;

TailKind tail_kind_from_name(const std::string& name) {
  if (name == "none") return TailKind::none;
  if (name == "two-sided-pareto") return TailKind::two_sided_pareto;
  if (name == "gaussian") return TailKind::gaussian;
  if (name == "bernoulli-zero-chain") return TailKind::bernoulli_zero_chain;
  throw std::invalid_argument("unknown noise kind: " + name);
}

std::string tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::none: return "none";
    case TailKind::two_sided_pareto: return "two-sided-pareto";
    case TailKind::gaussian: return "gaussian";
    case TailKind::bernoulli_zero_chain: return "bernoulli-zero-chain";
  }
  throw std::logic_error("unreachable");
}

TailSpec parse_tail_spec(const json& j) {
  TailSpec s;
  s.kind = tail_kind_from_name(j.value("kind", "none"));
  s.tail_index = j.value("tail_index", 1.5);
  s.scale = j.value("scale", 1.0);
  s.per_coordinate = j.value("per_coordinate", true);
  if (s.kind == TailKind::two_sided_pareto && !(s.tail_index > 1.0)) {
    throw std::invalid_argument("tail_index must be > 1");
  }
  if (!(s.scale > 0.0)) throw std::invalid_argument("noise scale must be > 0");
  return s;
}

InitG0 g0_from_name(const std::string& name) {
  if (name == "batch") return InitG0::batch;
  if (name == "exact") return InitG0::exact;
  if (name == "zero") return InitG0::zero;
  throw std::invalid_argument("unknown g0 variant: " + name);
}

double json_level(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (j[key].is_string() && j[key] == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  return j[key].get<double>();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig cfg;
  if (j.contains("problem")) {
    const json& p = j["problem"];
    cfg.problem.name = p.value("name", "quadratic");
    cfg.problem.dim = p.value("dim", std::size_t{10});
    cfg.problem.wells_tether = p.value("wells_tether", 0.1);
    if (p.contains("gradient_noise")) cfg.problem.gradient_noise = parse_tail_spec(p["gradient_noise"]);
    if (p.contains("hessian_noise")) cfg.problem.hessian_noise = parse_tail_spec(p["hessian_noise"]);
  }
  if (j.contains("optimizers")) {
    cfg.optimizers.clear();
    for (const json& o : j["optimizers"]) {
      OptimizerConfig oc;
      oc.method = method_from_name(o.value("method", "clip-nsgdhess"));
      oc.schedule = o.value("schedule", "manual");
      oc.gamma = o.value("gamma", 0.01);
      oc.alpha = o.value("alpha", 0.2);
      oc.lambda = json_level(o, "lambda", oc.lambda);
      oc.lambda_h_bar = json_level(o, "lambda_h_bar", oc.lambda_h_bar);
      oc.g0_variant = g0_from_name(o.value("g0", "batch"));
      oc.b_init = o.value("b_init", 1L);
      cfg.optimizers.push_back(oc);
    }
  }
  if (cfg.optimizers.empty()) throw std::invalid_argument("config: optimizer list is empty");
  if (j.contains("tail_indices")) cfg.tail_indices = j["tail_indices"].get<std::vector<double>>();
  if (j.contains("lambda_grid")) cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
  if (j.contains("lambda_h_bar_grid")) {
    cfg.lambda_h_bar_grid = j["lambda_h_bar_grid"].get<std::vector<double>>();
  }
  cfg.T = j.value("T", 4000L);
  cfg.target = j.value("target", 1.5);
  if (j.contains("seeds")) {
    cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  } else {
    long n = j.value("n_seeds", 21L);
    std::uint64_t base = j.value("seed_base", std::uint64_t{1000});
    cfg.seeds.clear();
    for (long i = 0; i < n; ++i) cfg.seeds.push_back(base + static_cast<std::uint64_t>(i));
  }
  std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
  if (uniq.size() != cfg.seeds.size()) throw std::invalid_argument("config: seeds must be distinct");
  if (cfg.seeds.empty()) throw std::invalid_argument("config: seed list is empty");
  cfg.out_path = j.value("out", cfg.out_path);
  cfg.schedule_p = j.value("schedule_p", 2.0);
  cfg.schedule_epsilon = j.value("schedule_epsilon", 0.1);
  cfg.schedule_delta_prob = j.value("schedule_delta_prob", 0.1);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::unique_ptr<Oracle> make_problem(const ProblemConfig& pc) {
  if (pc.name == "quadratic") {
    return std::make_unique<QuadraticProblem>(pc.dim, pc.gradient_noise, pc.hessian_noise);
  }
  if (pc.name == "wells") {
    return std::make_unique<WellsProblem>(pc.dim, pc.wells_tether, pc.gradient_noise,
                                          pc.hessian_noise);
  }
  throw std::invalid_argument("unknown problem: " + pc.name +
                              " (the hard instance has its own driver)");
}

namespace {

// Derived p-th moment bound for the configured gradient noise:
// per-coordinate i.i.d. gives E||noise||^p <= d * E|X|^p for p <= 2.
// Orders at or above the tail index have no finite bound; the schedule
// then uses a slightly smaller order.
double derived_sigma(const TailSpec& spec, std::size_t d, double p) {
  if (spec.kind == TailKind::none) return 0.0;
  if (spec.kind == TailKind::gaussian) {
    // E||noise||^p <= (E||noise||^2)^(p/2) = (d s^2)^(p/2)
    return std::pow(static_cast<double>(d), 0.5) * spec.scale;
  }
  double p_eff = std::min(p, 0.95 * spec.tail_index);
  double per_coord = pareto_abs_moment(spec, p_eff);
  double dim_factor = spec.per_coordinate ? static_cast<double>(d) : 1.0;
  return std::pow(dim_factor * per_coord, 1.0 / p_eff);
}

}  // namespace

OptimizerParams resolve_optimizer(const OptimizerConfig& oc, const Oracle& problem,
                                  const Vec& x0, const ExperimentConfig& cfg,
                                  double tail_index) {
  OptimizerParams p;
  p.method = oc.method;
  p.g0_variant = oc.g0_variant;
  p.b_init = oc.b_init;
  p.lambda = oc.lambda;
  p.lambda_h_bar = oc.lambda_h_bar;

  if (oc.schedule == "manual") {
    p.gamma = oc.gamma;
    p.alpha = oc.alpha;
    return p;
  }

  ProblemConstants c;
  c.delta = problem.value(x0) - problem.f_star();
  c.l_smooth = problem.lipschitz_l();
  TailSpec gn = problem.gradient_noise();
  if (gn.kind == TailKind::two_sided_pareto) gn.tail_index = tail_index;
  c.sigma = derived_sigma(gn, problem.dim(), cfg.schedule_p);
  c.sigma_h = derived_sigma(problem.hessian_noise(), problem.dim(), cfg.schedule_p);
  c.p = tail_index > 1.0 && tail_index <= 2.0 ? tail_index : cfg.schedule_p;
  c.epsilon = cfg.schedule_epsilon;
  c.T = cfg.T;
  c.delta_prob = cfg.schedule_delta_prob;

  Schedule s;
  if (oc.schedule == "thm2") {
    s = schedule_thm2(c);
    p.b_init = s.b_init;
  } else if (oc.schedule == "thm3") {
    s = schedule_thm3(c);
    p.lambda = s.lambda;
    p.lambda_h_bar = s.lambda_h_bar;
  } else if (oc.schedule == "thm3-shape") {
    s = schedule_thm3_shape(c);
  } else if (oc.schedule == "clip-nsgdm-baseline") {
    s = schedule_clip_nsgdm_baseline(c);
  } else {
    throw std::invalid_argument("unknown schedule: " + oc.schedule);
  }
  p.gamma = s.gamma;
  p.alpha = s.alpha;
  return p;
}

namespace {

std::string canonical_config_string(const ExperimentConfig& cfg) {
  std::ostringstream s;
  s << "problem=" << cfg.problem.name << ";dim=" << cfg.problem.dim
    << ";gnoise=" << tail_kind_name(cfg.problem.gradient_noise.kind) << ','
    << cfg.problem.gradient_noise.tail_index << ',' << cfg.problem.gradient_noise.scale
    << ',' << cfg.problem.gradient_noise.per_coordinate
    << ";hnoise=" << tail_kind_name(cfg.problem.hessian_noise.kind) << ','
    << cfg.problem.hessian_noise.tail_index << ',' << cfg.problem.hessian_noise.scale
    << ";T=" << cfg.T << ";target=" << cfg.target << ";p=" << cfg.schedule_p
    << ";eps=" << cfg.schedule_epsilon << ";dprob=" << cfg.schedule_delta_prob;
  for (const auto& oc : cfg.optimizers) {
    s << ";opt=" << method_name(oc.method) << ',' << oc.schedule << ',' << oc.gamma << ','
      << oc.alpha << ',' << oc.lambda << ',' << oc.lambda_h_bar << ',' << oc.b_init;
  }
  s << ";seeds=";
  for (auto sd : cfg.seeds) s << sd << ',';
  s << ";tails=";
  for (auto t : cfg.tail_indices) s << t << ',';
  s << ";lgrid=";
  for (auto l : cfg.lambda_grid) s << l << ',';
  s << ";lhgrid=";
  for (auto l : cfg.lambda_h_bar_grid) s << l << ',';
  return s.str();
}

}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  std::string s = canonical_config_string(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

Vec draw_x0(std::uint64_t seed, std::size_t d) {
  RandomSource x0_rng = RandomSource(seed).split(0);
  Vec x0(d);
  for (double& xi : x0) xi = x0_rng.normal();
  return x0;
}

RunTrace run_cell(const OptimizerConfig& oc, const ExperimentConfig& cfg,
                  double tail_index, std::uint64_t seed) {
  ProblemConfig pc = cfg.problem;
  if (pc.gradient_noise.kind == TailKind::two_sided_pareto) {
    pc.gradient_noise.tail_index = tail_index;
  }
  if (pc.hessian_noise.kind == TailKind::two_sided_pareto) {
    pc.hessian_noise.tail_index = tail_index;
  }
  auto problem = make_problem(pc);
  Vec x0 = draw_x0(seed, problem->dim());
  OptimizerParams params = resolve_optimizer(oc, *problem, x0, cfg, tail_index);
  return run(params, *problem, cfg.T, seed, &x0);
}

}  // namespace

std::vector<double> iterations_per_seed(const OptimizerConfig& oc,
                                        const ExperimentConfig& cfg, double tail_index,
                                        double target) {
  std::vector<double> iters;
  iters.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds) {
    RunTrace trace = run_cell(oc, cfg, tail_index, seed);
    auto hit = iterations_to_target(trace, target);
    iters.push_back(hit ? static_cast<double>(*hit) : static_cast<double>(cfg.T));
  }
  return iters;
}

Table experiment_fig2(const ExperimentConfig& cfg) {
  if (cfg.optimizers.empty()) throw std::invalid_argument("fig2: no optimizers configured");
  double tail = cfg.problem.gradient_noise.tail_index;

  Table table;
  table.meta["experiment"] = "noise-robustness-comparison";
  table.meta["config_hash"] = config_hash(cfg);
  table.columns.push_back("t");

  std::vector<std::vector<RunTrace>> traces(cfg.optimizers.size());
  for (std::size_t m = 0; m < cfg.optimizers.size(); ++m) {
    const auto& oc = cfg.optimizers[m];
    table.columns.push_back("median_grad_norm_" + method_name(oc.method));
    for (std::uint64_t seed : cfg.seeds) {
      traces[m].push_back(run_cell(oc, cfg, tail, seed));
    }
    // Summary rows go into the metadata block.
    std::vector<double> terminal;
    double hits = 0.0;
    for (const auto& tr : traces[m]) {
      terminal.push_back(tr.rows.back().grad_norm_exact);
      if (iterations_to_target(tr, cfg.target)) hits += 1.0;
    }
    std::ostringstream key, val;
    key << "terminal_median_" << method_name(oc.method);
    val << median(terminal);
    table.meta[key.str()] = val.str();
    std::ostringstream key2, val2;
    key2 << "target_hit_fraction_" << method_name(oc.method);
    val2 << hits / static_cast<double>(cfg.seeds.size());
    table.meta[key2.str()] = val2.str();
  }

  for (long t = 0; t < cfg.T; ++t) {
    std::vector<double> row;
    row.push_back(static_cast<double>(t));
    for (std::size_t m = 0; m < cfg.optimizers.size(); ++m) {
      std::vector<double> vals;
      for (const auto& tr : traces[m]) {
        vals.push_back(tr.rows[static_cast<std::size_t>(t)].grad_norm_exact);
      }
      row.push_back(median(vals));
    }
    table.rows.push_back(row);
  }
  return table;
}

Table experiment_clip_sensitivity(const ExperimentConfig& cfg) {
  if (cfg.lambda_grid.empty()) throw std::invalid_argument("clip sweep: empty lambda grid");
  OptimizerConfig oc = cfg.optimizers.front();
  Table table;
  table.meta["experiment"] = "clip-level-sensitivity";
  table.meta["config_hash"] = config_hash(cfg);
  table.meta["gamma"] = std::to_string(oc.gamma);
  table.meta["alpha"] = std::to_string(oc.alpha);
  table.columns = {"lambda", "median_iterations"};
  for (double lambda : cfg.lambda_grid) {
    OptimizerConfig cell = oc;
    cell.lambda = lambda;
    // lambda_h = lambda, i.e. lambda_h_bar = lambda / gamma.
    cell.lambda_h_bar = lambda / cell.gamma;
    std::vector<double> iters =
        iterations_per_seed(cell, cfg, cfg.problem.gradient_noise.tail_index, cfg.target);
    table.rows.push_back({lambda, median(iters)});
  }
  return table;
}

Table experiment_fig4(const ExperimentConfig& cfg) {
  if (cfg.tail_indices.empty()) throw std::invalid_argument("fig4: empty tail-index grid");
  if (cfg.optimizers.size() < 2) {
    throw std::invalid_argument("fig4: needs the two clipped optimizers");
  }
  Table table;
  table.meta["experiment"] = "tail-index-comparison";
  table.meta["config_hash"] = config_hash(cfg);
  table.columns.push_back("tail_index");
  for (const auto& oc : cfg.optimizers) {
    table.columns.push_back("median_iterations_" + method_name(oc.method));
  }
  for (double tail : cfg.tail_indices) {
    std::vector<double> row{tail};
    for (const auto& oc : cfg.optimizers) {
      std::vector<double> iters = iterations_per_seed(oc, cfg, tail, cfg.target);
      row.push_back(median(iters));
    }
    table.rows.push_back(row);
  }
  return table;
}

Table experiment_fig5(const ExperimentConfig& cfg) {
  if (cfg.lambda_h_bar_grid.empty()) {
    throw std::invalid_argument("fig5: empty lambda_h_bar grid");
  }
  OptimizerConfig oc = cfg.optimizers.front();
  Table table;
  table.meta["experiment"] = "gradient-clip-per-hessian-clip-regime";
  table.meta["config_hash"] = config_hash(cfg);
  table.columns = {"lambda_h_bar", "lambda", "median_iterations"};
  for (double lhb : cfg.lambda_h_bar_grid) {
    std::vector<double> lambdas = cfg.lambda_grid;
    if (lambdas.empty()) {
      // Default grid: lambda_h_bar * 10^k for k = -2..4, decade steps.
      for (int k = -2; k <= 4; ++k) lambdas.push_back(lhb * std::pow(10.0, k));
    }
    for (double lambda : lambdas) {
      OptimizerConfig cell = oc;
      cell.lambda = lambda;
      cell.lambda_h_bar = lhb;
      std::vector<double> iters =
          iterations_per_seed(cell, cfg, cfg.problem.gradient_noise.tail_index, cfg.target);
      table.rows.push_back({lhb, lambda, median(iters)});
    }
  }
  return table;
}

}  // namespace htopt
