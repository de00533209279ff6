// Benchmark CLI: single runs, clip-level / tail-index sweeps, method
// comparisons, the worst-case chain instance, and schedule resolution.
// All numeric output is CSV (deterministic bytes under fixed inputs).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "htopt/experiments.hpp"
#include "htopt/hardinstance.hpp"
#include "htopt/optimizers.hpp"
#include "htopt/schedules.hpp"
#include "htopt/trace.hpp"

namespace {

using namespace htopt;

void write_or_print(const std::string& csv, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << csv;
    return;
  }
  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open output path: " + out);
  std::fwrite(csv.data(), 1, csv.size(), f);
  std::fclose(f);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ExperimentConfig base_config(const std::string& config_path) {
  if (!config_path.empty()) return load_config(config_path);
  ExperimentConfig cfg;
  cfg.optimizers.push_back(OptimizerConfig{});
  for (std::uint64_t s = 1000; s < 1021; ++s) cfg.seeds.push_back(s);
  return cfg;
}

struct CommonFlags {
  std::string config_path;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 1000;
  long n_seeds = 0;  // 0 = keep config seeds
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment config");
  cmd->add_option("--out", f.out, "output path ('-' for stdout)");
  cmd->add_option("--format", f.format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}));
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--seeds", f.n_seeds, "number of seeds (seed, seed+1, ...)");
}

void apply_seed_flags(ExperimentConfig& cfg, const CommonFlags& f, bool seed_given,
                      bool seeds_given) {
  if (seeds_given || (seed_given && cfg.seeds.empty())) {
    long n = f.n_seeds > 0 ? f.n_seeds : 21;
    cfg.seeds.clear();
    for (long i = 0; i < n; ++i) cfg.seeds.push_back(f.seed + static_cast<std::uint64_t>(i));
  } else if (seed_given) {
    cfg.seeds = {f.seed};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy-tailed stochastic optimization benchmark"};
  app.require_subcommand(1);

  // --- run: a single optimizer trace ---
  CommonFlags run_f;
  std::string run_method = "clip-nsgdhess";
  std::string run_schedule;
  double run_gamma = -1.0, run_alpha = -1.0;
  double run_lambda = -1.0, run_lambda_h_bar = -1.0;
  long run_T = 0;
  double run_tail = 0.0;
  CLI::App* run_cmd = app.add_subcommand("run", "single optimizer trace");
  add_common(run_cmd, run_f);
  run_cmd->add_option("--method", run_method, "optimizer name");
  run_cmd->add_option("--schedule", run_schedule,
                      "manual | thm2 | thm3 | thm3-shape | clip-nsgdm-baseline");
  run_cmd->add_option("--gamma", run_gamma, "step size");
  run_cmd->add_option("--alpha", run_alpha, "momentum weight");
  run_cmd->add_option("--lambda", run_lambda, "gradient clip level");
  run_cmd->add_option("--lambda-h-bar", run_lambda_h_bar, "scaled Hessian clip level");
  run_cmd->add_option("--T", run_T, "iteration budget");
  run_cmd->add_option("--tail-index", run_tail, "gradient-noise tail index");

  // --- sweep: grid over lambda / lambda_h_bar / tail index ---
  CommonFlags sweep_f;
  std::string sweep_kind = "lambda";
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter grid sweep");
  add_common(sweep_cmd, sweep_f);
  sweep_cmd->add_option("--kind", sweep_kind, "lambda | lambda-regime | tail")
      ->check(CLI::IsMember({"lambda", "lambda-regime", "tail"}));

  // --- compare: multi-method drivers ---
  CommonFlags cmp_f;
  std::string cmp_kind = "trajectory";
  CLI::App* cmp_cmd = app.add_subcommand("compare", "method comparison drivers");
  add_common(cmp_cmd, cmp_f);
  cmp_cmd->add_option("--kind", cmp_kind, "trajectory | tail")
      ->check(CLI::IsMember({"trajectory", "tail"}));

  // --- hard-instance: chain construction driver ---
  CommonFlags hi_f;
  double hi_delta = 100.0, hi_l1 = 135.0, hi_l2 = 1900.0;
  double hi_sigma1 = 1.0, hi_sigma2 = 1.0, hi_eps = 0.1, hi_p = 1.5;
  int hi_q = 2;
  std::string hi_run_method;
  long hi_T = 0;
  CLI::App* hi_cmd = app.add_subcommand("hard-instance", "worst-case chain driver");
  add_common(hi_cmd, hi_f);
  hi_cmd->add_option("--delta", hi_delta, "initial suboptimality budget");
  hi_cmd->add_option("--l1", hi_l1, "gradient Lipschitz target");
  hi_cmd->add_option("--l2", hi_l2, "Hessian Lipschitz target");
  hi_cmd->add_option("--sigma1", hi_sigma1, "gradient noise level");
  hi_cmd->add_option("--sigma2", hi_sigma2, "Hessian noise level");
  hi_cmd->add_option("--epsilon", hi_eps, "target stationarity");
  hi_cmd->add_option("--p", hi_p, "moment order in (1, 2]");
  hi_cmd->add_option("--q", hi_q, "oracle derivative order (1 or 2)");
  hi_cmd->add_option("--run-method", hi_run_method,
                     "also run this optimizer against the instance");
  hi_cmd->add_option("--T", hi_T, "iteration budget for --run-method");
  hi_cmd->add_option("--gamma", run_gamma, "step size for --run-method");
  hi_cmd->add_option("--alpha", run_alpha, "momentum weight for --run-method");
  hi_cmd->add_option("--lambda", run_lambda, "gradient clip level for --run-method");
  hi_cmd->add_option("--lambda-h-bar", run_lambda_h_bar,
                     "scaled Hessian clip level for --run-method");

  // --- schedule: print resolved parameters ---
  CommonFlags sch_f;
  std::string sch_which = "thm2";
  ProblemConstants sch_c;
  CLI::App* sch_cmd = app.add_subcommand("schedule", "resolve a schedule");
  add_common(sch_cmd, sch_f);
  sch_cmd->add_option("--which", sch_which, "thm2 | thm3 | clip-nsgdm-baseline")
      ->check(CLI::IsMember({"thm2", "thm3", "clip-nsgdm-baseline"}));
  sch_cmd->add_option("--delta", sch_c.delta, "F(x0) - F*");
  sch_cmd->add_option("--L", sch_c.l_smooth, "gradient Lipschitz constant");
  sch_cmd->add_option("--sigma", sch_c.sigma, "gradient noise level");
  sch_cmd->add_option("--sigma-h", sch_c.sigma_h, "Hessian noise level");
  sch_cmd->add_option("--p", sch_c.p, "moment order in (1, 2]");
  sch_cmd->add_option("--epsilon", sch_c.epsilon, "target accuracy");
  sch_cmd->add_option("--T", sch_c.T, "iteration budget");
  sch_cmd->add_option("--delta-prob", sch_c.delta_prob, "failure probability");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      ExperimentConfig cfg = base_config(run_f.config_path);
      apply_seed_flags(cfg, run_f, run_cmd->count("--seed") > 0, false);
      OptimizerConfig oc = cfg.optimizers.front();
      if (run_cmd->count("--method")) oc.method = method_from_name(run_method);
      if (run_cmd->count("--schedule")) oc.schedule = run_schedule;
      if (run_cmd->count("--gamma")) oc.gamma = run_gamma;
      if (run_cmd->count("--alpha")) oc.alpha = run_alpha;
      if (run_cmd->count("--lambda")) oc.lambda = run_lambda;
      if (run_cmd->count("--lambda-h-bar")) oc.lambda_h_bar = run_lambda_h_bar;
      if (run_cmd->count("--T")) cfg.T = run_T;
      if (run_cmd->count("--tail-index")) {
        cfg.problem.gradient_noise.tail_index = run_tail;
      }
      std::uint64_t seed = cfg.seeds.front();
      auto problem = make_problem(cfg.problem);
      RandomSource x0_rng = RandomSource(seed).split(0);
      Vec x0(problem->dim());
      for (double& xi : x0) xi = x0_rng.normal();
      OptimizerParams params =
          resolve_optimizer(oc, *problem, x0, cfg, cfg.problem.gradient_noise.tail_index);
      RunTrace trace = run(params, *problem, cfg.T, seed, &x0);
      trace.meta["config_hash"] = config_hash(cfg);
      trace.meta["seed"] = std::to_string(seed);
      trace.meta["method"] = method_name(params.method);
      trace.meta["schedule"] = oc.schedule;
      trace.meta["gamma"] = fmt(params.gamma);
      trace.meta["alpha"] = fmt(params.alpha);
      trace.meta["lambda"] = fmt(params.lambda);
      trace.meta["lambda_h_bar"] = fmt(params.lambda_h_bar);
      trace.meta["T"] = std::to_string(cfg.T);
      trace.meta["problem"] = problem->name();
      write_or_print(trace_to_csv(trace), run_f.out);
    } else if (*sweep_cmd) {
      ExperimentConfig cfg = base_config(sweep_f.config_path);
      apply_seed_flags(cfg, sweep_f, sweep_cmd->count("--seed") > 0,
                       sweep_cmd->count("--seeds") > 0);
      Table t;
      if (sweep_kind == "lambda") {
        t = experiment_clip_sensitivity(cfg);
      } else if (sweep_kind == "lambda-regime") {
        t = experiment_fig5(cfg);
      } else {
        t = experiment_fig4(cfg);
      }
      write_or_print(table_to_csv(t), sweep_f.out);
    } else if (*cmp_cmd) {
      ExperimentConfig cfg = base_config(cmp_f.config_path);
      apply_seed_flags(cfg, cmp_f, cmp_cmd->count("--seed") > 0,
                       cmp_cmd->count("--seeds") > 0);
      Table t = cmp_kind == "trajectory" ? experiment_fig2(cfg) : experiment_fig4(cfg);
      write_or_print(table_to_csv(t), cmp_f.out);
    } else if (*hi_cmd) {
      HardInstance inst = rescale_for_target(hi_delta, hi_l1, hi_l2, hi_sigma1,
                                             hi_sigma2, hi_eps, hi_p, hi_q);
      if (hi_run_method.empty()) {
        Table t;
        t.meta["driver"] = "hard-instance";
        t.columns = {"delta", "epsilon", "p", "sigma1", "t_dim", "nu", "beta", "rho"};
        t.rows.push_back({hi_delta, hi_eps, hi_p, hi_sigma1,
                          static_cast<double>(inst.chain.t_dim), inst.chain.nu,
                          inst.chain.beta, inst.rho});
        write_or_print(table_to_csv(t), hi_f.out);
      } else {
        HardInstanceOracle oracle(inst);
        OptimizerParams params;
        params.method = method_from_name(hi_run_method);
        if (run_gamma > 0.0) params.gamma = run_gamma;
        if (run_alpha > 0.0) params.alpha = run_alpha;
        if (run_lambda > 0.0) params.lambda = run_lambda;
        if (run_lambda_h_bar > 0.0) params.lambda_h_bar = run_lambda_h_bar;
        long T = hi_T > 0 ? hi_T : 4 * inst.chain.t_dim;
        Vec x0(oracle.dim(), 0.0);  // origin is the canonical start
        RunTrace trace = run(params, oracle, T, hi_f.seed, &x0);
        trace.meta["seed"] = std::to_string(hi_f.seed);
        trace.meta["method"] = method_name(params.method);
        trace.meta["problem"] = oracle.name();
        trace.meta["t_dim"] = std::to_string(inst.chain.t_dim);
        trace.meta["nu"] = fmt(inst.chain.nu);
        trace.meta["beta"] = fmt(inst.chain.beta);
        trace.meta["rho"] = fmt(inst.rho);
        write_or_print(trace_to_csv(trace), hi_f.out);
      }
    } else if (*sch_cmd) {
      Schedule s;
      if (sch_which == "thm2") {
        s = schedule_thm2(sch_c);
      } else if (sch_which == "thm3") {
        s = schedule_thm3(sch_c);
      } else {
        s = schedule_clip_nsgdm_baseline(sch_c);
      }
      Table t;
      t.meta["provenance"] = provenance_name(s.provenance);
      t.columns = {"gamma", "alpha", "b_init", "lambda", "lambda_h_bar"};
      t.rows.push_back({s.gamma, s.alpha, static_cast<double>(s.b_init), s.lambda,
                        s.lambda_h_bar});
      write_or_print(table_to_csv(t), sch_f.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
