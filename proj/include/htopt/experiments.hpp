#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "htopt/noise.hpp"
#include "htopt/optimizers.hpp"
#include "htopt/problems.hpp"
#include "htopt/schedules.hpp"
#include "htopt/trace.hpp"

namespace htopt {

// One optimizer entry of an experiment: either fully manual parameters
// or a schedule provenance resolved against the problem constants.
struct OptimizerConfig {
  Method method = Method::clip_nsgdhess;
  std::string schedule = "manual";  // manual | thm2 | thm3 | thm3-shape | clip-nsgdm-baseline
  double gamma = 0.01;
  double alpha = 0.2;
  double lambda = std::numeric_limits<double>::infinity();
  double lambda_h_bar = std::numeric_limits<double>::infinity();
  InitG0 g0_variant = InitG0::batch;
  long b_init = 1;
};

struct ProblemConfig {
  std::string name = "quadratic";  // quadratic | wells | hard-instance
  std::size_t dim = 10;
  double wells_tether = 0.1;
  TailSpec gradient_noise{TailKind::two_sided_pareto, 1.1, 1.0, true};
  TailSpec hessian_noise{};  // disabled by default
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<OptimizerConfig> optimizers;
  std::vector<double> tail_indices;   // p-bar sweep grid
  std::vector<double> lambda_grid;    // clipping-level sweep grid
  std::vector<double> lambda_h_bar_grid;
  long T = 4000;
  double target = 1.5;                // epsilon_stop on the exact gradient norm
  std::vector<std::uint64_t> seeds;   // distinct; odd count keeps medians realized
  std::string out_path = "out.csv";
  // Schedule constants: p used in formulas; epsilon/delta_prob for thm2/thm3.
  double schedule_p = 2.0;
  double schedule_epsilon = 0.1;
  double schedule_delta_prob = 0.1;
};

// JSON config loading; CLI flags override individual fields afterwards.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_json(const std::string& text);

std::unique_ptr<Oracle> make_problem(const ProblemConfig& pc);

// Resolves an optimizer entry into concrete parameters against a
// problem, drawing x0-dependent constants (delta_1) from the given x0.
OptimizerParams resolve_optimizer(const OptimizerConfig& oc, const Oracle& problem,
                                  const Vec& x0, const ExperimentConfig& cfg,
                                  double tail_index);

// FNV-1a hash of the config serialization; echoed into CSV metadata.
std::string config_hash(const ExperimentConfig& cfg);

// Median of a sample (odd counts give realized values).
double median(std::vector<double> v);

// Run one optimizer for every seed and report iterations-to-target per
// seed; runs that never reach the target count as T (capped).
std::vector<double> iterations_per_seed(const OptimizerConfig& oc,
                                        const ExperimentConfig& cfg, double tail_index,
                                        double target);

// Experiment drivers. Each is a pure function of (config, seeds) with
// byte-identical CSV output on repetition.

// Median exact-gradient-norm trajectory per algorithm on the heavy-tail
// quadratic, plus a summary of terminal medians and target-hit rates.
Table experiment_fig2(const ExperimentConfig& cfg);

// Median iterations-to-target against a shared gradient/Hessian clip
// level grid (lambda_h = lambda, so lambda_h_bar = lambda / gamma).
Table experiment_clip_sensitivity(const ExperimentConfig& cfg);

// Second-order vs first-order clipped methods across the tail-index grid.
Table experiment_fig4(const ExperimentConfig& cfg);

// Gradient-clip sweep per Hessian-clip regime.
Table experiment_fig5(const ExperimentConfig& cfg);

}  // namespace htopt
