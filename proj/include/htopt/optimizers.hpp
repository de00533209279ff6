#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "htopt/clipping.hpp"
#include "htopt/problems.hpp"
#include "htopt/rng.hpp"
#include "htopt/trace.hpp"
#include "htopt/vec.hpp"

namespace htopt {

enum class Method { nsgd, nsgdm, clip_nsgdm, nsgdhess, clip_nsgdhess };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

enum class InitG0 { batch, exact, zero };

struct OptimizerParams {
  Method method = Method::nsgdm;
  double gamma = 0.01;
  double alpha = 0.1;
  // Clip levels; infinities disable clipping for the clipped variants.
  double lambda = std::numeric_limits<double>::infinity();
  double lambda_h_bar = std::numeric_limits<double>::infinity();
  // Initialization of g0 (second-order unclipped method only; the
  // clipped variant always starts from x1 = x0, g0 = 0).
  InitG0 g0_variant = InitG0::batch;
  long b_init = 1;
};

struct OptimizerState {
  Vec x_prev;
  Vec x_curr;
  Vec g;
  long t = 1;
  long samples_used = 0;
};

struct StepReport {
  double grad_norm_exact = 0.0;
  double momentum_norm = 0.0;
  double q_t = -1.0;
  bool grad_clip_active = false;
  bool hvp_clip_active = false;
};

// g0 = (1/b_init) sum of b_init independent noisy gradients at x0.
// samples_used, when given, is incremented by b_init.
Vec init_g0(const Oracle& oracle, const Vec& x0, long b_init, RandomSource& r,
            long* samples_used = nullptr);

// Builds the state after the initialization step of the respective
// algorithm: second-order unclipped takes x1 = x0 - gamma g0/||g0||;
// the clipped second-order variant and all first-order methods start
// from x1 = x0, g0 = 0.
OptimizerState make_initial_state(const OptimizerParams& p, const Oracle& oracle,
                                  const Vec& x0, RandomSource& r);

// One iteration t -> t+1. grad_rng supplies the xi_t draw, hvp_rng the
// independent hat-xi_t draw, q_rng the interpolation variable q_t.
// When ||g_t|| = 0 the iterate does not move.
StepReport step(OptimizerState& s, const Oracle& oracle, const OptimizerParams& p,
                RandomSource& q_rng, RandomSource& grad_rng, RandomSource& hvp_rng);

// Full loop driver: deterministic under (params, oracle, T, seed, x0).
// If x0 is null, it is drawn standard normal from the seed. The trace
// has rows t = 0..T; row t carries ||grad F(x_t)|| and the report of the
// step that produced x_t.
RunTrace run(const OptimizerParams& p, const Oracle& oracle, long T,
             std::uint64_t seed, const Vec* x0 = nullptr);

}  // namespace htopt
