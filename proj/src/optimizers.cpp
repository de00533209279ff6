#include "htopt/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace htopt {

std::string method_name(Method m) {
  switch (m) {
    case Method::nsgd: return "nsgd";
    case Method::nsgdm: return "nsgdm";
    case Method::clip_nsgdm: return "clip-nsgdm";
    case Method::nsgdhess: return "nsgdhess";
    case Method::clip_nsgdhess: return "clip-nsgdhess";
  }
  throw std::logic_error("unreachable");
}

Method method_from_name(const std::string& name) {
  if (name == "nsgd") return Method::nsgd;
  if (name == "nsgdm") return Method::nsgdm;
  if (name == "clip-nsgdm") return Method::clip_nsgdm;
  if (name == "nsgdhess") return Method::nsgdhess;
  if (name == "clip-nsgdhess") return Method::clip_nsgdhess;
  throw std::invalid_argument("unknown method: " + name);
}

Vec init_g0(const Oracle& oracle, const Vec& x0, long b_init, RandomSource& r,
            long* samples_used) {
  if (b_init < 1) throw std::invalid_argument("init_g0: b_init must be >= 1");
  Vec g = zeros(oracle.dim());
  for (long j = 0; j < b_init; ++j) {
    Vec gj = oracle.noisy_gradient(x0, r);
    axpy(g, 1.0 / static_cast<double>(b_init), gj);
  }
  if (samples_used) *samples_used += b_init;
  return g;
}

OptimizerState make_initial_state(const OptimizerParams& p, const Oracle& oracle,
                                  const Vec& x0, RandomSource& r) {
  if (!(p.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1]");
  }
  OptimizerState s;
  s.x_prev = x0;
  s.samples_used = 0;
  if (p.method == Method::nsgdhess) {
    switch (p.g0_variant) {
      case InitG0::batch:
        s.g = init_g0(oracle, x0, p.b_init, r, &s.samples_used);
        break;
      case InitG0::exact:
        s.g = oracle.gradient(x0);
        break;
      case InitG0::zero:
        s.g = zeros(oracle.dim());
        break;
    }
    double n = euclidean_norm(s.g);
    s.x_curr = x0;
    if (n > 0.0) axpy(s.x_curr, -p.gamma / n, s.g);
  } else {
    // Clipped second-order variant and all first-order methods.
    s.g = zeros(oracle.dim());
    s.x_curr = x0;
  }
  s.t = 1;
  return s;
}

StepReport step(OptimizerState& s, const Oracle& oracle, const OptimizerParams& p,
                RandomSource& q_rng, RandomSource& grad_rng, RandomSource& hvp_rng) {
  StepReport rep;
  const double one_minus_alpha = 1.0 - p.alpha;

  switch (p.method) {
    case Method::nsgd: {
      s.g = oracle.noisy_gradient(s.x_curr, grad_rng);
      s.samples_used += 1;
      break;
    }
    case Method::nsgdm: {
      Vec grad = oracle.noisy_gradient(s.x_curr, grad_rng);
      s.samples_used += 1;
      for (std::size_t i = 0; i < s.g.size(); ++i) {
        s.g[i] = one_minus_alpha * s.g[i] + p.alpha * grad[i];
      }
      break;
    }
    case Method::clip_nsgdm: {
      Vec grad = oracle.noisy_gradient(s.x_curr, grad_rng);
      s.samples_used += 1;
      rep.grad_clip_active = euclidean_norm(grad) > p.lambda;
      Vec clipped = clip(grad, p.lambda);
      for (std::size_t i = 0; i < s.g.size(); ++i) {
        s.g[i] = one_minus_alpha * s.g[i] + p.alpha * clipped[i];
      }
      break;
    }
    case Method::nsgdhess:
    case Method::clip_nsgdhess: {
      double q = q_rng.uniform();
      rep.q_t = q;
      Vec x_hat = scaled(s.x_curr, q);
      axpy(x_hat, 1.0 - q, s.x_prev);
      Vec dx = sub(s.x_curr, s.x_prev);
      Vec grad = oracle.noisy_gradient(s.x_curr, grad_rng);
      Vec hv = oracle.noisy_hvp(x_hat, dx, hvp_rng);
      s.samples_used += 2;
      if (p.method == Method::clip_nsgdhess) {
        rep.grad_clip_active = euclidean_norm(grad) > p.lambda;
        rep.hvp_clip_active = euclidean_norm(hv) > p.gamma * p.lambda_h_bar;
        grad = clip(grad, p.lambda);
        hv = clip_hvp(hv, p.gamma, p.lambda_h_bar);
      }
      for (std::size_t i = 0; i < s.g.size(); ++i) {
        s.g[i] = one_minus_alpha * (s.g[i] + hv[i]) + p.alpha * grad[i];
      }
      break;
    }
  }

  double gn = euclidean_norm(s.g);
  rep.momentum_norm = gn;
  s.x_prev = s.x_curr;
  if (gn > 0.0) axpy(s.x_curr, -p.gamma / gn, s.g);
  s.t += 1;
  rep.grad_norm_exact = euclidean_norm(oracle.gradient(s.x_curr));
  return rep;
}

RunTrace run(const OptimizerParams& p, const Oracle& oracle, long T,
             std::uint64_t seed, const Vec* x0_in) {
  if (T < 1) throw std::invalid_argument("run: T must be >= 1");
  RandomSource root(seed);
  RandomSource x0_rng = root.split(0);
  RandomSource g0_rng = root.split(1);
  RandomSource q_rng = root.split(2);
  RandomSource grad_rng = root.split(3);
  RandomSource hvp_rng = root.split(4);

  Vec x0;
  if (x0_in) {
    x0 = *x0_in;
    if (x0.size() != oracle.dim()) throw std::invalid_argument("run: x0 dimension mismatch");
  } else {
    x0 = zeros(oracle.dim());
    for (double& xi : x0) xi = x0_rng.normal();
  }

  RunTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(T));

  TraceRow row0;
  row0.t = 0;
  row0.grad_norm_exact = euclidean_norm(oracle.gradient(x0));
  row0.momentum_norm = 0.0;
  row0.samples_used = 0;
  trace.rows.push_back(row0);
  if (T == 1) return trace;

  OptimizerState s = make_initial_state(p, oracle, x0, g0_rng);
  TraceRow row1;
  row1.t = 1;
  row1.grad_norm_exact = euclidean_norm(oracle.gradient(s.x_curr));
  row1.momentum_norm = euclidean_norm(s.g);
  row1.samples_used = s.samples_used;
  trace.rows.push_back(row1);

  while (static_cast<long>(trace.rows.size()) < T) {
    StepReport rep = step(s, oracle, p, q_rng, grad_rng, hvp_rng);
    TraceRow row;
    row.t = static_cast<long>(trace.rows.size());
    row.grad_norm_exact = rep.grad_norm_exact;
    row.momentum_norm = rep.momentum_norm;
    row.q_t = rep.q_t;
    row.grad_clip_active = rep.grad_clip_active;
    row.hvp_clip_active = rep.hvp_clip_active;
    row.samples_used = s.samples_used;
    trace.rows.push_back(row);
  }
  return trace;
}

}  // namespace htopt
