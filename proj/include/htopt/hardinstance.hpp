#pragma once

#include <cstddef>
#include <stdexcept>

#include "htopt/problems.hpp"
#include "htopt/rng.hpp"
#include "htopt/vec.hpp"

namespace htopt {

// Building blocks of the worst-case chain function. psi is the smooth
// bump switched on at 1/2; phi is the scaled Gaussian antiderivative,
// computed through erf (a quadrature cross-check lives in the tests).
double psi(double x);
double psi_d1(double x);
double psi_d2(double x);
double phi(double x);
double phi_d1(double x);
double phi_d2(double x);

// Per-coordinate bound on derivative tensors of the unscaled chain.
inline constexpr double kChainEll0 = 23.0;
// Lipschitz constants of the gradient / Hessian of the unscaled chain.
// Numerical estimates rounded up (dense grid + local refinement over
// the pairwise terms gives sup ~ 134.0 and ~ 1890); the analytic
// statement only bounds these up to an unnamed constant. Configurable
// through ChainConstants below.
inline constexpr double kChainEll1Default = 135.0;
inline constexpr double kChainEll2Default = 1900.0;

struct ChainConstants {
  double ell0 = kChainEll0;
  double ell1 = kChainEll1Default;
  double ell2 = kChainEll2Default;
};

// Largest 1-based index i with |x_i| > threshold, or 0 if none.
long prog(const Vec& x, double threshold);

// The scaled chain function h*(x) = nu * h(beta x) on R^t_dim.
struct ChainFunction {
  long t_dim = 1;
  double nu = 1.0;
  double beta = 1.0;

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;  // tridiagonal, returned dense
  Vec hvp(const Vec& x, const Vec& v) const;

  // h*(0) and a certified lower bound on inf h* (via the Delta_0 gap bound).
  double value_at_zero() const;
  double lower_bound() const;
};

inline constexpr double kChainDelta0 = 12.0;

// Probability-rho Bernoulli zero-chain derivative estimator for the
// scaled chain. One Bernoulli draw per query, shared across derivative
// orders: coordinates i <= prog_{1/4}(x) are returned exactly,
// coordinates beyond are zero with probability 1-rho and amplified by
// 1/rho otherwise.
struct ZeroChainOracle {
  ChainFunction chain;
  double rho = 1.0;
  int order = 2;  // 1 or 2

  struct Reply {
    Vec grad;
    Vec hvp;             // empty when no direction was supplied
    bool beyond_scaled = false;  // Bernoulli outcome (1/rho branch)
    long prog_quarter = 0;       // prog_{1/4}(x) at the query point
  };

  // Gradient-only query (one sample).
  Reply query(const Vec& x, RandomSource& r) const;
  // Gradient + Hessian-vector product with the shared Bernoulli draw.
  Reply query(const Vec& x, const Vec& v, RandomSource& r) const;
};

// Scaled instance + estimator probability realizing the lower-bound
// construction at the given constants. q <= 2.
struct HardInstance {
  ChainFunction chain;
  double rho = 1.0;
};

HardInstance rescale_for_target(double delta, double l1, double l2, double sigma1,
                                double sigma2, double epsilon, double p, int q,
                                const ChainConstants& consts = ChainConstants{});

// Oracle adapter so the implemented optimizers can run against the
// zero-chain construction. Each noisy_gradient / noisy_hvp call is one
// oracle query with its own Bernoulli draw.
class HardInstanceOracle : public Oracle {
 public:
  HardInstanceOracle(HardInstance inst, ChainConstants consts = ChainConstants{})
      : zc_{inst.chain, inst.rho, 2}, consts_(consts) {
    noise_tag_.kind = TailKind::bernoulli_zero_chain;
    noise_tag_.scale = inst.rho > 0.0 ? inst.rho : 1.0;
  }

  std::size_t dim() const override { return static_cast<std::size_t>(zc_.chain.t_dim); }
  double value(const Vec& x) const override { return zc_.chain.value(x); }
  Vec gradient(const Vec& x) const override { return zc_.chain.gradient(x); }
  Mat hessian(const Vec& x) const override { return zc_.chain.hessian(x); }
  double lipschitz_l() const override {
    return zc_.chain.nu * zc_.chain.beta * zc_.chain.beta * consts_.ell1;
  }
  double f_star() const override { return zc_.chain.lower_bound(); }
  const TailSpec& gradient_noise() const override { return noise_tag_; }
  const TailSpec& hessian_noise() const override { return noise_tag_; }
  Vec noisy_gradient(const Vec& x, RandomSource& r) const override {
    return zc_.query(x, r).grad;
  }
  Vec noisy_hvp(const Vec& x, const Vec& v, RandomSource& r) const override {
    return zc_.query(x, v, r).hvp;
  }
  std::string name() const override { return "hard-instance"; }

  const ZeroChainOracle& zero_chain() const { return zc_; }

 private:
  ZeroChainOracle zc_;
  ChainConstants consts_;
  TailSpec noise_tag_;
};

}  // namespace htopt
