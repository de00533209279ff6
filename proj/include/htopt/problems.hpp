#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "htopt/noise.hpp"
#include "htopt/rng.hpp"
#include "htopt/vec.hpp"

namespace htopt {

// Stochastic first/second-order oracle: exact F, grad F, Hessian plus
// unbiased noisy gradient and noisy Hessian-vector-product queries.
// Oracles are immutable; concurrent queries need per-caller RandomSources.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;

  // Gradient Lipschitz constant and a lower bound on F; required by the
  // theory-driven schedules.
  virtual double lipschitz_l() const = 0;
  virtual double f_star() const = 0;

  virtual const TailSpec& gradient_noise() const = 0;
  virtual const TailSpec& hessian_noise() const = 0;

  // One stochastic sample each; every call consumes exactly one xi.
  virtual Vec noisy_gradient(const Vec& x, RandomSource& r) const;
  virtual Vec noisy_hvp(const Vec& x, const Vec& v, RandomSource& r) const;

  virtual std::string name() const = 0;
};

// Additive-noise oracle: noisy_gradient = grad F(x) + noise vector,
// noisy_hvp = (hess F(x) + E) v with E a symmetric noise matrix. This
// models the oracle contract directly rather than a sampled f(x, xi).
class AdditiveNoiseOracle : public Oracle {
 public:
  AdditiveNoiseOracle(TailSpec grad_noise, TailSpec hess_noise)
      : grad_noise_(grad_noise), hess_noise_(hess_noise) {}

  const TailSpec& gradient_noise() const override { return grad_noise_; }
  const TailSpec& hessian_noise() const override { return hess_noise_; }

 private:
  TailSpec grad_noise_;
  TailSpec hess_noise_;
};

// F(x) = 0.5 ||x||^2 in dimension d: gradient x, identity Hessian, L = 1,
// F* = 0. The synthetic benchmark problem for all experiments.
class QuadraticProblem : public AdditiveNoiseOracle {
 public:
  QuadraticProblem(std::size_t d, TailSpec grad_noise,
                   TailSpec hess_noise = TailSpec{})
      : AdditiveNoiseOracle(grad_noise, hess_noise), d_(d) {}

  std::size_t dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  double lipschitz_l() const override { return 1.0; }
  double f_star() const override { return 0.0; }
  std::string name() const override { return "quadratic"; }

 private:
  std::size_t d_;
};

// F(x) = sum_i x_i^2 / (1 + x_i^2) + (tether/2) ||x||^2: bounded
// coordinate-wise wells plus a quadratic tether. Nonconvex, smooth with
// L = 2 + tether, global minimum 0 at the origin. Exercises
// normalization and clipping away from the quadratic.
class WellsProblem : public AdditiveNoiseOracle {
 public:
  WellsProblem(std::size_t d, double tether, TailSpec grad_noise,
               TailSpec hess_noise = TailSpec{})
      : AdditiveNoiseOracle(grad_noise, hess_noise), d_(d), tether_(tether) {}

  std::size_t dim() const override { return d_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  double lipschitz_l() const override { return 2.0 + tether_; }
  double f_star() const override { return 0.0; }
  std::string name() const override { return "wells"; }

 private:
  std::size_t d_;
  double tether_;
};

// Central-difference gradient of the exact value; O(h^2) validation oracle.
Vec finite_difference_gradient(const Oracle& p, const Vec& x, double h);

}  // namespace htopt
