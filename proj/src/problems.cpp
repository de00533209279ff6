#include "htopt/problems.hpp"

#include <cmath>

namespace htopt {

Vec Oracle::noisy_gradient(const Vec& x, RandomSource& r) const {
  require_finite(x, "noisy_gradient");
  Vec g = gradient(x);
  if (gradient_noise().kind == TailKind::none) return g;
  Vec noise = sample_noise_vector(gradient_noise(), dim(), r);
  axpy(g, 1.0, noise);
  return g;
}

Vec Oracle::noisy_hvp(const Vec& x, const Vec& v, RandomSource& r) const {
  if (x.size() != dim() || v.size() != dim()) {
    throw std::invalid_argument("noisy_hvp: dimension mismatch");
  }
  Vec hv = hessian(x).matvec(v);
  if (hessian_noise().kind == TailKind::none) return hv;
  Mat e = sample_noise_matrix(hessian_noise(), dim(), r);
  Vec ev = e.matvec(v);
  axpy(hv, 1.0, ev);
  return hv;
}

double QuadraticProblem::value(const Vec& x) const {
  double n = euclidean_norm(x);
  return 0.5 * n * n;
}

Vec QuadraticProblem::gradient(const Vec& x) const {
  require_finite(x, "quadratic gradient");
  return x;
}

Mat QuadraticProblem::hessian(const Vec&) const { return Mat::identity(d_); }

double WellsProblem::value(const Vec& x) const {
  require_finite(x, "wells value");
  double s = 0.0;
  for (double xi : x) {
    double x2 = xi * xi;
    s += x2 / (1.0 + x2) + 0.5 * tether_ * x2;
  }
  return s;
}

Vec WellsProblem::gradient(const Vec& x) const {
  require_finite(x, "wells gradient");
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double denom = 1.0 + x[i] * x[i];
    g[i] = 2.0 * x[i] / (denom * denom) + tether_ * x[i];
  }
  return g;
}

Mat WellsProblem::hessian(const Vec& x) const {
  Mat h(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    double x2 = x[i] * x[i];
    double denom = 1.0 + x2;
    h(i, i) = 2.0 * (1.0 - 3.0 * x2) / (denom * denom * denom) + tether_;
  }
  return h;
}

Vec finite_difference_gradient(const Oracle& p, const Vec& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_gradient: h must be > 0");
  Vec g(x.size());
  Vec xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xi = x[i];
    xp[i] = xi + h;
    double fp = p.value(xp);
    xp[i] = xi - h;
    double fm = p.value(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace htopt
