#include "htopt/hardinstance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace htopt {

double psi(double x) {
  if (x <= 0.5) return 0.0;
  double u = 2.0 * x - 1.0;
  return std::exp(1.0 - 1.0 / (u * u));
}

double psi_d1(double x) {
  if (x <= 0.5) return 0.0;
  double u = 2.0 * x - 1.0;
  return psi(x) * 4.0 / (u * u * u);
}

double psi_d2(double x) {
  if (x <= 0.5) return 0.0;
  double u = 2.0 * x - 1.0;
  double u4 = u * u * u * u;
  return psi(x) * (16.0 / (u4 * u * u) - 24.0 / u4);
}

namespace {
const double kSqrtE = std::sqrt(M_E);
const double kPhiScale = std::sqrt(M_E) * std::sqrt(M_PI / 2.0);
}  // namespace

double phi(double x) { return kPhiScale * (1.0 + std::erf(x / std::sqrt(2.0))); }
double phi_d1(double x) { return kSqrtE * std::exp(-0.5 * x * x); }
double phi_d2(double x) { return -x * kSqrtE * std::exp(-0.5 * x * x); }

long prog(const Vec& x, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("prog: threshold must be >= 0");
  for (long i = static_cast<long>(x.size()); i >= 1; --i) {
    if (std::abs(x[static_cast<std::size_t>(i - 1)]) > threshold) return i;
  }
  return 0;
}

namespace {

void check_dim(const ChainFunction& c, const Vec& x) {
  if (static_cast<long>(x.size()) != c.t_dim) {
    throw std::invalid_argument("chain: dimension mismatch");
  }
}

}  // namespace

double ChainFunction::value(const Vec& x) const {
  check_dim(*this, x);
  const long T = t_dim;
  double s = -psi(1.0) * phi(beta * x[0]);
  for (long i = 2; i <= T; ++i) {
    double a = beta * x[static_cast<std::size_t>(i - 2)];
    double b = beta * x[static_cast<std::size_t>(i - 1)];
    s += psi(-a) * phi(-b) - psi(a) * phi(b);
  }
  return nu * s;
}

Vec ChainFunction::gradient(const Vec& x) const {
  check_dim(*this, x);
  const long T = t_dim;
  Vec g(static_cast<std::size_t>(T), 0.0);
  g[0] = -psi(1.0) * phi_d1(beta * x[0]);
  for (long i = 2; i <= T; ++i) {
    double a = beta * x[static_cast<std::size_t>(i - 2)];
    double b = beta * x[static_cast<std::size_t>(i - 1)];
    // d/da and d/db of psi(-a) phi(-b) - psi(a) phi(b)
    g[static_cast<std::size_t>(i - 2)] += -psi_d1(-a) * phi(-b) - psi_d1(a) * phi(b);
    g[static_cast<std::size_t>(i - 1)] += -psi(-a) * phi_d1(-b) - psi(a) * phi_d1(b);
  }
  double scale = nu * beta;
  for (double& gi : g) gi *= scale;
  return g;
}

Mat ChainFunction::hessian(const Vec& x) const {
  check_dim(*this, x);
  const long T = t_dim;
  Mat h(static_cast<std::size_t>(T));
  h(0, 0) = -psi(1.0) * phi_d2(beta * x[0]);
  for (long i = 2; i <= T; ++i) {
    std::size_t ia = static_cast<std::size_t>(i - 2);
    std::size_t ib = static_cast<std::size_t>(i - 1);
    double a = beta * x[ia];
    double b = beta * x[ib];
    h(ia, ia) += psi_d2(-a) * phi(-b) - psi_d2(a) * phi(b);
    h(ib, ib) += psi(-a) * phi_d2(-b) - psi(a) * phi_d2(b);
    double cross = psi_d1(-a) * phi_d1(-b) - psi_d1(a) * phi_d1(b);
    h(ia, ib) += cross;
    h(ib, ia) += cross;
  }
  double scale = nu * beta * beta;
  for (std::size_t i = 0; i < static_cast<std::size_t>(T); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(T); ++j) h(i, j) *= scale;
  }
  return h;
}

Vec ChainFunction::hvp(const Vec& x, const Vec& v) const {
  return hessian(x).matvec(v);
}

double ChainFunction::value_at_zero() const { return -nu * psi(1.0) * phi(0.0); }

double ChainFunction::lower_bound() const {
  return value_at_zero() - nu * kChainDelta0 * static_cast<double>(t_dim);
}

ZeroChainOracle::Reply ZeroChainOracle::query(const Vec& x, RandomSource& r) const {
  Reply rep;
  rep.prog_quarter = prog(x, 0.25);
  bool xi = r.bernoulli(rho);
  rep.beyond_scaled = xi;
  double mult_beyond = xi ? 1.0 / rho : 0.0;
  rep.grad = chain.gradient(x);
  for (long i = rep.prog_quarter; i < chain.t_dim; ++i) {
    rep.grad[static_cast<std::size_t>(i)] *= mult_beyond;
  }
  return rep;
}

ZeroChainOracle::Reply ZeroChainOracle::query(const Vec& x, const Vec& v,
                                              RandomSource& r) const {
  if (order < 2) throw std::invalid_argument("zero-chain oracle order < 2 has no hvp");
  Reply rep;
  rep.prog_quarter = prog(x, 0.25);
  bool xi = r.bernoulli(rho);
  rep.beyond_scaled = xi;
  double mult_beyond = xi ? 1.0 / rho : 0.0;

  rep.grad = chain.gradient(x);
  for (long i = rep.prog_quarter; i < chain.t_dim; ++i) {
    rep.grad[static_cast<std::size_t>(i)] *= mult_beyond;
  }
  // Estimated Hessian scales row-slices i by the shared multiplier.
  rep.hvp = chain.hvp(x, v);
  for (long i = rep.prog_quarter; i < chain.t_dim; ++i) {
    rep.hvp[static_cast<std::size_t>(i)] *= mult_beyond;
  }
  return rep;
}

HardInstance rescale_for_target(double delta, double l1, double l2, double sigma1,
                                double sigma2, double epsilon, double p, int q,
                                const ChainConstants& consts) {
  if (q < 1 || q > 2) throw std::invalid_argument("rescale_for_target: q must be 1 or 2");
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must be in (1, 2]");
  if (!(epsilon > 0.0) || !(sigma1 > 0.0) || !(delta > 0.0) || !(l1 > 0.0)) {
    throw std::invalid_argument("constants must be positive");
  }

  double beta = std::pow(l1 / (2.0 * epsilon * consts.ell1), 1.0);
  std::string binding = "L1 smoothness arm";
  if (q == 2) {
    if (!(l2 > 0.0) || !(sigma2 > 0.0)) {
      throw std::invalid_argument("q = 2 requires L2 and sigma2");
    }
    double arm_l2 = std::sqrt(l2 / (2.0 * epsilon * consts.ell2));
    if (arm_l2 < beta) {
      beta = arm_l2;
      binding = "L2 smoothness arm";
    }
    double arm_sigma = consts.ell0 * sigma2 / (consts.ell1 * sigma1);
    if (arm_sigma < beta) {
      beta = arm_sigma;
      binding = "sigma ratio arm";
    }
  }

  double nu = 2.0 * epsilon / beta;
  double rho = std::min(std::pow(epsilon / sigma1, p / (p - 1.0)) *
                            std::pow(2.0, (p + 1.0) / (p - 1.0)) *
                            std::pow(consts.ell0, p / (p - 1.0)),
                        1.0);
  long t_dim = static_cast<long>(std::floor(delta * beta / (2.0 * kChainDelta0 * epsilon)));
  if (t_dim < 1) {
    std::ostringstream msg;
    msg << "hard instance infeasible at these constants: T_dim = floor(delta*beta/"
        << "(2*Delta0*eps)) < 1; binding constraint: " << binding
        << " (beta = " << beta << ")";
    throw std::invalid_argument(msg.str());
  }
  return HardInstance{ChainFunction{t_dim, nu, beta}, rho};
}

}  // namespace htopt
