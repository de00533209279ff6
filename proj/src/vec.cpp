#include "htopt/vec.hpp"

namespace htopt {

double Mat::operator_norm(int iters) const {
  Vec v(d_, 0.0);
  // Deterministic start vector with nonzero projection on every axis.
  for (std::size_t i = 0; i < d_; ++i) v[i] = 1.0 + 1.0 / static_cast<double>(i + 1);
  double nrm = euclidean_norm(v);
  for (double& x : v) x /= nrm;
  double sigma = 0.0;
  for (int k = 0; k < iters; ++k) {
    // v <- A^T A v, normalized.
    Vec av = matvec(v);
    Vec atav(d_, 0.0);
    for (std::size_t j = 0; j < d_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d_; ++i) s += a_[i * d_ + j] * av[i];
      atav[j] = s;
    }
    double n = euclidean_norm(atav);
    if (n == 0.0) return 0.0;
    sigma = std::sqrt(n / 1.0);
    double inv = 1.0 / n;
    for (std::size_t i = 0; i < d_; ++i) v[i] = atav[i] * inv;
  }
  // One more multiply to read off the Rayleigh quotient.
  Vec av = matvec(v);
  sigma = euclidean_norm(av);
  return sigma;
}

}  // namespace htopt
