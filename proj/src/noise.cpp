#include "htopt/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace htopt {

double sample_two_sided_pareto(const TailSpec& spec, RandomSource& r) {
  if (spec.kind != TailKind::two_sided_pareto) {
    throw std::invalid_argument("sample_two_sided_pareto: kind mismatch");
  }
  if (!(spec.tail_index > 1.0)) {
    throw std::invalid_argument("sample_two_sided_pareto: tail_index must be > 1");
  }
  if (!(spec.scale > 0.0)) {
    throw std::invalid_argument("sample_two_sided_pareto: scale must be > 0");
  }
  double sign = r.bernoulli(0.5) ? 1.0 : -1.0;
  double u = r.uniform_open();
  return sign * spec.scale * std::pow(u, -1.0 / spec.tail_index);
}

double pareto_abs_moment(const TailSpec& spec, double q) {
  if (q >= spec.tail_index) return std::numeric_limits<double>::infinity();
  return std::pow(spec.scale, q) * spec.tail_index / (spec.tail_index - q);
}

namespace {

double sample_scalar(const TailSpec& spec, RandomSource& r) {
  switch (spec.kind) {
    case TailKind::two_sided_pareto:
      return sample_two_sided_pareto(spec, r);
    case TailKind::gaussian:
      return spec.scale * r.normal();
    case TailKind::none:
      return 0.0;
    case TailKind::bernoulli_zero_chain:
      throw std::invalid_argument(
          "bernoulli_zero_chain noise lives in the hard-instance oracle, "
          "not the additive samplers");
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Vec sample_noise_vector(const TailSpec& spec, std::size_t d, RandomSource& r) {
  if (d < 1) throw std::invalid_argument("sample_noise_vector: d must be >= 1");
  if (spec.kind == TailKind::none) return zeros(d);
  Vec out(d, 0.0);
  if (spec.per_coordinate) {
    for (std::size_t i = 0; i < d; ++i) out[i] = sample_scalar(spec, r);
    return out;
  }
  // Magnitude draw times a uniformly random unit direction.
  double mag = std::abs(sample_scalar(spec, r));
  double n = 0.0;
  do {
    for (std::size_t i = 0; i < d; ++i) out[i] = r.normal();
    n = euclidean_norm(out);
  } while (n == 0.0);
  for (std::size_t i = 0; i < d; ++i) out[i] *= mag / n;
  return out;
}

Mat sample_noise_matrix(const TailSpec& spec, std::size_t d, RandomSource& r) {
  if (d < 1) throw std::invalid_argument("sample_noise_matrix: d must be >= 1");
  Mat a(d);
  if (spec.kind == TailKind::none) return a;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a(i, j) = sample_scalar(spec, r);
  }
  return a.symmetrized();
}

MomentEstimate estimate_moment(std::span<const double> samples, double order) {
  if (samples.empty()) throw std::invalid_argument("estimate_moment: empty sample set");
  if (!(order > 0.0)) throw std::invalid_argument("estimate_moment: order must be > 0");
  const std::size_t n = samples.size();
  double mean = 0.0;
  for (double x : samples) mean += std::pow(std::abs(x), order);
  mean /= static_cast<double>(n);

  // Jackknife SE of the sample mean collapses to the usual formula
  // sqrt(sum (y_i - ybar)^2 / (n (n-1))).
  double ss = 0.0;
  for (double x : samples) {
    double y = std::pow(std::abs(x), order) - mean;
    ss += y * y;
  }
  double se = n > 1 ? std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)))
                    : 0.0;
  return MomentEstimate{order, mean, n, se};
}

}  // namespace htopt
