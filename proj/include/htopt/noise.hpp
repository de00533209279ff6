#pragma once

#include <cstddef>
#include <span>

#include "htopt/rng.hpp"
#include "htopt/vec.hpp"

namespace htopt {

enum class TailKind { none, two_sided_pareto, gaussian, bernoulli_zero_chain };

// Description of a perturbation distribution. For the two-sided Pareto
// the parametrization is X = S * scale * U^(-1/tail_index) with S = +-1
// equiprobable and U uniform on (0,1): support |X| >= scale, symmetric,
// E|X|^q = scale^q * tail_index / (tail_index - q) for q < tail_index and
// infinite otherwise. The q-th moment bound sigma^q is therefore derived
// from (tail_index, scale), never set directly.
struct TailSpec {
  TailKind kind = TailKind::none;
  double tail_index = 1.5;  // must be > 1 for two_sided_pareto
  double scale = 1.0;
  bool per_coordinate = true;
};

struct MomentEstimate {
  double order = 0.0;
  double value = 0.0;
  std::size_t sample_count = 0;
  double std_error = 0.0;
};

double sample_two_sided_pareto(const TailSpec& spec, RandomSource& r);

// Zero-mean noise vector. per_coordinate: i.i.d. scalar draws; otherwise
// one magnitude draw times a uniformly random unit direction.
Vec sample_noise_vector(const TailSpec& spec, std::size_t d, RandomSource& r);

// Symmetric zero-mean noise matrix E = (A + A^T)/2 with i.i.d. entries in A.
Mat sample_noise_matrix(const TailSpec& spec, std::size_t d, RandomSource& r);

// Empirical mean of |x|^order with jackknife standard error.
MomentEstimate estimate_moment(std::span<const double> samples, double order);

// Closed-form E|X|^q for the two-sided Pareto, infinity for q >= tail_index.
double pareto_abs_moment(const TailSpec& spec, double q);

}  // namespace htopt
