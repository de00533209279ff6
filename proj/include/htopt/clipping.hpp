#pragma once

#include <limits>
#include <stdexcept>

#include "htopt/vec.hpp"

namespace htopt {

struct ClipLevels {
  double lambda = std::numeric_limits<double>::infinity();
  double lambda_h_bar = std::numeric_limits<double>::infinity();
};

// clip(v, level) = v if ||v|| <= level, else (level/||v||) v.
// clip(0, level) := 0 (continuous extension).
inline Vec clip(const Vec& v, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("clip: level must be > 0");
  double n = euclidean_norm(v);
  if (n <= level) return v;
  return scaled(v, level / n);
}

// gamma * clip(hv / gamma, lambda_h_bar). Algebraically identical to
// clip(hv, gamma * lambda_h_bar); the single-rescale form is used so tiny
// gamma never amplifies hv on the way through.
inline Vec clip_hvp(const Vec& hv, double gamma, double lambda_h_bar) {
  if (!(gamma > 0.0)) throw std::invalid_argument("clip_hvp: gamma must be > 0");
  if (!(lambda_h_bar > 0.0)) {
    throw std::invalid_argument("clip_hvp: lambda_h_bar must be > 0");
  }
  return clip(hv, gamma * lambda_h_bar);
}

}  // namespace htopt
