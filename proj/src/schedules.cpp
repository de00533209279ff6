#include "htopt/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace htopt {

void validate_constants(const ProblemConstants& c) {
  if (!(c.p > 1.0 && c.p <= 2.0)) throw std::invalid_argument("p must be in (1, 2]");
  if (!(c.l_smooth > 0.0)) throw std::invalid_argument("L must be > 0");
  if (c.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (c.sigma < 0.0 || c.sigma_h < 0.0) throw std::invalid_argument("noise scales must be >= 0");
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (c.T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(c.delta_prob > 0.0 && c.delta_prob <= 1.0)) {
    throw std::invalid_argument("delta_prob must be in (0, 1]");
  }
}

Schedule schedule_thm2(const ProblemConstants& c) {
  validate_constants(c);
  Schedule s;
  s.provenance = ScheduleProvenance::thm2;

  const double p = c.p;
  const double ls = c.l_smooth + c.sigma_h;
  if (c.sigma == 0.0) {
    // Noiseless degenerate case: momentum reduces to plain averaging.
    s.alpha = 1.0;
    s.b_init = 1;
    s.gamma = std::sqrt(c.delta / (ls * static_cast<double>(c.T)));
    return s;
  }

  const double ratio = c.sigma / c.epsilon;
  double b_real = std::max({1.0, std::pow(ratio, p / (p - 1.0)),
                            std::pow(ratio, p / (2.0 * p - 1.0))});
  s.b_init = static_cast<long>(std::ceil(b_real));

  const double e0 = 2.0 * c.sigma / std::pow(static_cast<double>(s.b_init), (p - 1.0) / p);
  const double expo = p / (2.0 * p - 1.0);
  const double t = static_cast<double>(c.T);
  double alpha_eff = std::max(std::pow(e0 / (t * c.sigma), expo),
                              std::pow(c.delta * ls / (t * c.sigma * c.sigma), expo));
  s.alpha = std::min(1.0, alpha_eff);
  s.gamma = std::sqrt(c.delta * std::pow(s.alpha, 1.0 / p) / (ls * t));
  return s;
}

double schedule_thm3_gamma_arm(const ProblemConstants& c, int arm) {
  const double p = c.p;
  const double t = static_cast<double>(c.T);
  const double alpha = std::pow(t, -p / (2.0 * p - 1.0));
  const double log_term = std::log(8.0 * t / c.delta_prob);
  const double d1 = c.delta;
  const double l = c.l_smooth;
  switch (arm) {
    case 0: return 0.5 * std::sqrt(d1 / (l * t));
    case 1: return alpha / 12.0 * std::sqrt(d1 / l);
    case 2: return std::sqrt(d1 / l) / (1408.0 * alpha * t * log_term);
    case 3: return d1 / (352.0 * c.sigma * std::pow(alpha, (p - 1.0) / p) * t * log_term);
    case 4:
      return std::sqrt(d1 * std::pow(alpha, 1.0 / p) /
                       (968.0 * (l + c.sigma_h) * t * log_term));
    default: throw std::invalid_argument("arm must be in 0..4");
  }
}

Schedule schedule_thm3(const ProblemConstants& c) {
  validate_constants(c);
  const double t = static_cast<double>(c.T);
  const double log_term = std::log(8.0 * t / c.delta_prob);
  if (log_term < 1.0) {
    throw std::invalid_argument(
        "schedule_thm3: hypothesis log(8T/delta) >= 1 violated");
  }
  Schedule s;
  s.provenance = ScheduleProvenance::thm3;
  const double p = c.p;
  s.alpha = std::pow(t, -p / (2.0 * p - 1.0));
  double g = schedule_thm3_gamma_arm(c, 0);
  for (int arm = 1; arm < 5; ++arm) g = std::min(g, schedule_thm3_gamma_arm(c, arm));
  s.gamma = g;
  const double alpha_inv_p = std::pow(s.alpha, -1.0 / p);
  s.lambda = std::max(4.0 * std::sqrt(c.l_smooth * c.delta), c.sigma * alpha_inv_p);
  s.lambda_h_bar = 2.0 * (c.l_smooth + c.sigma_h) * alpha_inv_p;
  return s;
}

Schedule schedule_thm3_shape(const ProblemConstants& c) {
  validate_constants(c);
  Schedule s;
  s.provenance = ScheduleProvenance::manual;
  const double p = c.p;
  const double t = static_cast<double>(c.T);
  s.alpha = std::pow(t, -p / (2.0 * p - 1.0));
  s.gamma = std::sqrt(c.delta * std::pow(s.alpha, 1.0 / p) /
                      ((c.l_smooth + c.sigma_h) * t));
  return s;
}

Schedule schedule_clip_nsgdm_baseline(const ProblemConstants& c) {
  validate_constants(c);
  Schedule s;
  s.provenance = ScheduleProvenance::clip_nsgdm_baseline;
  const double p = c.p;
  const double t = static_cast<double>(c.T);
  s.gamma = std::pow(t, -(2.0 * p - 1.0) / (3.0 * p - 2.0));
  s.alpha = std::pow(t, -p / (3.0 * p - 2.0));
  return s;
}

double predicted_sample_complexity(const ProblemConstants& c, ComplexityRegime regime,
                                   double l_h) {
  validate_constants(c);
  const double eps = c.epsilon;
  const double tail = std::pow(c.sigma / eps, 1.0 / (c.p - 1.0));
  switch (regime) {
    case ComplexityRegime::lower_second_order:
      return c.delta * c.sigma_h / (eps * eps) * tail;
    case ComplexityRegime::lower_first_order:
      return c.delta * c.l_smooth * c.sigma / (eps * eps * eps) * tail;
    case ComplexityRegime::lower_hessian_lipschitz:
      return c.delta * std::sqrt(l_h) * c.sigma / std::pow(eps, 2.5) * tail;
    case ComplexityRegime::upper_second_order: {
      double head = c.delta * (c.l_smooth + c.sigma_h) / (eps * eps);
      return head + head * tail + c.sigma / eps * tail;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// In-expectation rate bound as a function of T under the batched-g0
// schedule; strictly decreasing in T.
double thm2_rate_bound(const ProblemConstants& c, long T) {
  const double p = c.p;
  const double t = static_cast<double>(T);
  const double ls = c.l_smooth + c.sigma_h;
  const double ratio = c.sigma / c.epsilon;
  double b_real = std::max({1.0, std::pow(ratio, p / (p - 1.0)),
                            std::pow(ratio, p / (2.0 * p - 1.0))});
  double e0 = 2.0 * c.sigma / std::pow(b_real, (p - 1.0) / p);
  double expo = (p - 1.0) / (2.0 * p - 1.0);
  return std::sqrt(c.delta * ls / t) +
         c.sigma * std::pow(e0 / (t * c.sigma), expo) +
         c.sigma * std::pow(c.delta * ls / (t * c.sigma * c.sigma), expo);
}

}  // namespace

long thm2_iterations_for_epsilon(const ProblemConstants& c) {
  validate_constants(c);
  long lo = 1;
  long hi = 1;
  while (thm2_rate_bound(c, hi) > c.epsilon) {
    if (hi > (1L << 60)) throw std::runtime_error("target accuracy unreachable");
    hi *= 2;
  }
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (thm2_rate_bound(c, mid) <= c.epsilon) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::string provenance_name(ScheduleProvenance p) {
  switch (p) {
    case ScheduleProvenance::thm2: return "thm2";
    case ScheduleProvenance::thm3: return "thm3";
    case ScheduleProvenance::clip_nsgdm_baseline: return "clip-nsgdm-baseline";
    case ScheduleProvenance::manual: return "manual";
  }
  throw std::logic_error("unreachable");
}

}  // namespace htopt
