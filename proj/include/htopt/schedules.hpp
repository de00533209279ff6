#pragma once

#include <limits>
#include <string>

namespace htopt {

// Problem constants feeding the closed-form schedules.
struct ProblemConstants {
  double delta = 1.0;       // initial suboptimality (Delta or Delta_1)
  double l_smooth = 1.0;    // gradient Lipschitz constant L
  double sigma = 1.0;       // gradient noise p-th moment scale
  double sigma_h = 0.0;     // Hessian noise p-th moment scale
  double p = 2.0;           // moment order, in (1, 2]
  double epsilon = 0.1;     // target stationarity
  long T = 1000;
  double delta_prob = 0.1;  // confidence level for the high-probability schedule
};

enum class ScheduleProvenance { thm2, thm3, clip_nsgdm_baseline, manual };

struct Schedule {
  double gamma = 0.0;
  double alpha = 0.0;
  long b_init = 1;
  double lambda = std::numeric_limits<double>::infinity();
  double lambda_h_bar = std::numeric_limits<double>::infinity();
  ScheduleProvenance provenance = ScheduleProvenance::manual;
};

void validate_constants(const ProblemConstants& c);

// In-expectation schedule for the Hessian-corrected method: batched g0,
// momentum from the effective-alpha formula, gamma = sqrt(delta
// alpha^(1/p) / ((L + sigma_h) T)). Clipping fields stay infinite.
// sigma = 0 degenerates to alpha = 1.
Schedule schedule_thm2(const ProblemConstants& c);

// High-probability schedule for the clipped method: alpha = T^(-p/(2p-1)),
// gamma = min of the five explicit stepsize arms taken with equality,
// lambda = max{4 sqrt(L delta), sigma alpha^(-1/p)},
// lambda_h_bar = 2 (L + sigma_h) alpha^(-1/p).
// Requires log(8T/delta_prob) >= 1.
Schedule schedule_thm3(const ProblemConstants& c);

// The five stepsize arms of the high-probability schedule, exposed for
// tests. Index 0..4.
double schedule_thm3_gamma_arm(const ProblemConstants& c, int arm);

// Same alpha as the high-probability schedule but gamma from the
// in-expectation formula sqrt(delta alpha^(1/p) / ((L + sigma_h) T)),
// without the worst-case constants. Used by the experiment drivers,
// where the literal constants would keep the iterate frozen at desk
// scale. Clip levels are supplied by the caller.
Schedule schedule_thm3_shape(const ProblemConstants& c);

// First-order clipped baseline: gamma = T^(-(2p-1)/(3p-2)),
// alpha = T^(-p/(3p-2)); lambda supplied externally.
Schedule schedule_clip_nsgdm_baseline(const ProblemConstants& c);

enum class ComplexityRegime {
  lower_second_order,       // delta sigma_h / eps^2 * (sigma/eps)^(1/(p-1))
  lower_first_order,        // delta L sigma / eps^3 * (sigma/eps)^(1/(p-1))
  lower_hessian_lipschitz,  // delta sqrt(L_h) sigma / eps^(5/2) * (sigma/eps)^(1/(p-1))
  upper_second_order        // the three-term in-expectation upper bound
};

// Leading-term complexity expressions for the requested regime. l_h is
// only consulted for the Hessian-Lipschitz regime.
double predicted_sample_complexity(const ProblemConstants& c, ComplexityRegime regime,
                                   double l_h = 1.0);

// Smallest T with the in-expectation rate bound below epsilon (bisection
// on the monotone bound; batched-g0 variant).
long thm2_iterations_for_epsilon(const ProblemConstants& c);

std::string provenance_name(ScheduleProvenance p);

}  // namespace htopt
