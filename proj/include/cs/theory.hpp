#pragma once

#include <utility>

#include "cs/linalg.hpp"
#include "cs/metrics.hpp"

namespace cs {

/// Admissibility flags for the two recovery theorems, with signed margins
/// (left side minus right side of each inequality).
struct ConditionReport {
  bool bp_ric_ok = false;      // delta_2s < sqrt(2)/(1+eps^(2s))^2 - 1  (strict)
  bool bp_tail_ok = false;     // alpha_s + beta_s < 1/kappa^(s)         (strict)
  bool cosamp_ric_ok = false;  // delta_4s <= 1.1/(1+eps^(4s))^2 - 1     (non-strict)
  bool cosamp_tail_ok = false; // alpha_s + beta_s <= 1/(2 kappa^(s))    (non-strict)
  double bp_ric_margin = 0.0;
  double bp_tail_margin = 0.0;
  double cosamp_ric_margin = 0.0;
  double cosamp_tail_margin = 0.0;
};

/// Error-bound ingredients for both theorems. Fitted constants are supplied
/// by the harness, never here.
struct BoundBracket {
  double bp_tail_term = 0.0;    // ||x - x_s||_1 / sqrt(s)
  double bp_noise_term = 0.0;   // total noise parameter
  double cosamp_l2_tail = 0.0;  // ||x - x_s||_2
  double cosamp_l1_tail = 0.0;  // ||x - x_s||_1 / sqrt(s)
  double cosamp_mult = 0.0;     // (||A-Phi||_2 * alpha_s + ||A-Phi||^(s)) * ||b||_2
  double cosamp_noise = 0.0;    // ||e||_2
};

/// Total noise parameter combining multiplicative and additive noise:
/// [ (eps_sub*kappa + eps_full*gamma*alpha) / (1 - kappa*(alpha+beta)) +
///   e_norm/b_norm ] * b_norm. Requires the tail condition (denominator > 0).
double total_noise_param(const PerturbationConstants& pc, const TailMetrics& tm, double b_norm,
                         double e_norm);

/// Fills the BP fields of a ConditionReport. pc_2s supplies eps_sub at order
/// 2s; pc_s supplies kappa at order s. When kappa is undefined (delta_s >= 1)
/// its reciprocal is clamped to 0, which can never satisfy the tail condition.
ConditionReport check_bp_conditions(const RicEstimate& delta_2s, const PerturbationConstants& pc_2s,
                                    const PerturbationConstants& pc_s, const TailMetrics& tm);

/// Fills the CoSaMP fields; pc_4s supplies eps_sub at order 4s.
ConditionReport check_cosamp_conditions(const RicEstimate& delta_4s,
                                        const PerturbationConstants& pc_4s,
                                        const PerturbationConstants& pc_s, const TailMetrics& tm);

/// Upper bound on the RIC of the perturbed matrix:
/// (1 + delta_s)(1 + eps_sub)^2 - 1.
double lemma4_bound(const RicEstimate& delta_s, double eps_sub);

/// The four CoSaMP bracket terms, using ABSOLUTE perturbation norms
/// (pc.abs_full and pc.abs_sub).
BoundBracket cosamp_bracket(const SignalVector& x, int s, const PerturbationConstants& pc,
                            double b_norm, double e_norm);

double cosamp_bracket_total(const BoundBracket& b);

/// RIP-implied sandwich on ||Ax||_2 for arbitrary x:
///   lower = sqrt(1-d)||x_s||_2 - sqrt(1+d)(||x-x_s||_2 + ||x-x_s||_1/sqrt(s))
///   upper = sqrt(1+d)(||x||_2 + ||x||_1/sqrt(s))
std::pair<double, double> rip_norm_bounds(const SignalVector& x, int s,
                                          const RicEstimate& delta_s);

/// Largest admissible eps^(2s) for the BP RIC condition at delta = 0:
/// 2^(1/4) - 1 (about 19%).
double bp_dissimilarity_limit();

/// Largest admissible eps^(4s) for the CoSaMP RIC condition at delta = 0:
/// sqrt(1.1) - 1 (about 5%).
double cosamp_dissimilarity_limit();

}  // namespace cs
