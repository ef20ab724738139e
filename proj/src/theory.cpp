#include "cs/theory.hpp"

#include <cmath>

#include "cs/errors.hpp"

namespace cs {

double total_noise_param(const PerturbationConstants& pc, const TailMetrics& tm, double b_norm,
                         double e_norm) {
  if (b_norm <= 0.0) throw DegenerateSignalError("total_noise_param: ||b||_2 must be > 0");
  const double denom = 1.0 - pc.kappa * (tm.alpha + tm.beta);
  if (denom <= 0.0)
    throw ConditionError(
        "total_noise_param: tail condition violated, kappa^(s)*(alpha_s+beta_s) >= 1");
  const double mult = (pc.eps_sub * pc.kappa + pc.eps_full * pc.gamma * tm.alpha) / denom;
  const double eps_b = e_norm / b_norm;
  return (mult + eps_b) * b_norm;
}

ConditionReport check_bp_conditions(const RicEstimate& delta_2s, const PerturbationConstants& pc_2s,
                                    const PerturbationConstants& pc_s, const TailMetrics& tm) {
  ConditionReport r;
  const double e = pc_2s.eps_sub;
  const double rhs_ric = std::sqrt(2.0) / ((1.0 + e) * (1.0 + e)) - 1.0;
  r.bp_ric_margin = delta_2s.delta - rhs_ric;
  r.bp_ric_ok = r.bp_ric_margin < 0.0;  // strict
  // kappa may be +inf when delta_s >= 1; 1/kappa then collapses to 0 and the
  // tail condition can never hold.
  const double one_over_kappa = std::isfinite(pc_s.kappa) ? 1.0 / pc_s.kappa : 0.0;
  r.bp_tail_margin = (tm.alpha + tm.beta) - one_over_kappa;
  r.bp_tail_ok = r.bp_tail_margin < 0.0;  // strict
  return r;
}

ConditionReport check_cosamp_conditions(const RicEstimate& delta_4s,
                                        const PerturbationConstants& pc_4s,
                                        const PerturbationConstants& pc_s, const TailMetrics& tm) {
  ConditionReport r;
  const double e = pc_4s.eps_sub;
  const double rhs_ric = 1.1 / ((1.0 + e) * (1.0 + e)) - 1.0;
  r.cosamp_ric_margin = delta_4s.delta - rhs_ric;
  r.cosamp_ric_ok = r.cosamp_ric_margin <= 0.0;  // non-strict
  const double one_over_kappa = std::isfinite(pc_s.kappa) ? 1.0 / pc_s.kappa : 0.0;
  r.cosamp_tail_margin = (tm.alpha + tm.beta) - 0.5 * one_over_kappa;
  r.cosamp_tail_ok = r.cosamp_tail_margin <= 0.0;  // non-strict
  return r;
}

double lemma4_bound(const RicEstimate& delta_s, double eps_sub) {
  if (eps_sub < 0.0) throw ConditionError("lemma4_bound: eps_sub must be >= 0");
  return (1.0 + delta_s.delta) * (1.0 + eps_sub) * (1.0 + eps_sub) - 1.0;
}

BoundBracket cosamp_bracket(const SignalVector& x, int s, const PerturbationConstants& pc,
                            double b_norm, double e_norm) {
  auto [xs, support] = best_s_term(x, s);
  if (norm2(xs) == 0.0)
    throw DegenerateSignalError("cosamp_bracket: best s-term part is zero");
  const SignalVector tail = subtract(x, xs);
  const double alpha = norm2(tail) / norm2(xs);
  BoundBracket b;
  b.bp_tail_term = norm1(tail) / std::sqrt(static_cast<double>(s));
  b.cosamp_l2_tail = norm2(tail);
  b.cosamp_l1_tail = norm1(tail) / std::sqrt(static_cast<double>(s));
  b.cosamp_mult = (pc.abs_full * alpha + pc.abs_sub) * b_norm;
  b.cosamp_noise = e_norm;
  return b;
}

double cosamp_bracket_total(const BoundBracket& b) {
  return b.cosamp_l2_tail + b.cosamp_l1_tail + b.cosamp_mult + b.cosamp_noise;
}

std::pair<double, double> rip_norm_bounds(const SignalVector& x, int s,
                                          const RicEstimate& delta_s) {
  if (delta_s.delta >= 1.0)
    throw ConditionError("rip_norm_bounds: requires delta_s < 1");
  const double lo_factor = std::sqrt(1.0 - delta_s.delta);
  const double hi_factor = std::sqrt(1.0 + delta_s.delta);
  const double sq = std::sqrt(static_cast<double>(s));
  auto [xs, support] = best_s_term(x, s);
  const SignalVector tail = subtract(x, xs);
  const double lower = lo_factor * norm2(xs) - hi_factor * (norm2(tail) + norm1(tail) / sq);
  const double upper = hi_factor * (norm2(x) + norm1(x) / sq);
  return {lower, upper};
}

double bp_dissimilarity_limit() { return std::pow(2.0, 0.25) - 1.0; }

double cosamp_dissimilarity_limit() { return std::sqrt(1.1) - 1.0; }

}  // namespace cs
