#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "cs/errors.hpp"
#include "cs/linalg.hpp"

namespace cs {

enum class RicMethod { exact, monte_carlo_lower_bound };

/// Restricted isometry constant estimate for one order s.
struct RicEstimate {
  int s = 0;
  double delta = 0.0;
  RicMethod method = RicMethod::exact;
  uint64_t subsets_examined = 0;
};

/// Every constant of the perturbation framework for one order s.
/// eps_* are relative, abs_* absolute spectral / max-submatrix norms of A-Phi.
struct PerturbationConstants {
  double eps_full = 0.0;  // ||A-Phi||_2 / ||A||_2
  double eps_sub = 0.0;   // ||A-Phi||^(s) / ||A||^(s)
  double abs_full = 0.0;  // ||A-Phi||_2
  double abs_sub = 0.0;   // ||A-Phi||^(s)
  double kappa = 1.0;     // sqrt(1+delta_s)/sqrt(1-delta_s)
  double gamma = 0.0;     // ||A||_2 / sqrt(1-delta_s)
  int s = 0;
};

struct TailMetrics {
  double alpha = 0.0;  // ||x - x_s||_2 / ||x_s||_2
  double beta = 0.0;   // ||x - x_s||_1 / (sqrt(s) ||x_s||_2)
  int s = 0;
};

/// Number of subsets C(n, k), saturating at 2^63-1.
uint64_t binomial(int n, int k);

/// Best s-term approximation: keeps the s largest-magnitude entries,
/// ties broken toward the lower index. Returns (x_s, support).
std::pair<SignalVector, IndexSet> best_s_term(const SignalVector& x, int s);

TailMetrics tail_metrics(const SignalVector& x, int s);

/// Enumerates all size-s subsets of {0..n-1} in colexicographic order.
/// Returns the number visited.
uint64_t for_each_subset_colex(int n, int s, const std::function<void(const IndexSet&)>& fn);

/// Exact RIC by full subset enumeration; throws BudgetError if C(cols, s)
/// exceeds the budget.
RicEstimate ric_exact(const DenseMatrix& A, int s, uint64_t budget);

/// Same maximand over `samples` uniformly random subsets; a lower bound.
RicEstimate ric_monte_carlo(const DenseMatrix& A, int s, uint64_t samples, uint64_t seed);

/// ||A||^(s): largest spectral norm over all s-column submatrices.
double submatrix_norm_max(const DenseMatrix& A, int s, uint64_t budget);

/// Sampled lower bound on ||A||^(s); both matrices share the same subsets
/// when an aligned pair estimate is needed (see sampled_perturbation_norms).
double submatrix_norm_monte_carlo(const DenseMatrix& A, int s, uint64_t samples, uint64_t seed);

/// (||A||^(s), ||A-Phi||^(s)) over the same sampled subsets.
std::pair<double, double> sampled_perturbation_norms(const DenseMatrix& A, const DenseMatrix& Phi,
                                                     int s, uint64_t samples, uint64_t seed);

/// The four norm fields of PerturbationConstants (no RIC needed).
PerturbationConstants perturbation_norms(const DenseMatrix& A, const DenseMatrix& Phi, int s,
                                         uint64_t budget);

/// Full constant set; requires delta_s.delta < 1 for kappa and gamma.
PerturbationConstants perturbation_constants(const DenseMatrix& A, const DenseMatrix& Phi, int s,
                                             const RicEstimate& delta_s, uint64_t budget);

/// sqrt((1+delta)/(1-delta)); throws ConditionError at delta >= 1.
double kappa_of(double delta);

/// sqrt((1-delta)/(1+delta)), clamped to 0 for delta >= 1.
double inv_kappa_of(double delta);

}  // namespace cs
