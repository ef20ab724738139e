#include "cs/ensembles.hpp"

#include <cmath>

#include "cs/rng.hpp"

namespace cs {

DenseMatrix gen_matrix(const EnsembleSpec& spec) {
  if (spec.m < 1 || spec.d < 1) throw DimensionError("gen_matrix: m and d must be >= 1");
  Rng rng(hash64(spec.seed));
  DenseMatrix A(spec.m, spec.d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.m));
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.d; ++j) {
      if (spec.kind == EnsembleKind::gaussian)
        A.at(i, j) = scale * rng.next_gaussian();
      else
        A.at(i, j) = (rng.next_u64() & 1) ? scale : -scale;
    }
  return A;
}

SignalVector gen_signal(const SignalSpec& spec) {
  const int d = spec.d, s = spec.s;
  if (s < 1 || s > d) throw DimensionError("gen_signal: need 1 <= s <= d");
  if (spec.tail_alpha < 0 || spec.tail_beta < 0)
    throw InfeasibleError("gen_signal: tail targets must be >= 0");

  const int r = d - s;
  const double L2 = spec.tail_alpha;                                  // ||tail||_2 target
  const double L1 = spec.tail_beta * std::sqrt(static_cast<double>(s));  // ||tail||_1 target

  if (r == 0 && (L2 != 0.0 || L1 != 0.0))
    throw InfeasibleError("gen_signal: d == s leaves no room for a tail");
  if (L1 > std::sqrt(static_cast<double>(r)) * L2 * (1.0 + 1e-12))
    throw InfeasibleError(
        "gen_signal: infeasible tail targets, Cauchy-Schwarz requires "
        "tail_beta <= tail_alpha * sqrt(d-s)/sqrt(s)");
  if (L1 < L2 * (1.0 - 1e-12))
    throw InfeasibleError(
        "gen_signal: infeasible tail targets, ||t||_1 >= ||t||_2 requires "
        "tail_beta >= tail_alpha / sqrt(s)");
  if (L2 == 0.0 && L1 != 0.0)
    throw InfeasibleError("gen_signal: tail_beta > 0 requires tail_alpha > 0");

  // Tail shape: one spike of magnitude u plus r-1 uniform entries of
  // magnitude v, solved in closed form to hit (L1, L2) simultaneously.
  double u = 0.0, v = 0.0;
  if (L2 > 0.0) {
    const int k = r - 1;
    if (k == 0) {
      u = L2;
    } else {
      const double disc = std::sqrt(std::max(
          static_cast<double>(k) * ((k + 1) * L2 * L2 - L1 * L1), 0.0));
      v = std::max((k * L1 - disc) / (static_cast<double>(k) * (k + 1)), 0.0);
      u = (L1 + disc) / (k + 1);
    }
  }

  Rng support_rng(mix_seed(spec.seed, 0));
  Rng value_rng(mix_seed(spec.seed, 1));
  Rng tail_rng(mix_seed(spec.seed, 2));

  const IndexSet support = support_rng.next_subset(d, s);
  std::vector<bool> on_support(d, false);
  for (int j : support) on_support[j] = true;

  // Head values: unit l2 norm, and every head entry must dominate the tail
  // spike so best_s_term recovers the intended support (ties are harmless).
  SignalVector head(s);
  bool ok = false;
  for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
    double nrm = 0.0;
    for (int i = 0; i < s; ++i) {
      head[i] = value_rng.next_gaussian();
      nrm += head[i] * head[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    ok = true;
    for (int i = 0; i < s; ++i) {
      head[i] /= nrm;
      if (std::fabs(head[i]) < u * (1.0 - 1e-12)) ok = false;
    }
  }
  if (!ok)
    throw InfeasibleError(
        "gen_signal: could not draw head values dominating the tail spike; "
        "lower tail_alpha or s");

  SignalVector x(d, 0.0);
  for (int i = 0; i < s; ++i) x[support[i]] = head[i];

  if (L2 > 0.0) {
    IndexSet complement;
    complement.reserve(r);
    for (int j = 0; j < d; ++j)
      if (!on_support[j]) complement.push_back(j);
    const int spike_pos = static_cast<int>(tail_rng.next_below(static_cast<uint64_t>(r)));
    for (int i = 0; i < r; ++i) {
      const double mag = (i == spike_pos) ? u : v;
      const double sign = (tail_rng.next_u64() & 1) ? 1.0 : -1.0;
      x[complement[i]] = sign * mag;
    }
  }
  return x;
}

DenseMatrix gen_perturbed_decoder(const DenseMatrix& A, const PerturbationSpec& spec,
                                  uint64_t budget) {
  if (spec.s < 1 || spec.s > A.cols())
    throw DimensionError("gen_perturbed_decoder: order out of range");
  if (spec.target < 0.0 || spec.target >= 1.0)
    throw InfeasibleError("gen_perturbed_decoder: target must lie in [0, 1)");
  if (spec.target == 0.0) return A;

  Rng rng(hash64(spec.seed));
  DenseMatrix E(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) E.at(i, j) = rng.next_gaussian();

  const double norm_a = submatrix_norm_max(A, spec.s, budget);
  const double norm_e = submatrix_norm_max(E, spec.s, budget);
  const double c = spec.target * norm_a / norm_e;
  return subtract(A, scale(E, c));
}

SignalVector gen_noise(int m, double level, uint64_t seed) {
  if (m < 1) throw DimensionError("gen_noise: m must be >= 1");
  if (level < 0.0) throw InfeasibleError("gen_noise: level must be >= 0");
  SignalVector e(m, 0.0);
  if (level == 0.0) return e;
  Rng rng(hash64(seed));
  double nrm = 0.0;
  while (nrm == 0.0) {
    for (int i = 0; i < m; ++i) e[i] = rng.next_gaussian();
    nrm = norm2(e);
  }
  for (int i = 0; i < m; ++i) e[i] *= level / nrm;
  return e;
}

}  // namespace cs
