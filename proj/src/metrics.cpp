#include "cs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cs/rng.hpp"

namespace cs {

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  const uint64_t cap = std::numeric_limits<int64_t>::max();
  uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const uint64_t num = static_cast<uint64_t>(n - k + i);
    if (c > cap / num) return cap;
    c = c * num / i;
  }
  return c;
}

std::pair<SignalVector, IndexSet> best_s_term(const SignalVector& x, int s) {
  const int d = static_cast<int>(x.size());
  if (s < 1 || s > d) throw DimensionError("best_s_term: order out of range");
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  // magnitude descending, stable => ties go to the lower index
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::fabs(x[a]) > std::fabs(x[b]); });
  IndexSet support(order.begin(), order.begin() + s);
  std::sort(support.begin(), support.end());
  SignalVector xs(d, 0.0);
  for (int j : support) xs[j] = x[j];
  return {std::move(xs), std::move(support)};
}

TailMetrics tail_metrics(const SignalVector& x, int s) {
  auto [xs, support] = best_s_term(x, s);
  const double head = norm2(xs);
  if (head == 0.0) throw DegenerateSignalError("tail_metrics: best s-term part is zero");
  SignalVector tail = subtract(x, xs);
  TailMetrics tm;
  tm.s = s;
  tm.alpha = norm2(tail) / head;
  tm.beta = norm1(tail) / (std::sqrt(static_cast<double>(s)) * head);
  return tm;
}

uint64_t for_each_subset_colex(int n, int s, const std::function<void(const IndexSet&)>& fn) {
  if (s < 1 || s > n) throw DimensionError("subset enumeration: order out of range");
  IndexSet c(s);
  std::iota(c.begin(), c.end(), 0);
  uint64_t count = 0;
  for (;;) {
    fn(c);
    ++count;
    int j = 0;
    while (j < s && c[j] + 1 == (j + 1 < s ? c[j + 1] : n)) ++j;
    if (j == s) break;
    ++c[j];
    for (int i = 0; i < j; ++i) c[i] = i;
  }
  return count;
}

namespace {

// Subset work runs on the d x d Gram matrix: eigenvalue extremes of the
// principal submatrix G[S,S] are the squared singular values of A_S.
std::vector<double> gram(const DenseMatrix& A) {
  const int m = A.rows(), d = A.cols();
  std::vector<double> g(static_cast<size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += A(k, i) * A(k, j);
      g[static_cast<size_t>(i) * d + j] = s;
      g[static_cast<size_t>(j) * d + i] = s;
    }
  return g;
}

// Cyclic Jacobi eigenvalue extremes of a k x k symmetric matrix (k small).
std::pair<double, double> sym_eig_extremes(double* a, int k) {
  if (k == 1) return {a[0], a[0]};
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int p = 0; p < k; ++p) {
      diag += std::fabs(a[p * k + p]);
      for (int q = p + 1; q < k; ++q) off += std::fabs(a[p * k + q]);
    }
    if (off <= 1e-15 * std::max(diag, 1e-300)) break;
    for (int p = 0; p < k - 1; ++p)
      for (int q = p + 1; q < k; ++q) {
        const double apq = a[p * k + q];
        if (apq == 0.0) continue;
        const double app = a[p * k + p], aqq = a[q * k + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < k; ++i) {
          const double aip = a[i * k + p], aiq = a[i * k + q];
          a[i * k + p] = c * aip - s * aiq;
          a[i * k + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < k; ++i) {
          const double api = a[p * k + i], aqi = a[q * k + i];
          a[p * k + i] = c * api - s * aqi;
          a[q * k + i] = s * api + c * aqi;
        }
      }
  }
  double lo = a[0], hi = a[0];
  for (int p = 1; p < k; ++p) {
    lo = std::min(lo, a[p * k + p]);
    hi = std::max(hi, a[p * k + p]);
  }
  return {lo, hi};
}

std::pair<double, double> principal_extremes(const std::vector<double>& g, int d,
                                             const IndexSet& S, std::vector<double>& scratch) {
  const int k = static_cast<int>(S.size());
  scratch.resize(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      scratch[static_cast<size_t>(i) * k + j] = g[static_cast<size_t>(S[i]) * d + S[j]];
  return sym_eig_extremes(scratch.data(), k);
}

double delta_of_extremes(std::pair<double, double> lam) {
  return std::max(lam.second - 1.0, 1.0 - lam.first);
}

void check_budget(int cols, int s, uint64_t budget, const char* who) {
  if (binomial(cols, s) > budget)
    throw BudgetError(std::string(who) +
                      ": C(d, s) exceeds the combinatorial budget; use the monte-carlo variant "
                      "or lower d or s");
}

}  // namespace

RicEstimate ric_exact(const DenseMatrix& A, int s, uint64_t budget) {
  check_budget(A.cols(), s, budget, "ric_exact");
  const std::vector<double> g = gram(A);
  std::vector<double> scratch;
  const int d = A.cols();
  double delta = 0.0;
  const uint64_t n = for_each_subset_colex(d, s, [&](const IndexSet& S) {
    delta = std::max(delta, delta_of_extremes(principal_extremes(g, d, S, scratch)));
  });
  RicEstimate r;
  r.s = s;
  r.delta = std::max(delta, 0.0);
  r.method = RicMethod::exact;
  r.subsets_examined = n;
  return r;
}

RicEstimate ric_monte_carlo(const DenseMatrix& A, int s, uint64_t samples, uint64_t seed) {
  if (samples < 1) throw DimensionError("ric_monte_carlo: samples must be >= 1");
  const std::vector<double> g = gram(A);
  std::vector<double> scratch;
  const int d = A.cols();
  Rng rng(seed);
  double delta = 0.0;
  for (uint64_t k = 0; k < samples; ++k) {
    const IndexSet S = rng.next_subset(d, s);
    delta = std::max(delta, delta_of_extremes(principal_extremes(g, d, S, scratch)));
  }
  RicEstimate r;
  r.s = s;
  r.delta = std::max(delta, 0.0);
  r.method = RicMethod::monte_carlo_lower_bound;
  r.subsets_examined = samples;
  return r;
}

double submatrix_norm_max(const DenseMatrix& A, int s, uint64_t budget) {
  check_budget(A.cols(), s, budget, "submatrix_norm_max");
  const std::vector<double> g = gram(A);
  std::vector<double> scratch;
  const int d = A.cols();
  double best = 0.0;
  for_each_subset_colex(d, s, [&](const IndexSet& S) {
    best = std::max(best, principal_extremes(g, d, S, scratch).second);
  });
  return std::sqrt(std::max(best, 0.0));
}

double submatrix_norm_monte_carlo(const DenseMatrix& A, int s, uint64_t samples, uint64_t seed) {
  const std::vector<double> g = gram(A);
  std::vector<double> scratch;
  const int d = A.cols();
  Rng rng(seed);
  double best = 0.0;
  for (uint64_t k = 0; k < samples; ++k)
    best = std::max(best, principal_extremes(g, d, rng.next_subset(d, s), scratch).second);
  return std::sqrt(std::max(best, 0.0));
}

std::pair<double, double> sampled_perturbation_norms(const DenseMatrix& A, const DenseMatrix& Phi,
                                                     int s, uint64_t samples, uint64_t seed) {
  const std::vector<double> ga = gram(A);
  const std::vector<double> ge = gram(subtract(A, Phi));
  std::vector<double> scratch;
  const int d = A.cols();
  Rng rng(seed);
  double na = 0.0, ne = 0.0;
  for (uint64_t k = 0; k < samples; ++k) {
    const IndexSet S = rng.next_subset(d, s);
    na = std::max(na, principal_extremes(ga, d, S, scratch).second);
    ne = std::max(ne, principal_extremes(ge, d, S, scratch).second);
  }
  return {std::sqrt(std::max(na, 0.0)), std::sqrt(std::max(ne, 0.0))};
}

PerturbationConstants perturbation_norms(const DenseMatrix& A, const DenseMatrix& Phi, int s,
                                         uint64_t budget) {
  if (A.rows() != Phi.rows() || A.cols() != Phi.cols())
    throw DimensionError("perturbation_norms: A and Phi must have the same shape");
  const DenseMatrix E = subtract(A, Phi);
  PerturbationConstants pc;
  pc.s = s;
  const double a_full = spectral_norm(A);
  pc.abs_full = spectral_norm(E);
  pc.eps_full = pc.abs_full / a_full;
  const double a_sub = submatrix_norm_max(A, s, budget);
  pc.abs_sub = submatrix_norm_max(E, s, budget);
  pc.eps_sub = pc.abs_sub / a_sub;
  return pc;
}

double kappa_of(double delta) {
  if (delta >= 1.0)
    throw ConditionError("kappa undefined: delta_s >= 1 (matrix too far from an isometry)");
  return std::sqrt((1.0 + delta) / (1.0 - delta));
}

double inv_kappa_of(double delta) {
  if (delta >= 1.0) return 0.0;
  return std::sqrt((1.0 - delta) / (1.0 + delta));
}

PerturbationConstants perturbation_constants(const DenseMatrix& A, const DenseMatrix& Phi, int s,
                                             const RicEstimate& delta_s, uint64_t budget) {
  PerturbationConstants pc = perturbation_norms(A, Phi, s, budget);
  pc.kappa = kappa_of(delta_s.delta);
  pc.gamma = spectral_norm(A) / std::sqrt(1.0 - delta_s.delta);
  return pc;
}

}  // namespace cs
