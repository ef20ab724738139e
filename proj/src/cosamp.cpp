#include "cs/cosamp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cs {

namespace {

// Indices of the k largest-magnitude entries, ties toward the lower index;
// entries that are exactly zero are never selected.
IndexSet top_k_support(const SignalVector& u, int k) {
  const int d = static_cast<int>(u.size());
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::fabs(u[a]) > std::fabs(u[b]); });
  IndexSet out;
  for (int i = 0; i < d && static_cast<int>(out.size()) < k; ++i) {
    if (u[order[i]] == 0.0) break;
    out.push_back(order[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RecoveryResult cosamp_recover(const DenseMatrix& Phi, const SignalVector& y,
                              const CosampConfig& cfg) {
  if (Phi.rows() != static_cast<int>(y.size()))
    throw DimensionError("cosamp_recover: measurement length != rows");
  if (cfg.s < 1 || cfg.max_iters < 1 || cfg.residual_tol <= 0 || cfg.stagnation_tol <= 0)
    throw std::invalid_argument("cosamp_recover: invalid config");
  if (3 * cfg.s > Phi.cols())
    throw DimensionError("cosamp_recover: need 3*s <= cols (support merge can reach 3s)");

  const int d = Phi.cols();
  const int s = cfg.s;
  RecoveryResult res;
  res.estimate.assign(d, 0.0);
  SignalVector v = y;
  const double y_norm = norm2(y);
  res.residual_history.push_back(y_norm);

  for (int k = 0; k < cfg.max_iters; ++k) {
    // Signal proxy and support merge.
    const SignalVector u = matvec_transposed(Phi, v);
    const IndexSet omega = top_k_support(u, 2 * s);
    std::set<int> merged(omega.begin(), omega.end());
    for (int j = 0; j < d; ++j)
      if (res.estimate[j] != 0.0) merged.insert(j);
    const IndexSet T(merged.begin(), merged.end());

    // Least squares on the merged support, then prune to s terms.
    SignalVector w(d, 0.0);
    if (!T.empty()) {
      SignalVector wt;
      try {
        wt = least_squares(submatrix(Phi, T), y);
      } catch (const std::exception& e) {
        throw std::runtime_error("cosamp_recover: least squares failed at iteration " +
                                 std::to_string(k + 1) + ": " + e.what());
      }
      for (size_t i = 0; i < T.size(); ++i) w[T[i]] = wt[i];
    }
    const IndexSet keep = top_k_support(w, s);
    SignalVector a(d, 0.0);
    for (int j : keep) a[j] = w[j];
    res.estimate = std::move(a);

    v = subtract(y, matvec(Phi, res.estimate));
    const double r = norm2(v);
    const double prev = res.residual_history.back();
    res.residual_history.push_back(r);
    res.iterations = k + 1;

    if (r <= cfg.residual_tol * y_norm) {
      res.converged = true;
      res.stop_reason = StopReason::residual;
      return res;
    }
    if (prev - r < cfg.stagnation_tol * prev) {
      res.converged = true;
      res.stop_reason = StopReason::stagnation;
      return res;
    }
  }
  res.stop_reason = StopReason::max_iters;
  return res;
}

}  // namespace cs
