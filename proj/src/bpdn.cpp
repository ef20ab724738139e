#include "cs/bpdn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cs {

BpdnResult bpdn_solve(const DenseMatrix& Phi, const SignalVector& y, const BpdnConfig& cfg) {
  if (Phi.rows() != static_cast<int>(y.size()))
    throw DimensionError("bpdn_solve: measurement length != rows");
  if (cfg.epsilon < 0.0) throw std::invalid_argument("bpdn_solve: epsilon must be >= 0");
  if (cfg.primal_tol <= 0 || cfg.dual_tol <= 0 || cfg.max_iters < 1)
    throw std::invalid_argument("bpdn_solve: invalid config");

  const int m = Phi.rows(), d = Phi.cols();
  const double eps = cfg.epsilon;

  BpdnResult res;
  if (norm2(y) <= eps) {
    // z = 0 is feasible and l1-minimal.
    res.solution.assign(d, 0.0);
    res.objective = 0.0;
    res.constraint_slack = eps - norm2(y);
    res.converged = true;
    return res;
  }

  const double L = spectral_norm(Phi);
  const double tau = 0.95 / L;
  const double sigma = 0.95 / L;

  SignalVector z(d, 0.0), zbar(d, 0.0), w(m, 0.0);
  SignalVector zn(d), q(m), proj(m);

  for (int k = 0; k < cfg.max_iters; ++k) {
    // dual ascent: w <- prox of the ball indicator's conjugate
    const SignalVector pz = matvec(Phi, zbar);
    double dist = 0.0;
    for (int i = 0; i < m; ++i) {
      q[i] = w[i] + sigma * pz[i];
      const double vi = q[i] / sigma - y[i];
      dist += vi * vi;
    }
    dist = std::sqrt(dist);
    const double shrink = dist > eps && dist > 0.0 ? eps / dist : 1.0;
    for (int i = 0; i < m; ++i) {
      const double vi = q[i] / sigma;
      proj[i] = y[i] + (vi - y[i]) * shrink;
      w[i] = q[i] - sigma * proj[i];
    }

    // primal descent with soft-thresholding
    const SignalVector g = matvec_transposed(Phi, w);
    double dz2 = 0.0, zn2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double t = z[j] - tau * g[j];
      zn[j] = std::copysign(std::max(std::fabs(t) - tau, 0.0), t);
      const double diff = zn[j] - z[j];
      dz2 += diff * diff;
      zn2 += zn[j] * zn[j];
      zbar[j] = 2.0 * zn[j] - z[j];
    }
    std::swap(z, zn);
    res.iterations = k + 1;

    const double rel_change = std::sqrt(dz2) / std::max(std::sqrt(zn2), 1e-30);
    const double viol = std::max(norm2(subtract(matvec(Phi, z), y)) - eps, 0.0);
    if (rel_change < cfg.primal_tol && viol < cfg.dual_tol) {
      res.converged = true;
      break;
    }
  }

  res.solution = z;
  res.objective = norm1(z);
  res.constraint_slack = eps - norm2(subtract(matvec(Phi, z), y));
  return res;
}

}  // namespace cs
