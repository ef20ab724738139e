#pragma once

#include "cs/linalg.hpp"

namespace cs {

struct BpdnConfig {
  double epsilon = 0.0;  // l2 constraint radius
  int max_iters = 50000;
  double primal_tol = 1e-9;  // relative iterate change
  double dual_tol = 1e-9;    // constraint violation
};

struct BpdnResult {
  SignalVector solution;
  double objective = 0.0;         // ||z*||_1
  double constraint_slack = 0.0;  // epsilon - ||Phi z* - y||_2
  int iterations = 0;
  bool converged = false;
};

/// min ||z||_1 s.t. ||Phi z - y||_2 <= epsilon, solved by a primal-dual
/// splitting scheme: soft-thresholding on z against projection of the
/// residual onto the l2 ball. Step sizes come from spectral_norm(Phi).
BpdnResult bpdn_solve(const DenseMatrix& Phi, const SignalVector& y, const BpdnConfig& cfg);

}  // namespace cs
