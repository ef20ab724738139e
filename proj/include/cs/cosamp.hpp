#pragma once

#include <vector>

#include "cs/linalg.hpp"

namespace cs {

struct CosampConfig {
  int s = 1;
  int max_iters = 100;
  double residual_tol = 1e-10;   // stop when ||v||_2 <= residual_tol * ||y||_2
  double stagnation_tol = 1e-7;  // stop when relative residual improvement falls below
};

enum class StopReason { residual, stagnation, max_iters };

struct RecoveryResult {
  SignalVector estimate;                 // s-sparse
  int iterations = 0;
  std::vector<double> residual_history;  // length iterations + 1, starts at ||y||_2
  bool converged = false;
  StopReason stop_reason = StopReason::max_iters;
};

/// CoSaMP iteration decoding with Phi (which may differ from the encoder that
/// produced y): proxy u = Phi^T v, Omega = support of the 2s largest proxy
/// entries, T = Omega merged with the previous support, least squares on
/// Phi_T, prune to s terms, update the residual.
RecoveryResult cosamp_recover(const DenseMatrix& Phi, const SignalVector& y,
                              const CosampConfig& cfg);

}  // namespace cs
