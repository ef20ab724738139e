#pragma once

#include <cstdint>

#include "cs/errors.hpp"
#include "cs/linalg.hpp"
#include "cs/metrics.hpp"

namespace cs {

enum class EnsembleKind { gaussian, bernoulli };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::gaussian;
  int m = 1;
  int d = 1;
  uint64_t seed = 0;
};

struct SignalSpec {
  int d = 1;
  int s = 1;
  double tail_alpha = 0.0;  // target alpha_s
  double tail_beta = 0.0;   // target beta_s
  uint64_t seed = 0;
};

struct PerturbationSpec {
  double target = 0.0;  // desired relative eps^(s)_A, must be < 1
  int s = 1;            // submatrix order used for normalization
  uint64_t seed = 0;
};

/// gaussian: iid N(0, 1/m); bernoulli: iid +-1/sqrt(m). Deterministic in seed.
DenseMatrix gen_matrix(const EnsembleSpec& spec);

/// Signal whose best s-term part has unit l2 norm on a random support, with a
/// tail on the complement hitting (tail_alpha, tail_beta) exactly.
SignalVector gen_signal(const SignalSpec& spec);

/// Phi = A - E with E a seeded Gaussian direction rescaled so that
/// ||A-Phi||^(s)/||A||^(s) equals spec.target.
DenseMatrix gen_perturbed_decoder(const DenseMatrix& A, const PerturbationSpec& spec,
                                  uint64_t budget);

/// Gaussian direction rescaled to ||e||_2 = level exactly.
SignalVector gen_noise(int m, double level, uint64_t seed);

}  // namespace cs
