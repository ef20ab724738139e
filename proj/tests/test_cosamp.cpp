#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cs/cosamp.hpp"
#include "cs/ensembles.hpp"
#include "cs/metrics.hpp"
#include "doctest.h"

using namespace cs;

namespace {

SignalVector sparse_signal(int d, int s, uint64_t seed) {
  return gen_signal({d, s, 0.0, 0.0, seed});
}

// Straight transcription of the iteration for the golden-trace check:
// proxy, top-2s support, merge, least squares, prune, residual update.
SignalVector reference_iterate(const DenseMatrix& Phi, const SignalVector& y,
                               const SignalVector& prev, int s) {
  const int d = Phi.cols();
  SignalVector v = subtract(y, matvec(Phi, prev));
  SignalVector u = matvec_transposed(Phi, v);
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::fabs(u[a]) > std::fabs(u[b]); });
  std::set<int> T;
  for (int i = 0; i < 2 * s && i < d; ++i)
    if (u[order[i]] != 0.0) T.insert(order[i]);
  for (int j = 0; j < d; ++j)
    if (prev[j] != 0.0) T.insert(j);
  IndexSet Tv(T.begin(), T.end());
  SignalVector wt = least_squares(submatrix(Phi, Tv), y);
  SignalVector w(d, 0.0);
  for (size_t i = 0; i < Tv.size(); ++i) w[Tv[i]] = wt[i];
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::fabs(w[a]) > std::fabs(w[b]); });
  SignalVector a(d, 0.0);
  for (int i = 0; i < s; ++i)
    if (w[order[i]] != 0.0) a[order[i]] = w[order[i]];
  return a;
}

}  // namespace

TEST_CASE("identity decoder recovers a sparse signal in one iteration") {
  const int d = 8;
  DenseMatrix I = identity(d);
  SignalVector x(d, 0.0);
  x[2] = 1.5;
  x[5] = -0.7;
  CosampConfig cfg;
  cfg.s = 2;
  RecoveryResult r = cosamp_recover(I, x, cfg);
  CHECK(r.iterations == 1);
  CHECK(r.stop_reason == StopReason::residual);
  for (int j = 0; j < d; ++j) CHECK(r.estimate[j] == doctest::Approx(x[j]).epsilon(1e-12));
}

TEST_CASE("noiseless gaussian recovery is exact to 1e-6") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 24, 48, 5});
  SignalVector x = sparse_signal(48, 3, 6);
  SignalVector y = matvec(A, x);
  CosampConfig cfg;
  cfg.s = 3;
  RecoveryResult r = cosamp_recover(A, y, cfg);
  CHECK(norm2(subtract(r.estimate, x)) <= 1e-6);

  // on a converged trial the estimate must match least squares on the
  // true support
  auto [xs, support] = best_s_term(x, 3);
  SignalVector ref = least_squares(submatrix(A, support), y);
  for (size_t i = 0; i < support.size(); ++i)
    CHECK(r.estimate[support[i]] == doctest::Approx(ref[i]).epsilon(1e-8));
}

TEST_CASE("estimate is always at most s-sparse") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 12, 30, 100 + seed});
    SignalVector x = gen_signal({30, 4, 0.3, 0.2, 200 + seed});
    SignalVector e = gen_noise(12, 0.2, 300 + seed);
    SignalVector y = matvec(A, x);
    for (int i = 0; i < 12; ++i) y[i] += e[i];
    CosampConfig cfg;
    cfg.s = 4;
    RecoveryResult r = cosamp_recover(A, y, cfg);
    CHECK(norm0(r.estimate) <= 4);
  }
}

TEST_CASE("residual history is consistent with the final estimate") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 15, 36, 8});
  SignalVector x = sparse_signal(36, 3, 9);
  SignalVector e = gen_noise(15, 0.05, 10);
  SignalVector y = matvec(A, x);
  for (int i = 0; i < 15; ++i) y[i] += e[i];
  CosampConfig cfg;
  cfg.s = 3;
  RecoveryResult r = cosamp_recover(A, y, cfg);
  CHECK(static_cast<int>(r.residual_history.size()) == r.iterations + 1);
  CHECK(r.residual_history.front() == doctest::Approx(norm2(y)).epsilon(1e-15));
  const double final_res = norm2(subtract(y, matvec(A, r.estimate)));
  CHECK(std::fabs(r.residual_history.back() - final_res) <= 1e-12);
}

TEST_CASE("iterate sequence matches a reference transcription of the box") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 16, 40, 12});
  SignalVector x = sparse_signal(40, 4, 13);
  SignalVector e = gen_noise(16, 0.03, 14);
  SignalVector y = matvec(A, x);
  for (int i = 0; i < 16; ++i) y[i] += e[i];

  CosampConfig cfg;
  cfg.s = 4;
  // Run k iterations of the implementation against k reference steps.
  SignalVector ref(40, 0.0);
  for (int k = 1; k <= 5; ++k) {
    CosampConfig step = cfg;
    step.max_iters = k;
    step.residual_tol = 1e-300;  // force exactly k iterations
    step.stagnation_tol = 1e-300;
    RecoveryResult r = cosamp_recover(A, y, step);
    ref = reference_iterate(A, y, ref, 4);
    REQUIRE(r.iterations == k);
    for (int j = 0; j < 40; ++j) CHECK(r.estimate[j] == doctest::Approx(ref[j]).epsilon(1e-10));
  }
}

TEST_CASE("stagnation stop implies a small relative residual change") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 14, 30, 20});
  SignalVector x = sparse_signal(30, 3, 21);
  SignalVector e = gen_noise(14, 0.3, 22);
  SignalVector y = matvec(A, x);
  for (int i = 0; i < 14; ++i) y[i] += e[i];
  CosampConfig cfg;
  cfg.s = 3;
  RecoveryResult r = cosamp_recover(A, y, cfg);
  if (r.stop_reason == StopReason::stagnation) {
    const size_t n = r.residual_history.size();
    const double prev = r.residual_history[n - 2], last = r.residual_history[n - 1];
    CHECK(prev - last < cfg.stagnation_tol * prev);
  }
}

TEST_CASE("dimension and config validation") {
  DenseMatrix A(4, 12);
  CHECK_THROWS_AS(cosamp_recover(A, {1, 2, 3}, CosampConfig{}), DimensionError);
  CosampConfig cfg;
  cfg.s = 5;  // 3s > cols
  CHECK_THROWS_AS(cosamp_recover(A, SignalVector(4, 0.0), cfg), DimensionError);
}
