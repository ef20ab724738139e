#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "cs/ensembles.hpp"
#include "cs/theory.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cs;

namespace {

PerturbationConstants pc_at(const DenseMatrix& A, const DenseMatrix& Phi, int s) {
  RicEstimate d = ric_exact(A, s, 1000000);
  return perturbation_constants(A, Phi, s, d, 1000000);
}

}  // namespace

TEST_CASE("total noise vanishes for a sparse signal with matched operators") {
  DenseMatrix I4 = identity(4);
  PerturbationConstants pc = pc_at(I4, I4, 2);
  TailMetrics tm{0.0, 0.0, 2};
  CHECK(total_noise_param(pc, tm, 1.3, 0.0) == 0.0);
}

TEST_CASE("total noise reduces to the additive noise norm under matched operators") {
  DenseMatrix I4 = identity(4);
  PerturbationConstants pc = pc_at(I4, I4, 2);
  TailMetrics tm{0.0, 0.0, 2};
  CHECK(total_noise_param(pc, tm, 2.0, 0.35) == doctest::Approx(0.35).epsilon(1e-15));
}

TEST_CASE("total noise matches a definitional recomputation") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 100, 12, 3});
  DenseMatrix Phi = gen_perturbed_decoder(A, {0.03, 2, 4}, 1000000);
  PerturbationConstants pc = pc_at(A, Phi, 2);
  SignalVector x = gen_signal({12, 2, 0.05, 0.04, 5});
  TailMetrics tm = tail_metrics(x, 2);
  const double b = 1.7, e = 0.02;
  const double expect =
      ((pc.eps_sub * pc.kappa + pc.eps_full * pc.gamma * tm.alpha) /
           (1.0 - pc.kappa * (tm.alpha + tm.beta)) +
       e / b) *
      b;
  CHECK(total_noise_param(pc, tm, b, e) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("total noise rejects a non-positive denominator and zero data") {
  DenseMatrix I4 = identity(4);
  PerturbationConstants pc = pc_at(I4, I4, 2);  // kappa = 1
  TailMetrics big{0.8, 0.4, 2};                 // alpha + beta >= 1/kappa
  CHECK_THROWS_AS(total_noise_param(pc, big, 1.0, 0.0), ConditionError);
  TailMetrics ok{0.1, 0.05, 2};
  CHECK_THROWS_AS(total_noise_param(pc, ok, 0.0, 0.0), DegenerateSignalError);
}

TEST_CASE("with matched operators the RIC conditions reduce to the classical ones") {
  DenseMatrix I8 = identity(8);
  PerturbationConstants pc = pc_at(I8, I8, 2);
  TailMetrics tm{0.0, 0.0, 2};
  // bp: delta_2s < sqrt(2) - 1 when eps = 0
  RicEstimate good{4, 0.41, RicMethod::exact, 1};
  RicEstimate bad{4, 0.42, RicMethod::exact, 1};
  CHECK(check_bp_conditions(good, pc, pc, tm).bp_ric_ok);
  CHECK_FALSE(check_bp_conditions(bad, pc, pc, tm).bp_ric_ok);
  CHECK(check_bp_conditions(good, pc, pc, tm).bp_ric_margin ==
        doctest::Approx(0.41 - (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
  // cosamp: delta_4s <= 0.1 when eps = 0 (non-strict)
  RicEstimate edge{8, 0.1, RicMethod::exact, 1};
  RicEstimate over{8, 0.1000001, RicMethod::exact, 1};
  CHECK(check_cosamp_conditions(edge, pc, pc, tm).cosamp_ric_ok);
  CHECK_FALSE(check_cosamp_conditions(over, pc, pc, tm).cosamp_ric_ok);
}

TEST_CASE("tail conditions compare alpha+beta against the kappa reciprocal") {
  DenseMatrix I8 = identity(8);
  PerturbationConstants pc = pc_at(I8, I8, 2);  // kappa = 1
  RicEstimate zero{4, 0.0, RicMethod::exact, 1};
  TailMetrics near{0.6, 0.3, 2};  // sum 0.9 < 1 but > 1/2
  ConditionReport r = check_bp_conditions(zero, pc, pc, near);
  CHECK(r.bp_tail_ok);
  ConditionReport c = check_cosamp_conditions(zero, pc, pc, near);
  CHECK_FALSE(c.cosamp_tail_ok);
  TailMetrics half{0.3, 0.2, 2};  // sum exactly 1/2: non-strict cosamp passes
  CHECK(check_cosamp_conditions(zero, pc, pc, half).cosamp_tail_ok);
}

TEST_CASE("infinite kappa clamps the reciprocal and fails the tail conditions") {
  PerturbationConstants pc{};
  pc.kappa = std::numeric_limits<double>::infinity();
  pc.gamma = std::numeric_limits<double>::infinity();
  pc.s = 2;
  RicEstimate d{4, 0.0, RicMethod::exact, 1};
  TailMetrics tm{0.0, 0.0, 2};
  // even a zero tail cannot pass a strict comparison against 1/kappa = 0
  CHECK_FALSE(check_bp_conditions(d, pc, pc, tm).bp_tail_ok);
  CHECK(check_cosamp_conditions(d, pc, pc, tm).cosamp_tail_ok);  // 0 <= 0
}

TEST_CASE("dissimilarity limits at delta = 0") {
  CHECK(bp_dissimilarity_limit() == doctest::Approx(std::pow(2.0, 0.25) - 1.0).epsilon(1e-15));
  CHECK(cosamp_dissimilarity_limit() == doctest::Approx(std::sqrt(1.1) - 1.0).epsilon(1e-15));
  // the advertised rounded percentages
  CHECK(std::round(bp_dissimilarity_limit() * 100.0) == 19.0);
  CHECK(std::round(cosamp_dissimilarity_limit() * 100.0) == 5.0);
}

TEST_CASE("perturbed-RIC bound examples") {
  RicEstimate d{2, 0.2, RicMethod::exact, 1};
  CHECK(lemma4_bound(d, 0.0) == doctest::Approx(0.2).epsilon(1e-15));
  RicEstimate zero{2, 0.0, RicMethod::exact, 1};
  CHECK(lemma4_bound(zero, 0.1) == doctest::Approx(0.21).epsilon(1e-15));
}

TEST_CASE("perturbed-RIC bound dominates the exact RIC of the decoder") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 12, 16, 900 + seed});
    DenseMatrix Phi = gen_perturbed_decoder(A, {0.05, 2, 950 + seed}, 1000000);
    RicEstimate da = ric_exact(A, 2, 1000000);
    PerturbationConstants pc = perturbation_norms(A, Phi, 2, 1000000);
    RicEstimate dphi = ric_exact(Phi, 2, 1000000);
    CHECK(dphi.delta <= lemma4_bound(da, pc.eps_sub) + 1e-10);
  }
}

TEST_CASE("bracket reduces to the noise norm for sparse data and matched operators") {
  DenseMatrix I6 = identity(6);
  PerturbationConstants pc = pc_at(I6, I6, 2);
  SignalVector x{0, 1.0, 0, -0.5, 0, 0};
  BoundBracket b = cosamp_bracket(x, 2, pc, norm2(x), 0.2);
  CHECK(b.cosamp_l2_tail == 0.0);
  CHECK(b.cosamp_l1_tail == 0.0);
  CHECK(b.cosamp_mult == 0.0);
  CHECK(b.cosamp_noise == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(cosamp_bracket_total(b) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("bracket terms match their definitions") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 10, 14, 71});
  DenseMatrix Phi = gen_perturbed_decoder(A, {0.08, 3, 72}, 1000000);
  PerturbationConstants pc = perturbation_norms(A, Phi, 3, 1000000);
  SignalVector x = gen_signal({14, 3, 0.2, 0.15, 73});
  TailMetrics tm = tail_metrics(x, 3);
  auto [xs, sup] = best_s_term(x, 3);
  SignalVector tail = subtract(x, xs);
  const double bnorm = 2.1, enorm = 0.07;
  BoundBracket b = cosamp_bracket(x, 3, pc, bnorm, enorm);
  CHECK(b.cosamp_l2_tail == doctest::Approx(norm2(tail)).epsilon(1e-12));
  CHECK(b.cosamp_l1_tail == doctest::Approx(norm1(tail) / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.cosamp_mult ==
        doctest::Approx((pc.abs_full * tm.alpha + pc.abs_sub) * bnorm).epsilon(1e-12));
  CHECK(b.cosamp_noise == doctest::Approx(enorm).epsilon(1e-15));
  CHECK(cosamp_bracket_total(b) ==
        doctest::Approx(b.cosamp_l2_tail + b.cosamp_l1_tail + b.cosamp_mult + b.cosamp_noise)
            .epsilon(1e-15));
  CHECK(b.bp_tail_term == doctest::Approx(norm1(tail) / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("norm sandwich is exact for a sparse unit signal with delta 0") {
  RicEstimate zero{2, 0.0, RicMethod::exact, 1};
  SignalVector x{0, 1, 0, 0};
  auto [lo, hi] = rip_norm_bounds(x, 2, zero);
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-15));
  // ||x||_2 + ||x||_1/sqrt(2) with both norms 1
  CHECK(hi == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("norm sandwich brackets ||Ax|| on random instances") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 100, 12, 2000 + seed});
    RicEstimate d2 = ric_exact(A, 2, 1000000);
    REQUIRE(d2.delta < 1.0);
    SignalVector x = gen_signal({12, 2, 0.25, 0.2, 2100 + seed});
    auto [lo, hi] = rip_norm_bounds(x, 2, d2);
    const double ax = norm2(matvec(A, x));
    CHECK(lo <= ax + 1e-10);
    CHECK(ax <= hi + 1e-10);
  }
}

TEST_CASE("norm sandwich rejects delta >= 1") {
  RicEstimate bad{2, 1.0, RicMethod::exact, 1};
  CHECK_THROWS_AS(rip_norm_bounds({1, 0, 0}, 1, bad), ConditionError);
}

TEST_CASE("total noise is monotone in the additive noise level") {
  DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 100, 12, 11});
  DenseMatrix Phi = gen_perturbed_decoder(A, {0.02, 2, 12}, 1000000);
  PerturbationConstants pc = pc_at(A, Phi, 2);
  TailMetrics tm{0.05, 0.04, 2};
  double prev = -1.0;
  for (double e : {0.0, 0.01, 0.1, 0.5}) {
    const double v = total_noise_param(pc, tm, 1.0, e);
    CHECK(v > prev);
    prev = v;
  }
}
