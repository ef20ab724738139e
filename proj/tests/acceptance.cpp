// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "cs/harness.hpp"
#include "cs/theory.hpp"
#include "oracles.hpp"

using namespace cs;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const char* what, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// --- criterion 1: exact RIC vs exhaustive oracle ---
void criterion1() {
  Clock::time_point t0 = Clock::now();
  bool ok = true;
  for (uint64_t seed = 0; seed < 20 && ok; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 8, 16, 10000 + seed});
    RicEstimate r = ric_exact(A, 2, 1000000);
    ok = std::fabs(r.delta - oracle::ric_exhaustive(A, 2)) <= 1e-12;
  }
  const double t = elapsed_s(t0);
  ok = ok && t < 5.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "20/20 matched, %.2fs", t);
  report(1, ok, "exact RIC equals the exhaustive-enumeration oracle", buf);
}

// --- criterion 2: perturbed-RIC upper bound ---
void criterion2() {
  int held = 0;
  const int total = 50;
  for (int t = 0; t < total; ++t) {
    const int d = 10 + t % 7;  // 10..16
    const int s = 1 + t % 2;
    const int m = d;
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, m, d, 20000 + static_cast<uint64_t>(t)});
    DenseMatrix Phi =
        gen_perturbed_decoder(A, {0.02 + 0.002 * (t % 10), s, 21000 + static_cast<uint64_t>(t)},
                              1000000);
    RicEstimate da = ric_exact(A, s, 1000000);
    PerturbationConstants pc = perturbation_norms(A, Phi, s, 1000000);
    RicEstimate dphi = ric_exact(Phi, s, 1000000);
    if (dphi.delta <= lemma4_bound(da, pc.eps_sub) + 1e-10) ++held;
  }
  bool equal_ok = true;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 12, 14, 22000 + seed});
    RicEstimate da = ric_exact(A, 2, 1000000);
    PerturbationConstants pc = perturbation_norms(A, A, 2, 1000000);
    RicEstimate dphi = ric_exact(A, 2, 1000000);
    equal_ok = equal_ok && std::fabs(dphi.delta - lemma4_bound(da, pc.eps_sub)) <= 1e-12;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d/50 bounded, identity case %s", held,
                equal_ok ? "exact" : "off");
  report(2, held == total && equal_ok, "perturbed RIC respects the multiplicative upper bound",
         buf);
}

// --- criterion 3: RIP norm sandwich ---
void criterion3() {
  int held = 0;
  const int total = 100;
  for (uint64_t seed = 0; seed < total; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 100, 12, 30000 + seed});
    RicEstimate d2 = ric_exact(A, 2, 1000000);
    if (d2.delta >= 1.0) continue;
    SignalVector x = gen_signal({12, 2, 0.2, 0.15, 31000 + seed});
    auto [lo, hi] = rip_norm_bounds(x, 2, d2);
    const double ax = norm2(matvec(A, x));
    if (lo <= ax + 1e-10 && ax <= hi + 1e-10) ++held;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%d/100 bracketed", held);
  report(3, held == total, "RIP norm sandwich brackets the encoded norm", buf);
}

// --- criterion 4: CoSaMP exact recovery rate ---
void criterion4() {
  int exact = 0;
  double worst_ms = 0.0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, 25, 50, 40000 + seed});
    SignalVector x = gen_signal({50, 3, 0.0, 0.0, 41000 + seed});
    SignalVector y = matvec(A, x);
    CosampConfig cfg;
    cfg.s = 3;
    Clock::time_point t0 = Clock::now();
    RecoveryResult r = cosamp_recover(A, y, cfg);
    worst_ms = std::max(worst_ms, 1000.0 * elapsed_s(t0));
    if (norm2(subtract(r.estimate, x)) / norm2(x) <= 1e-6) ++exact;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d/100 exact, worst trial %.1fms", exact, worst_ms);
  report(4, exact >= 95 && worst_ms < 50.0, "CoSaMP recovers sparse signals exactly", buf);
}

// --- criterion 5: BPDN vs the LP oracle ---
void criterion5() {
  int good = 0;
  const int total = 20;
  for (int t = 0; t < total; ++t) {
    const int m = 8 + t % 5;  // 8..12
    const int d = 2 * m;
    DenseMatrix A = gen_matrix({EnsembleKind::gaussian, m, d, 50000 + static_cast<uint64_t>(t)});
    SignalVector x = gen_signal({d, 2, 0.0, 0.0, 51000 + static_cast<uint64_t>(t)});
    SignalVector y = matvec(A, x);
    oracle::LpResult lp = oracle::bp_equality_lp(A, y);
    if (!lp.ok) continue;
    BpdnConfig cfg;
    cfg.epsilon = 0.0;
    BpdnResult r = bpdn_solve(A, y, cfg);
    if (std::fabs(r.objective - lp.objective) <= 1e-5 && r.constraint_slack >= -1e-9) ++good;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%d/20 matched", good);
  report(5, good == total, "BPDN objective matches the LP-reformulation oracle", buf);
}

// --- criterion 6: threshold constants ---
void criterion6() {
  const bool values_ok =
      std::fabs(bp_dissimilarity_limit() - (std::pow(2.0, 0.25) - 1.0)) <= 1e-15 &&
      std::fabs(cosamp_dissimilarity_limit() - (std::sqrt(1.1) - 1.0)) <= 1e-15;
  const bool rounding_ok = std::round(bp_dissimilarity_limit() * 100.0) == 19.0 &&
                           std::round(cosamp_dissimilarity_limit() * 100.0) == 5.0;
  report(6, values_ok && rounding_ok, "dissimilarity thresholds are exact and round to 19%/5%");
}

// --- criterion 7: CoSaMP mixed-operator sweep ---
void criterion7() {
  ExperimentConfig cfg;
  cfg.m = 25;
  cfg.d = 50;
  cfg.s = 3;
  cfg.tail_alpha = 0.05;
  cfg.tail_beta = 0.03;
  cfg.eps_grid = {0.0, 0.005, 0.01, 0.02};
  cfg.noise_grid = {0.0, 0.05, 0.1};
  cfg.trials_per_cell = 50;
  cfg.run_cosamp = true;
  cfg.run_bpdn = false;
  cfg.master_seed = 20260823;
  Clock::time_point t0 = Clock::now();
  ExperimentResult res = run_experiment(cfg, 1);
  const double t = elapsed_s(t0);

  std::map<double, std::vector<double>> by_eps;
  for (const TrialRecord& r : res.records)
    if (r.noise_level == 0.0 && r.has_cosamp) by_eps[r.eps_target].push_back(r.err_cosamp);
  bool increasing = by_eps.size() == cfg.eps_grid.size();
  double prev = -1.0;
  for (auto& [eps, errs] : by_eps) {
    const double med = median(errs);
    increasing = increasing && med > prev;
    prev = med;
  }

  const bool ok = res.fit.cosamp_fitted && res.fit.cosamp_coverage >= 0.95 && increasing &&
                  t < 120.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "coverage %.1f%% (%s gate, C=%.3g), medians %s, %.1fs",
                100.0 * res.fit.cosamp_coverage, res.fit.cosamp_gate.c_str(), res.fit.c_fit,
                increasing ? "increasing" : "NOT increasing", t);
  report(7, ok, "held-out errors stay within the fitted CoSaMP bracket", buf);
}

// --- criterion 8: BP total-noise sweep ---
void criterion8() {
  ExperimentConfig cfg;
  cfg.kind = EnsembleKind::gaussian;
  cfg.m = 80;
  cfg.d = 100;
  cfg.s = 2;
  cfg.tail_alpha = 0.05;
  cfg.tail_beta = 0.04;
  cfg.eps_grid = {0.0, 0.01};
  cfg.noise_grid = {0.0, 0.02};
  cfg.trials_per_cell = 25;
  cfg.run_cosamp = false;
  cfg.run_bpdn = true;
  cfg.master_seed = 8088;
  ExperimentResult res = run_experiment(cfg, 4);
  int solved = 0;
  for (const TrialRecord& r : res.records)
    if (r.has_bpdn) ++solved;
  const bool ok = res.fit.bp_fitted && res.fit.bp_coverage >= 0.95;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "coverage %.1f%% (%s gate, C0=C1=%.3g), %d/%zu trials solved",
                100.0 * res.fit.bp_coverage, res.fit.bp_gate.c_str(), res.fit.c1_fit, solved,
                res.records.size());
  report(8, ok, "held-out BPDN errors stay within the total-noise bound", buf);
}

// --- criterion 9: worker-count determinism ---
void criterion9() {
  ExperimentConfig cfg;
  cfg.m = 20;
  cfg.d = 40;
  cfg.s = 2;
  cfg.tail_alpha = 0.1;
  cfg.tail_beta = 0.08;
  cfg.eps_grid = {0.0, 0.01};
  cfg.noise_grid = {0.0, 0.05};
  cfg.trials_per_cell = 5;
  cfg.master_seed = 99;
  const std::string w1 = to_csv(run_experiment(cfg, 1).records);
  const std::string w2 = to_csv(run_experiment(cfg, 2).records);
  const std::string w4 = to_csv(run_experiment(cfg, 4).records);
  report(9, w1 == w2 && w2 == w4, "sweep CSV is byte-identical across 1/2/4 workers");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
