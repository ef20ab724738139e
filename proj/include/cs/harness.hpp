#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cs/bpdn.hpp"
#include "cs/cosamp.hpp"
#include "cs/ensembles.hpp"
#include "cs/theory.hpp"

namespace cs {

struct ExperimentConfig {
  EnsembleKind kind = EnsembleKind::gaussian;
  int m = 25;
  int d = 50;
  int s = 3;
  double tail_alpha = 0.0;
  double tail_beta = 0.0;
  std::vector<double> eps_grid{0.0};
  std::vector<double> noise_grid{0.0};
  int trials_per_cell = 1;
  bool run_cosamp = true;
  bool run_bpdn = false;
  uint64_t master_seed = 0;
  uint64_t budget = 200000;     // combinatorial budget for exact subset work
  uint64_t mc_samples = 300;    // samples when over budget
  int cosamp_max_iters = 100;
  double cosamp_residual_tol = 1e-10;
  double cosamp_stagnation_tol = 1e-7;
  int bpdn_max_iters = 20000;
  double bpdn_tol = 1e-8;
};

/// One seeded trial, flattened to the CSV row schema. x_norm and
/// bp_tail_term are internal (not serialized).
struct TrialRecord {
  uint64_t trial_id = 0;
  uint64_t seed = 0;
  double eps_target = 0.0;
  double noise_level = 0.0;
  double eps_sub_rel = 0.0;
  double eps_full_rel = 0.0;
  double abs_sub = 0.0;
  double abs_full = 0.0;
  double delta_s = 0.0;
  double delta_2s = 0.0;
  double delta_4s = 0.0;
  std::string ric_method;  // "exact" or "mc" per order, joined with '/'
  double alpha_s = 0.0;
  double beta_s = 0.0;
  bool cond_bp_ric = false;
  bool cond_bp_tail = false;
  bool cond_cs_ric = false;
  bool cond_cs_tail = false;
  bool has_cosamp = false;
  double err_cosamp = 0.0;
  bool has_bpdn = false;
  double err_bpdn = 0.0;
  double bracket_cosamp = 0.0;
  bool has_eps_total = false;
  double eps_total_bp = 0.0;
  int iters_cosamp = 0;
  int iters_bpdn = 0;
  bool conv_cosamp = false;
  bool conv_bpdn = false;
  // internal
  double x_norm = 0.0;
  double bp_tail_term = 0.0;  // ||x - x_s||_1 / sqrt(s)
};

struct FitReport {
  // CoSaMP: error <= C * bracket (Theorem-3 form)
  bool cosamp_fitted = false;
  double c_fit = 0.0;
  double cosamp_coverage = 0.0;  // held-out fraction within the fitted bound
  int cosamp_train = 0;
  int cosamp_test = 0;
  double cosamp_mean_slack = 0.0;  // mean of C*bracket - err over train
  std::string cosamp_gate;         // "conditions" or "bracket-only"
  int exact_recovery_trials = 0;   // zero-bracket trials, excluded from the fit
  int exact_recovery_ok = 0;       // of those, relative error <= 1e-6
  // BP: error <= (C0/sqrt(s))||x-x_s||_1 + C1 * eps_total
  bool bp_fitted = false;
  double c0_fit = 0.0;
  double c1_fit = 0.0;
  double bp_coverage = 0.0;
  int bp_train = 0;
  int bp_test = 0;
  double bp_mean_slack = 0.0;
  std::string bp_gate;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by trial_id
  FitReport fit;
};

/// Runs every grid cell and trial; deterministic for a fixed master_seed
/// regardless of worker count. Constants are fitted as the max error/bracket
/// ratio on even trial ids and validated on odd ones.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers = 1);

/// Exact CSV schema (header + one row per trial, 17 significant digits).
std::string to_csv(const std::vector<TrialRecord>& records);

std::string fit_summary(const FitReport& fit);

/// Flat key=value config file, '#' comments.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace cs
