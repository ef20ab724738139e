#include "cs/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "cs/io.hpp"
#include "cs/rng.hpp"

namespace cs {

namespace {

struct RicWithTag {
  RicEstimate est;
  std::string tag;
};

RicWithTag ric_for_order(const DenseMatrix& A, int order, const ExperimentConfig& cfg,
                         uint64_t seed) {
  if (binomial(A.cols(), order) <= cfg.budget)
    return {ric_exact(A, order, cfg.budget), "exact"};
  return {ric_monte_carlo(A, order, cfg.mc_samples, seed), "mc"};
}

// eps_sub at the given order; exact within budget, sampled otherwise.
double eps_sub_for_order(const DenseMatrix& A, const DenseMatrix& Phi, int order,
                         const ExperimentConfig& cfg, uint64_t seed) {
  if (binomial(A.cols(), order) <= cfg.budget) {
    const double na = submatrix_norm_max(A, order, cfg.budget);
    const double ne = submatrix_norm_max(subtract(A, Phi), order, cfg.budget);
    return ne / na;
  }
  auto [na, ne] = sampled_perturbation_norms(A, Phi, order, cfg.mc_samples, seed);
  return ne / na;
}

TrialRecord run_trial(const ExperimentConfig& cfg, uint64_t trial_id, double eps_target,
                      double noise_level) {
  const uint64_t seed = mix_seed(cfg.master_seed, trial_id);
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.seed = seed;
  rec.eps_target = eps_target;
  rec.noise_level = noise_level;

  const DenseMatrix A =
      gen_matrix({cfg.kind, cfg.m, cfg.d, mix_seed(seed, 10)});
  const SignalVector x =
      gen_signal({cfg.d, cfg.s, cfg.tail_alpha, cfg.tail_beta, mix_seed(seed, 11)});
  const SignalVector b = matvec(A, x);
  const SignalVector e = gen_noise(cfg.m, noise_level, mix_seed(seed, 12));
  SignalVector y(b.size());
  for (size_t i = 0; i < b.size(); ++i) y[i] = b[i] + e[i];
  const DenseMatrix Phi =
      gen_perturbed_decoder(A, {eps_target, cfg.s, mix_seed(seed, 13)}, cfg.budget);

  const RicWithTag ric_s = ric_for_order(A, cfg.s, cfg, mix_seed(seed, 14));
  const RicWithTag ric_2s = ric_for_order(A, 2 * cfg.s, cfg, mix_seed(seed, 15));
  const RicWithTag ric_4s = ric_for_order(A, 4 * cfg.s, cfg, mix_seed(seed, 16));
  rec.delta_s = ric_s.est.delta;
  rec.delta_2s = ric_2s.est.delta;
  rec.delta_4s = ric_4s.est.delta;
  rec.ric_method = ric_s.tag + "/" + ric_2s.tag + "/" + ric_4s.tag;

  PerturbationConstants pc_s = perturbation_norms(A, Phi, cfg.s, cfg.budget);
  if (rec.delta_s < 1.0) {
    pc_s.kappa = kappa_of(rec.delta_s);
    pc_s.gamma = spectral_norm(A) / std::sqrt(1.0 - rec.delta_s);
  } else {
    pc_s.kappa = std::numeric_limits<double>::infinity();
    pc_s.gamma = std::numeric_limits<double>::infinity();
  }
  rec.eps_sub_rel = pc_s.eps_sub;
  rec.eps_full_rel = pc_s.eps_full;
  rec.abs_sub = pc_s.abs_sub;
  rec.abs_full = pc_s.abs_full;

  PerturbationConstants pc_2s;
  pc_2s.s = 2 * cfg.s;
  pc_2s.eps_sub = eps_sub_for_order(A, Phi, 2 * cfg.s, cfg, mix_seed(seed, 17));
  PerturbationConstants pc_4s;
  pc_4s.s = 4 * cfg.s;
  pc_4s.eps_sub = eps_sub_for_order(A, Phi, 4 * cfg.s, cfg, mix_seed(seed, 18));

  const TailMetrics tm = tail_metrics(x, cfg.s);
  rec.alpha_s = tm.alpha;
  rec.beta_s = tm.beta;
  rec.x_norm = norm2(x);
  {
    auto [xs, sup] = best_s_term(x, cfg.s);
    rec.bp_tail_term = norm1(subtract(x, xs)) / std::sqrt(static_cast<double>(cfg.s));
  }

  const ConditionReport bp_cond = check_bp_conditions(ric_2s.est, pc_2s, pc_s, tm);
  const ConditionReport cs_cond = check_cosamp_conditions(ric_4s.est, pc_4s, pc_s, tm);
  rec.cond_bp_ric = bp_cond.bp_ric_ok;
  rec.cond_bp_tail = bp_cond.bp_tail_ok;
  rec.cond_cs_ric = cs_cond.cosamp_ric_ok;
  rec.cond_cs_tail = cs_cond.cosamp_tail_ok;

  const double b_norm = norm2(b);
  const double e_norm = norm2(e);

  if (cfg.run_cosamp) {
    CosampConfig cc;
    cc.s = cfg.s;
    cc.max_iters = cfg.cosamp_max_iters;
    cc.residual_tol = cfg.cosamp_residual_tol;
    cc.stagnation_tol = cfg.cosamp_stagnation_tol;
    const RecoveryResult r = cosamp_recover(Phi, y, cc);
    rec.has_cosamp = true;
    rec.err_cosamp = norm2(subtract(r.estimate, x));
    rec.iters_cosamp = r.iterations;
    rec.conv_cosamp = r.converged;
    rec.bracket_cosamp = cosamp_bracket_total(cosamp_bracket(x, cfg.s, pc_s, b_norm, e_norm));
  }

  if (cfg.run_bpdn) {
    // The total noise parameter needs kappa and gamma finite and the tail
    // condition denominator positive; trials where the matrix draw breaks
    // that are recorded with empty BPDN fields.
    if (rec.delta_s < 1.0 && pc_s.kappa * (tm.alpha + tm.beta) < 1.0) {
      rec.eps_total_bp = total_noise_param(pc_s, tm, b_norm, e_norm);
      rec.has_eps_total = true;
      BpdnConfig bc;
      bc.epsilon = rec.eps_total_bp;
      bc.max_iters = cfg.bpdn_max_iters;
      bc.primal_tol = cfg.bpdn_tol;
      bc.dual_tol = cfg.bpdn_tol;
      const BpdnResult r = bpdn_solve(Phi, y, bc);
      rec.has_bpdn = true;
      rec.err_bpdn = norm2(subtract(r.solution, x));
      rec.iters_bpdn = r.iterations;
      rec.conv_bpdn = r.converged;
    }
  }
  return rec;
}

void fit_cosamp(const std::vector<TrialRecord>& recs, FitReport& fit) {
  std::vector<const TrialRecord*> eligible, gated;
  for (const TrialRecord& r : recs) {
    if (!r.has_cosamp) continue;
    if (r.bracket_cosamp <= 1e-12) {
      ++fit.exact_recovery_trials;
      if (r.err_cosamp <= 1e-6 * std::max(r.x_norm, 1e-30)) ++fit.exact_recovery_ok;
      continue;
    }
    eligible.push_back(&r);
    if (r.cond_cs_ric && r.cond_cs_tail) gated.push_back(&r);
  }
  auto has_split = [](const std::vector<const TrialRecord*>& v) {
    bool even = false, odd = false;
    for (auto* r : v) (r->trial_id % 2 == 0 ? even : odd) = true;
    return even && odd;
  };
  const std::vector<const TrialRecord*>& pool = has_split(gated) ? gated : eligible;
  fit.cosamp_gate = (&pool == &gated) ? "conditions" : "bracket-only";
  if (!has_split(pool)) return;

  double c = 0.0, slack_sum = 0.0;
  int ntrain = 0;
  for (auto* r : pool)
    if (r->trial_id % 2 == 0) {
      c = std::max(c, r->err_cosamp / r->bracket_cosamp);
      ++ntrain;
    }
  int ntest = 0, covered = 0;
  for (auto* r : pool) {
    if (r->trial_id % 2 == 0) {
      slack_sum += c * r->bracket_cosamp - r->err_cosamp;
      continue;
    }
    ++ntest;
    if (r->err_cosamp <= c * r->bracket_cosamp * (1.0 + 1e-12)) ++covered;
  }
  fit.cosamp_fitted = true;
  fit.c_fit = c;
  fit.cosamp_train = ntrain;
  fit.cosamp_test = ntest;
  fit.cosamp_coverage = ntest > 0 ? static_cast<double>(covered) / ntest : 0.0;
  fit.cosamp_mean_slack = ntrain > 0 ? slack_sum / ntrain : 0.0;
}

void fit_bp(const std::vector<TrialRecord>& recs, double sqrt_s, FitReport& fit) {
  std::vector<const TrialRecord*> eligible, gated;
  for (const TrialRecord& r : recs) {
    if (!r.has_bpdn || !r.has_eps_total) continue;
    if (r.bp_tail_term + r.eps_total_bp <= 1e-12) continue;
    eligible.push_back(&r);
    if (r.cond_bp_ric && r.cond_bp_tail) gated.push_back(&r);
  }
  auto has_split = [](const std::vector<const TrialRecord*>& v) {
    bool even = false, odd = false;
    for (auto* r : v) (r->trial_id % 2 == 0 ? even : odd) = true;
    return even && odd;
  };
  const std::vector<const TrialRecord*>& pool = has_split(gated) ? gated : eligible;
  fit.bp_gate = (&pool == &gated) ? "conditions" : "bracket-only";
  if (!has_split(pool)) return;

  // One max-ratio constant applied to both bound terms (the theorem's
  // constants are unspecified; the joint ratio tests the bound's form).
  double c = 0.0, slack_sum = 0.0;
  int ntrain = 0;
  for (auto* r : pool)
    if (r->trial_id % 2 == 0) {
      c = std::max(c, r->err_bpdn / (r->bp_tail_term + r->eps_total_bp));
      ++ntrain;
    }
  int ntest = 0, covered = 0;
  for (auto* r : pool) {
    const double bound = (c / sqrt_s) * (r->bp_tail_term * sqrt_s) + c * r->eps_total_bp;
    if (r->trial_id % 2 == 0) {
      slack_sum += bound - r->err_bpdn;
      continue;
    }
    ++ntest;
    if (r->err_bpdn <= bound * (1.0 + 1e-12)) ++covered;
  }
  fit.bp_fitted = true;
  fit.c0_fit = c;
  fit.c1_fit = c;
  fit.bp_train = ntrain;
  fit.bp_test = ntest;
  fit.bp_coverage = ntest > 0 ? static_cast<double>(covered) / ntest : 0.0;
  fit.bp_mean_slack = ntrain > 0 ? slack_sum / ntrain : 0.0;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int workers) {
  if (cfg.eps_grid.empty() || cfg.noise_grid.empty())
    throw std::invalid_argument("run_experiment: grids must be nonempty");
  if (cfg.trials_per_cell < 1)
    throw std::invalid_argument("run_experiment: trials_per_cell must be >= 1");
  if (4 * cfg.s > cfg.d)
    throw std::invalid_argument("run_experiment: need 4*s <= d for the order-4s constants");
  if (workers < 1) workers = 1;

  struct Cell {
    double eps, noise;
  };
  std::vector<Cell> cells;
  for (double ep : cfg.eps_grid)
    for (double nl : cfg.noise_grid) cells.push_back({ep, nl});
  const uint64_t total = cells.size() * static_cast<uint64_t>(cfg.trials_per_cell);

  ExperimentResult out;
  out.records.resize(total);
  std::exception_ptr first_error;
  std::mutex err_mu;

  auto work = [&](int w) {
    try {
      for (uint64_t t = w; t < total; t += static_cast<uint64_t>(workers)) {
        const Cell& c = cells[t / cfg.trials_per_cell];
        out.records[t] = run_trial(cfg, t, c.eps, c.noise);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  fit_cosamp(out.records, out.fit);
  fit_bp(out.records, std::sqrt(static_cast<double>(cfg.s)), out.fit);
  return out;
}

std::string to_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "trial_id,seed,eps_target,noise_level,eps_sub_rel,eps_full_rel,abs_sub,abs_full,"
        "delta_s,delta_2s,delta_4s,ric_method,alpha_s,beta_s,cond_bp_ric,cond_bp_tail,"
        "cond_cs_ric,cond_cs_tail,err_cosamp,err_bpdn,bracket_cosamp,eps_total_bp,"
        "iters_cosamp,iters_bpdn,conv_cosamp,conv_bpdn\n";
  for (const TrialRecord& r : records) {
    os << r.trial_id << ',' << r.seed << ',' << format_double(r.eps_target) << ','
       << format_double(r.noise_level) << ',' << format_double(r.eps_sub_rel) << ','
       << format_double(r.eps_full_rel) << ',' << format_double(r.abs_sub) << ','
       << format_double(r.abs_full) << ',' << format_double(r.delta_s) << ','
       << format_double(r.delta_2s) << ',' << format_double(r.delta_4s) << ',' << r.ric_method
       << ',' << format_double(r.alpha_s) << ',' << format_double(r.beta_s) << ','
       << (r.cond_bp_ric ? 1 : 0) << ',' << (r.cond_bp_tail ? 1 : 0) << ','
       << (r.cond_cs_ric ? 1 : 0) << ',' << (r.cond_cs_tail ? 1 : 0) << ',';
    if (r.has_cosamp) os << format_double(r.err_cosamp);
    os << ',';
    if (r.has_bpdn) os << format_double(r.err_bpdn);
    os << ',';
    if (r.has_cosamp) os << format_double(r.bracket_cosamp);
    os << ',';
    if (r.has_eps_total) os << format_double(r.eps_total_bp);
    os << ',';
    if (r.has_cosamp) os << r.iters_cosamp;
    os << ',';
    if (r.has_bpdn) os << r.iters_bpdn;
    os << ',';
    if (r.has_cosamp) os << (r.conv_cosamp ? 1 : 0);
    os << ',';
    if (r.has_bpdn) os << (r.conv_bpdn ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

std::string fit_summary(const FitReport& fit) {
  std::ostringstream os;
  if (fit.exact_recovery_trials > 0)
    os << "exact-recovery trials (zero bracket): " << fit.exact_recovery_ok << "/"
       << fit.exact_recovery_trials << " with relative error <= 1e-6\n";
  if (fit.cosamp_fitted) {
    os << "cosamp: C_fit = " << format_double(fit.c_fit) << " (gate " << fit.cosamp_gate
       << ", train " << fit.cosamp_train << ", mean slack " << format_double(fit.cosamp_mean_slack)
       << "), held-out coverage " << format_double(fit.cosamp_coverage) << " over "
       << fit.cosamp_test << " trials\n";
  }
  if (fit.bp_fitted) {
    os << "bpdn: C0 = " << format_double(fit.c0_fit) << ", C1 = " << format_double(fit.c1_fit)
       << " (gate " << fit.bp_gate << ", train " << fit.bp_train << ", mean slack "
       << format_double(fit.bp_mean_slack) << "), held-out coverage "
       << format_double(fit.bp_coverage) << " over " << fit.bp_test << " trials\n";
  }
  if (!fit.cosamp_fitted && !fit.bp_fitted && fit.exact_recovery_trials == 0)
    os << "no trials eligible for fitting\n";
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_grid(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  cfg.run_cosamp = false;  // explicit in config
  bool algorithms_seen = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "kind") {
      if (val == "gaussian")
        cfg.kind = EnsembleKind::gaussian;
      else if (val == "bernoulli")
        cfg.kind = EnsembleKind::bernoulli;
      else
        throw std::runtime_error("config: unknown ensemble kind '" + val + "'");
    } else if (key == "m") {
      cfg.m = std::stoi(val);
    } else if (key == "d") {
      cfg.d = std::stoi(val);
    } else if (key == "s") {
      cfg.s = std::stoi(val);
    } else if (key == "tail_alpha") {
      cfg.tail_alpha = std::stod(val);
    } else if (key == "tail_beta") {
      cfg.tail_beta = std::stod(val);
    } else if (key == "eps_grid") {
      cfg.eps_grid = parse_grid(val);
    } else if (key == "noise_grid") {
      cfg.noise_grid = parse_grid(val);
    } else if (key == "trials_per_cell") {
      cfg.trials_per_cell = std::stoi(val);
    } else if (key == "algorithms") {
      algorithms_seen = true;
      cfg.run_cosamp = val.find("cosamp") != std::string::npos;
      cfg.run_bpdn = val.find("bpdn") != std::string::npos;
      if (!cfg.run_cosamp && !cfg.run_bpdn)
        throw std::runtime_error("config: algorithms must include cosamp and/or bpdn");
    } else if (key == "master_seed") {
      cfg.master_seed = std::stoull(val);
    } else if (key == "budget") {
      cfg.budget = std::stoull(val);
    } else if (key == "mc_samples") {
      cfg.mc_samples = std::stoull(val);
    } else if (key == "cosamp_max_iters") {
      cfg.cosamp_max_iters = std::stoi(val);
    } else if (key == "cosamp_residual_tol") {
      cfg.cosamp_residual_tol = std::stod(val);
    } else if (key == "cosamp_stagnation_tol") {
      cfg.cosamp_stagnation_tol = std::stod(val);
    } else if (key == "bpdn_max_iters") {
      cfg.bpdn_max_iters = std::stoi(val);
    } else if (key == "bpdn_tol") {
      cfg.bpdn_tol = std::stod(val);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  if (!algorithms_seen) cfg.run_cosamp = true;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  return parse_config(f);
}

}  // namespace cs
