#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "cs/bpdn.hpp"
#include "cs/cosamp.hpp"
#include "cs/ensembles.hpp"
#include "cs/harness.hpp"
#include "cs/io.hpp"
#include "cs/metrics.hpp"
#include "cs/rng.hpp"
#include "cs/theory.hpp"

namespace {

struct GenOpts {
  std::string kind = "gaussian";
  int m = 25;
  int d = 50;
  uint64_t seed = 0;
};

cs::EnsembleKind parse_kind(const std::string& k) {
  if (k == "gaussian") return cs::EnsembleKind::gaussian;
  if (k == "bernoulli") return cs::EnsembleKind::bernoulli;
  throw std::runtime_error("unknown ensemble kind: " + k);
}

void add_gen_options(CLI::App* cmd, GenOpts& g) {
  cmd->add_option("--kind", g.kind, "ensemble kind (gaussian|bernoulli)");
  cmd->add_option("--m", g.m, "rows");
  cmd->add_option("--d", g.d, "columns");
  cmd->add_option("--seed", g.seed, "generator seed");
}

const char* method_name(cs::RicMethod m) {
  return m == cs::RicMethod::exact ? "exact" : "monte-carlo lower bound";
}

cs::RicEstimate ric_auto(const cs::DenseMatrix& A, int s, uint64_t budget, uint64_t samples,
                         uint64_t seed) {
  if (cs::binomial(A.cols(), s) <= budget) return cs::ric_exact(A, s, budget);
  return cs::ric_monte_carlo(A, s, samples, seed);
}

int cmd_thresholds() {
  const double bp = cs::bp_dissimilarity_limit();
  const double csamp = cs::cosamp_dissimilarity_limit();
  std::printf("Admissible operator dissimilarity at delta = 0:\n");
  std::printf("  basis pursuit:  eps^(2s) < 2^(1/4) - 1 = %s  (about %.0f%%)\n",
              cs::format_double(bp).c_str(), 100.0 * bp);
  std::printf("  cosamp:         eps^(4s) <= sqrt(1.1) - 1 = %s  (about %.0f%%)\n",
              cs::format_double(csamp).c_str(), 100.0 * csamp);
  std::printf("Derivation: set the RIC to zero in each admissibility condition\n");
  std::printf("  sqrt(2)/(1+eps)^2 - 1 > 0   =>  eps < 2^(1/4) - 1\n");
  std::printf("  1.1/(1+eps)^2 - 1 >= 0      =>  eps <= sqrt(1.1) - 1\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed-sensing recovery toolkit: CoSaMP and basis pursuit denoising under "
               "mismatched encode/decode operators"};
  app.require_subcommand(1);

  // thresholds
  app.add_subcommand("thresholds", "print the operator-dissimilarity admissibility limits");

  // ric
  auto* ric = app.add_subcommand("ric", "restricted isometry and perturbation constants");
  std::string ric_matrix, ric_phi;
  GenOpts ric_gen;
  int ric_s = 2;
  uint64_t ric_budget = 200000, ric_samples = 300;
  double ric_pert_target = -1.0;
  uint64_t ric_pert_seed = 1;
  ric->add_option("--matrix", ric_matrix, "matrix fixture file (default: generate)");
  add_gen_options(ric, ric_gen);
  ric->add_option("--s", ric_s, "sparsity order");
  ric->add_option("--budget", ric_budget, "combinatorial budget for exact enumeration");
  ric->add_option("--mc-samples", ric_samples, "subsets sampled when over budget");
  ric->add_option("--phi", ric_phi, "decoder fixture file (enables perturbation constants)");
  ric->add_option("--pert-target", ric_pert_target,
                  "generate a decoder at this relative perturbation instead of --phi");
  ric->add_option("--pert-seed", ric_pert_seed, "seed for the generated decoder");

  // recover
  auto* rec = app.add_subcommand("recover", "run one recovery on a seeded instance");
  std::string rec_alg = "cosamp";
  GenOpts rec_gen;
  int rec_s = 3;
  double rec_noise = 0.0, rec_pert = 0.0, rec_alpha = 0.0, rec_beta = 0.0, rec_eps = -1.0;
  uint64_t rec_budget = 200000;
  rec->add_option("--algorithm", rec_alg, "cosamp or bpdn");
  add_gen_options(rec, rec_gen);
  rec->add_option("--s", rec_s, "sparsity level");
  rec->add_option("--noise", rec_noise, "additive noise norm ||e||_2");
  rec->add_option("--pert-target", rec_pert, "decoder perturbation eps^(s) target");
  rec->add_option("--tail-alpha", rec_alpha, "signal tail alpha_s target");
  rec->add_option("--tail-beta", rec_beta, "signal tail beta_s target");
  rec->add_option("--epsilon", rec_eps, "bpdn constraint radius (default: ||e||_2)");
  rec->add_option("--budget", rec_budget, "combinatorial budget");

  // check
  auto* chk = app.add_subcommand("check", "evaluate the recovery-theorem conditions");
  std::string chk_matrix, chk_phi, chk_x;
  int chk_s = 2;
  uint64_t chk_budget = 200000, chk_samples = 300, chk_seed = 0;
  chk->add_option("--matrix", chk_matrix, "encoder fixture file")->required();
  chk->add_option("--phi", chk_phi, "decoder fixture file")->required();
  chk->add_option("--x", chk_x, "signal fixture file (n x 1)")->required();
  chk->add_option("--s", chk_s, "sparsity level");
  chk->add_option("--budget", chk_budget, "combinatorial budget");
  chk->add_option("--mc-samples", chk_samples, "subsets sampled when over budget");
  chk->add_option("--mc-seed", chk_seed, "seed for sampled constants");

  // sweep
  auto* swp = app.add_subcommand("sweep", "run an experiment sweep from a config file");
  std::string swp_config, swp_out = "sweep.csv";
  int swp_workers = 1;
  swp->add_option("--config", swp_config, "experiment config file")->required();
  swp->add_option("--out", swp_out, "output CSV path");
  swp->add_option("--workers", swp_workers, "worker threads (output is identical for any count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("thresholds")) return cmd_thresholds();

    if (app.got_subcommand("ric")) {
      cs::DenseMatrix A = ric_matrix.empty()
                              ? cs::gen_matrix({parse_kind(ric_gen.kind), ric_gen.m, ric_gen.d,
                                                ric_gen.seed})
                              : cs::read_matrix_file(ric_matrix);
      const cs::RicEstimate d_s = ric_auto(A, ric_s, ric_budget, ric_samples,
                                           cs::mix_seed(ric_gen.seed, 14));
      std::printf("delta_%d = %s  (%s, %llu subsets)\n", ric_s,
                  cs::format_double(d_s.delta).c_str(), method_name(d_s.method),
                  static_cast<unsigned long long>(d_s.subsets_examined));
      if (cs::binomial(A.cols(), ric_s) <= ric_budget)
        std::printf("||A||^(%d) = %s\n", ric_s,
                    cs::format_double(cs::submatrix_norm_max(A, ric_s, ric_budget)).c_str());
      std::printf("||A||_2 = %s\n", cs::format_double(cs::spectral_norm(A)).c_str());

      bool have_phi = !ric_phi.empty() || ric_pert_target >= 0.0;
      if (have_phi) {
        cs::DenseMatrix Phi =
            !ric_phi.empty()
                ? cs::read_matrix_file(ric_phi)
                : cs::gen_perturbed_decoder(A, {ric_pert_target, ric_s, ric_pert_seed},
                                            ric_budget);
        const cs::PerturbationConstants pc =
            d_s.delta < 1.0
                ? cs::perturbation_constants(A, Phi, ric_s, d_s, ric_budget)
                : cs::perturbation_norms(A, Phi, ric_s, ric_budget);
        std::printf("eps_A = %s   eps^(%d)_A = %s\n", cs::format_double(pc.eps_full).c_str(),
                    ric_s, cs::format_double(pc.eps_sub).c_str());
        std::printf("||A-Phi||_2 = %s   ||A-Phi||^(%d) = %s\n",
                    cs::format_double(pc.abs_full).c_str(), ric_s,
                    cs::format_double(pc.abs_sub).c_str());
        if (d_s.delta < 1.0)
          std::printf("kappa^(%d)_A = %s   gamma_A = %s\n", ric_s,
                      cs::format_double(pc.kappa).c_str(), cs::format_double(pc.gamma).c_str());
        else
          std::printf("kappa, gamma undefined: delta_%d >= 1\n", ric_s);
      }
      return 0;
    }

    if (app.got_subcommand("recover")) {
      const cs::EnsembleKind kind = parse_kind(rec_gen.kind);
      const uint64_t seed = rec_gen.seed;
      const cs::DenseMatrix A = cs::gen_matrix({kind, rec_gen.m, rec_gen.d, cs::mix_seed(seed, 10)});
      const cs::SignalVector x =
          cs::gen_signal({rec_gen.d, rec_s, rec_alpha, rec_beta, cs::mix_seed(seed, 11)});
      const cs::SignalVector b = cs::matvec(A, x);
      const cs::SignalVector e = cs::gen_noise(rec_gen.m, rec_noise, cs::mix_seed(seed, 12));
      cs::SignalVector y(b.size());
      for (size_t i = 0; i < b.size(); ++i) y[i] = b[i] + e[i];
      const cs::DenseMatrix Phi =
          cs::gen_perturbed_decoder(A, {rec_pert, rec_s, cs::mix_seed(seed, 13)}, rec_budget);

      if (rec_alg == "cosamp") {
        cs::CosampConfig cc;
        cc.s = rec_s;
        const cs::RecoveryResult r = cs::cosamp_recover(Phi, y, cc);
        const double err = cs::norm2(cs::subtract(r.estimate, x));
        std::printf("cosamp: error ||x#-x||_2 = %s (relative %s)\n",
                    cs::format_double(err).c_str(),
                    cs::format_double(err / cs::norm2(x)).c_str());
        std::printf("iterations %d, final residual %s, converged %d\n", r.iterations,
                    cs::format_double(r.residual_history.back()).c_str(), r.converged ? 1 : 0);
      } else if (rec_alg == "bpdn") {
        cs::BpdnConfig bc;
        bc.epsilon = rec_eps >= 0.0 ? rec_eps : rec_noise;
        const cs::BpdnResult r = cs::bpdn_solve(Phi, y, bc);
        const double err = cs::norm2(cs::subtract(r.solution, x));
        std::printf("bpdn: error ||z*-x||_2 = %s (relative %s)\n",
                    cs::format_double(err).c_str(),
                    cs::format_double(err / cs::norm2(x)).c_str());
        std::printf("objective ||z*||_1 = %s, constraint slack %s, iterations %d, converged %d\n",
                    cs::format_double(r.objective).c_str(),
                    cs::format_double(r.constraint_slack).c_str(), r.iterations,
                    r.converged ? 1 : 0);
      } else {
        throw std::runtime_error("unknown algorithm: " + rec_alg);
      }
      return 0;
    }

    if (app.got_subcommand("check")) {
      const cs::DenseMatrix A = cs::read_matrix_file(chk_matrix);
      const cs::DenseMatrix Phi = cs::read_matrix_file(chk_phi);
      const cs::SignalVector x = cs::read_vector_file(chk_x);
      const int s = chk_s;
      const cs::TailMetrics tm = cs::tail_metrics(x, s);
      const cs::RicEstimate d_s = ric_auto(A, s, chk_budget, chk_samples, cs::mix_seed(chk_seed, 14));
      const cs::RicEstimate d_2s =
          ric_auto(A, 2 * s, chk_budget, chk_samples, cs::mix_seed(chk_seed, 15));
      const cs::RicEstimate d_4s =
          ric_auto(A, 4 * s, chk_budget, chk_samples, cs::mix_seed(chk_seed, 16));

      cs::PerturbationConstants pc_s = cs::perturbation_norms(A, Phi, s, chk_budget);
      pc_s.kappa = d_s.delta < 1.0 ? cs::kappa_of(d_s.delta)
                                   : std::numeric_limits<double>::infinity();
      auto eps_at = [&](int order, uint64_t stream) {
        if (cs::binomial(A.cols(), order) <= chk_budget) {
          return cs::submatrix_norm_max(cs::subtract(A, Phi), order, chk_budget) /
                 cs::submatrix_norm_max(A, order, chk_budget);
        }
        auto [na, ne] = cs::sampled_perturbation_norms(A, Phi, order, chk_samples,
                                                       cs::mix_seed(chk_seed, stream));
        return ne / na;
      };
      cs::PerturbationConstants pc_2s;
      pc_2s.eps_sub = eps_at(2 * s, 17);
      cs::PerturbationConstants pc_4s;
      pc_4s.eps_sub = eps_at(4 * s, 18);

      const cs::ConditionReport bp = cs::check_bp_conditions(d_2s, pc_2s, pc_s, tm);
      const cs::ConditionReport cm = cs::check_cosamp_conditions(d_4s, pc_4s, pc_s, tm);
      std::printf("alpha_%d = %s, beta_%d = %s\n", s, cs::format_double(tm.alpha).c_str(), s,
                  cs::format_double(tm.beta).c_str());
      std::printf("delta_%d = %s (%s), delta_%d = %s (%s), delta_%d = %s (%s)\n", s,
                  cs::format_double(d_s.delta).c_str(), method_name(d_s.method), 2 * s,
                  cs::format_double(d_2s.delta).c_str(), method_name(d_2s.method), 4 * s,
                  cs::format_double(d_4s.delta).c_str(), method_name(d_4s.method));
      std::printf("bp ric condition:      %s (margin %s)\n", bp.bp_ric_ok ? "holds" : "fails",
                  cs::format_double(bp.bp_ric_margin).c_str());
      std::printf("bp tail condition:     %s (margin %s)\n", bp.bp_tail_ok ? "holds" : "fails",
                  cs::format_double(bp.bp_tail_margin).c_str());
      std::printf("cosamp ric condition:  %s (margin %s)\n", cm.cosamp_ric_ok ? "holds" : "fails",
                  cs::format_double(cm.cosamp_ric_margin).c_str());
      std::printf("cosamp tail condition: %s (margin %s)\n", cm.cosamp_tail_ok ? "holds" : "fails",
                  cs::format_double(cm.cosamp_tail_margin).c_str());
      return 0;
    }

    if (app.got_subcommand("sweep")) {
      const cs::ExperimentConfig cfg = cs::parse_config_file(swp_config);
      const cs::ExperimentResult res = cs::run_experiment(cfg, swp_workers);
      std::ofstream out(swp_out);
      if (!out) throw std::runtime_error("cannot open for writing: " + swp_out);
      out << cs::to_csv(res.records);
      std::printf("%llu trials -> %s\n", static_cast<unsigned long long>(res.records.size()),
                  swp_out.c_str());
      std::fputs(cs::fit_summary(res.fit).c_str(), stdout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
