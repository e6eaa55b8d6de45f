#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "recoup/experiments.hpp"
#include "recoup/intertwiner.hpp"
#include "recoup/recoupling.hpp"
#include "recoup/repsym.hpp"
#include "recoup/schurweyl.hpp"

using namespace recoup;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int threads = 1;

  RunOptions run() const { return {seed, threads}; }
};

int emit(const ExperimentReport& report, const Globals& g) {
  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) throw std::runtime_error("cannot write " + g.out);
  }
  std::ostream& os = g.out.empty() ? std::cout : file;
  if (g.format == "csv") {
    report.write_csv(os);
  } else {
    report.write_jsonl(os);
  }
  for (const auto& gate : report.gates()) {
    if (!gate.passed) {
      std::cerr << (gate.diagnostic ? "diagnostic " : "FAILED ") << gate.name << ": " << gate.detail
                << '\n';
    }
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recoupling coefficients of the symmetric group and tripartite spectra"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for sampled experiments");
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::optional<ExperimentReport> report;

  // char
  std::string lambda_text, cycle_text;
  auto* ch = app.add_subcommand("char", "Character value chi_lambda at a cycle type");
  ch->add_option("--lambda", lambda_text, "Partition, e.g. 3,1")->required();
  ch->add_option("--type,--cycle-type", cycle_text, "Cycle type, e.g. 3 or 2,1 (padded with 1s)")->required();
  ch->callback([&] {
    const auto lambda = Partition::parse(lambda_text);
    auto cycles = Partition::parse(cycle_text);
    if (cycles.k() < lambda.k()) {
      std::vector<int> rows(cycles.rows().begin(), cycles.rows().end());
      rows.resize(rows.size() + static_cast<std::size_t>(lambda.k() - cycles.k()), 1);
      cycles = Partition(std::move(rows));
    }
    report.emplace("char", json{{"lambda", to_json(lambda)}, {"cycle_type", to_json(cycles)}});
    report->add_record({{"character", character(lambda, cycles).str()},
                        {"dimension", sk_dimension(lambda).exact.str()}});
  });

  // kron
  std::string alpha_text, beta_text;
  auto* kr = app.add_subcommand("kron", "Kronecker coefficient g(alpha, beta, lambda)");
  kr->add_option("--alpha", alpha_text)->required();
  kr->add_option("--beta", beta_text)->required();
  kr->add_option("--lambda", lambda_text)->required();
  kr->callback([&] {
    const auto a = Partition::parse(alpha_text), b = Partition::parse(beta_text),
               l = Partition::parse(lambda_text);
    report.emplace("kron", json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"lambda", to_json(l)}});
    report->add_record({{"g", kronecker_coefficient(a, b, l).str()}});
  });

  // cg
  auto* cg = app.add_subcommand("cg", "Orthonormal intertwiners [lambda] -> [alpha] (x) [beta]");
  cg->add_option("--alpha", alpha_text)->required();
  cg->add_option("--beta", beta_text)->required();
  cg->add_option("--lambda", lambda_text)->required();
  cg->callback([&] {
    const auto a = Partition::parse(alpha_text), b = Partition::parse(beta_text),
               l = Partition::parse(lambda_text);
    const auto basis = cg_isometries(a, b, l);
    report.emplace("cg", json{{"alpha", to_json(a)}, {"beta", to_json(b)}, {"lambda", to_json(l)}});
    const double residual = equivariance_residual(basis, all_permutations(l.k()));
    for (int i = 0; i < basis.multiplicity(); ++i) {
      const auto& phi = basis.maps[static_cast<std::size_t>(i)];
      json rec{{"index", i}, {"rows", phi.rows()}, {"cols", phi.cols()}};
      json m = json::array();
      for (Eigen::Index r = 0; r < phi.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < phi.cols(); ++c) row.push_back(phi(r, c));
        m.push_back(std::move(row));
      }
      rec["matrix"] = std::move(m);
      report->add_record(std::move(rec));
    }
    report->set_summary("multiplicity", basis.multiplicity());
    report->set_summary("equivariance_residual", residual);
    report->add_gate("equivariance", residual <= 1e-9, "max residual over S_k");
  });

  // recoupling
  std::string labels_text;
  auto* rc = app.add_subcommand("recoupling", "Recoupling coefficient for six labels");
  rc->add_option("--labels", labels_text, "alpha;beta;gamma;mu;nu;lambda")->required();
  rc->callback([&] {
    const auto labels = parse_labels(labels_text);
    const auto t = recoupling_tensor(labels);
    report.emplace("recoupling", json{{"labels", labels.to_string()}});
    report->add_record(to_json(t));
    const auto swap = column_swap_check(labels);
    const auto swap_ag = column_swap_check_ag(labels);
    report->set_summary("hs", t.hs);
    report->set_summary("swap_residual", swap.relative_residual());
    report->set_summary("swap_ag_residual", swap_ag.relative_residual());
    report->add_gate("column_swap", swap.relative_residual() <= 1e-8, "relative residual");
    report->add_gate("column_swap_alpha_gamma", swap_ag.relative_residual() <= 1e-8,
                     "relative residual");
  });

  // scan-recoupling
  int k = 3;
  int max_rows = 0;
  auto* sr = app.add_subcommand("scan-recoupling", "Unitarity, sum rule and swap relations at fixed k");
  sr->add_option("--k", k)->required()->check(CLI::Range(1, 8));
  sr->add_option("--max-rows", max_rows, "Row limit for alpha, beta, gamma, lambda (default k)");
  sr->callback([&] { report.emplace(cmd_scan_recoupling(k, max_rows > 0 ? max_rows : k, g.run())); });

  // spectrum-estimation
  std::string rho_file;
  int k_max = 30;
  double delta = 0.3;
  auto* se = app.add_subcommand("spectrum-estimation", "Projected traces tr(P_lambda rho^k), k = 1..k-max");
  se->add_option("--rho", rho_file)->required()->check(CLI::ExistingFile);
  se->add_option("--k-max", k_max)->check(CLI::Range(1, 30));
  se->add_option("--delta", delta);
  se->callback([&] {
    report.emplace(cmd_spectrum_estimation(read_state_file(rho_file), k_max, delta, g.run()));
  });

  // overlap
  auto* ov = app.add_subcommand("overlap", "tr(P~Q~ rho^k), tr(P~ rho^k) and tr(Q~ rho^k)");
  ov->add_option("--rho", rho_file)->required()->check(CLI::ExistingFile);
  ov->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  ov->add_option("--labels", labels_text, "alpha;beta;gamma;mu;nu;lambda")->required();
  ov->callback([&] {
    const auto rho = read_state_file(rho_file);
    const auto labels = parse_labels(labels_text);
    if (labels.k() != k) throw std::invalid_argument("labels must partition k");
    if (rho.dims().size() != 3) throw std::invalid_argument("overlap needs a tripartite state");
    const TripartiteDims dims{rho.dims()[0], rho.dims()[1], rho.dims()[2]};
    const TripartiteSector sector(labels.alpha, labels.beta, labels.gamma, dims, k);
    const auto traces = sector.empty()
                            ? OverlapTraces{}
                            : overlap_trace(sector, labels.mu, labels.nu, labels.lambda,
                                            sector.compress(rho.matrix()));
    const auto norms = hs_norm_via_schurweyl(sector, labels.mu, labels.nu, labels.lambda);
    report.emplace("overlap", json{{"labels", labels.to_string()}, {"k", k}, {"rho", rho_file}});
    report->add_record({{"overlap_re", traces.overlap.real()},
                        {"overlap_im", traces.overlap.imag()},
                        {"trace_p", traces.trace_p},
                        {"trace_q", traces.trace_q},
                        {"op_norm", norms.op_norm},
                        {"hs", norms.hs}});
    const double cs = std::sqrt(std::max(0.0, traces.trace_p)) * std::sqrt(std::max(0.0, traces.trace_q));
    report->add_gate("cauchy_schwarz", std::abs(traces.overlap) <= cs + 1e-9,
                     "|tr(P~Q~rho)| <= sqrt(tP tQ)");
    report->add_gate("operator_norm", std::abs(traces.overlap) <= norms.op_norm + 1e-9,
                     "|tr(P~Q~rho)| <= ||P~Q~||");
  });

  // thm1-certificate
  auto* th = app.add_subcommand("thm1-certificate", "Exact overlap chain on the delta-ball tuples");
  th->add_option("--rho", rho_file)->required()->check(CLI::ExistingFile);
  th->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  th->add_option("--delta", delta)->required();
  th->callback([&] { report.emplace(cmd_thm1_certificate(read_state_file(rho_file), k, delta, g.run())); });

  // skew-union-fuzz
  int n = 10000;
  auto* su = app.add_subcommand("skew-union-fuzz", "Random projector pairs against the overlap inequality");
  su->add_option("--n", n)->check(CLI::PositiveNumber);
  su->callback([&] { report.emplace(cmd_skew_union_fuzz(n, g.run())); });

  // dimension-ratio
  std::vector<int> ks{250, 500, 1000, 2000, 4000, 8000, 16000};
  auto* dr = app.add_subcommand("dimension-ratio", "Log dimension ratio against the entropy gap");
  dr->add_option("--rho", rho_file)->required()->check(CLI::ExistingFile);
  dr->add_option("--k", ks, "List of k values")->delimiter(',');
  dr->callback([&] { report.emplace(cmd_dimension_ratio(read_state_file(rho_file), ks, g.run())); });

  // converse-probe
  std::string spectra_file;
  int k_min = 2;
  int k_hi = 4;
  int samples = 8;
  auto* cp = app.add_subcommand("converse-probe", "Recoupling norms along rounded target spectra");
  cp->add_option("--spectra", spectra_file)->required()->check(CLI::ExistingFile);
  cp->add_option("--k-min", k_min)->check(CLI::PositiveNumber);
  cp->add_option("--k-max", k_hi)->check(CLI::PositiveNumber);
  cp->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  cp->callback([&] {
    report.emplace(cmd_converse_probe(read_spectra_file(spectra_file), k_min, k_hi, samples, g.run()));
  });

  // ssa-scan
  int ssa_n = 1000;
  auto* ss = app.add_subcommand("ssa-scan", "Entropy inequalities on random 2x2x2 states");
  ss->add_option("--n", ssa_n)->check(CLI::PositiveNumber);
  ss->callback([&] { report.emplace(cmd_ssa_scan(ssa_n, g.run())); });

  // state
  bool echo = false;
  auto* st = app.add_subcommand("state", "Validate a state file and print residuals and spectra");
  st->add_option("--rho", rho_file)->required()->check(CLI::ExistingFile);
  st->add_flag("--echo", echo, "Also print the parsed state");
  st->callback([&] {
    const auto rho = read_state_file(rho_file);
    report.emplace("state", json{{"rho", rho_file}});
    const auto& r = rho.residuals();
    json rec{{"dims", rho.dims()},
             {"hermiticity_residual", r.hermiticity},
             {"min_eigenvalue", r.min_eigenvalue},
             {"trace_error", r.trace_error},
             {"entropy", von_neumann_entropy(rho.matrix())}};
    if (rho.dims().size() == 3) {
      const auto t = spectra_tuple(rho);
      rec["spectra"] = to_json(SpectraFile{{rho.dims()[0], rho.dims()[1], rho.dims()[2]}, t});
      rec["ssa_gap"] = ssa_gap(rho);
      rec["weak_mono_gap"] = weak_mono_gap(rho);
    }
    if (echo) rec["state"] = to_json(rho);
    report->add_record(std::move(rec));
    report->add_gate("valid", true, "state passed validation");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return emit(*report, g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
