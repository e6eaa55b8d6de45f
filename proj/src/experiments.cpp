#include "recoup/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "recoup/intertwiner.hpp"
#include "recoup/recoupling.hpp"
#include "recoup/repsym.hpp"
#include "recoup/schurweyl.hpp"

namespace recoup {

ExperimentReport::ExperimentReport(std::string experiment, json parameters)
    : experiment_(std::move(experiment)), parameters_(std::move(parameters)) {}

void ExperimentReport::add_record(json record) { records_.push_back(std::move(record)); }

void ExperimentReport::set_summary(const std::string& key, json value) {
  summary_[key] = std::move(value);
}

void ExperimentReport::add_gate(std::string name, bool passed, std::string detail) {
  gates_.push_back({std::move(name), passed, std::move(detail), false});
}

void ExperimentReport::add_diagnostic(std::string name, bool passed, std::string detail) {
  gates_.push_back({std::move(name), passed, std::move(detail), true});
}

bool ExperimentReport::passed() const {
  for (const auto& g : gates_) {
    if (!g.diagnostic && !g.passed) return false;
  }
  return true;
}

const Gate* ExperimentReport::find_gate(const std::string& name) const {
  for (const auto& g : gates_) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

void ExperimentReport::write_jsonl(std::ostream& out) const {
  for (const auto& r : records_) {
    json line{{"type", "record"}, {"experiment", experiment_}};
    line["data"] = r;
    out << line.dump() << '\n';
  }
  json gates = json::array();
  for (const auto& g : gates_) {
    gates.push_back(
        {{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}, {"diagnostic", g.diagnostic}});
  }
  json summary{{"type", "summary"},           {"schema_version", kReportSchemaVersion},
               {"experiment", experiment_},    {"parameters", parameters_},
               {"summary", summary_},          {"gates", gates},
               {"passed", passed()},           {"record_count", records_.size()}};
  out << summary.dump() << '\n';
}

namespace {

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

}  // namespace

void ExperimentReport::write_csv(std::ostream& out) const {
  std::set<std::string> keys;
  for (const auto& r : records_) {
    for (const auto& [k, v] : r.items()) keys.insert(k);
  }
  bool first = true;
  for (const auto& k : keys) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  for (const auto& r : records_) {
    first = true;
    for (const auto& k : keys) {
      out << (first ? "" : ",");
      if (r.contains(k)) out << csv_cell(r.at(k));
      first = false;
    }
    out << '\n';
  }
  out << "# schema_version=" << kReportSchemaVersion << " experiment=" << experiment_ << '\n';
  out << "# parameters=" << parameters_.dump() << '\n';
  for (const auto& [k, v] : summary_.items()) out << "# " << k << '=' << v.dump() << '\n';
  for (const auto& g : gates_) {
    out << "# " << (g.diagnostic ? "diagnostic " : "gate ") << g.name << '='
        << (g.passed ? "pass" : "fail") << " (" << g.detail << ")\n";
  }
  out << "# passed=" << (passed() ? "true" : "false") << '\n';
}

std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

std::vector<double> normalized(std::span<const double> r) {
  std::vector<double> out(r.begin(), r.end());
  double sum = 0.0;
  for (double& x : out) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (sum <= 0.0) throw std::invalid_argument("spectrum has zero mass");
  for (double& x : out) x /= sum;
  return out;
}

Partition rounded(std::span<const double> r, int k) { return round_spectrum(normalized(r), k); }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

json labels_json(const SixLabels& s) {
  return {{"alpha", to_json(s.alpha)}, {"beta", to_json(s.beta)},   {"gamma", to_json(s.gamma)},
          {"mu", to_json(s.mu)},       {"nu", to_json(s.nu)},       {"lambda", to_json(s.lambda)}};
}

TripartiteDims tripartite_dims(const DensityMatrix& rho) {
  if (rho.dims().size() != 3) throw std::invalid_argument("a tripartite state is required");
  return {rho.dims()[0], rho.dims()[1], rho.dims()[2]};
}

void require_dense_regime(TripartiteDims dims, int k) {
  double n = 1.0;
  for (int i = 0; i < k; ++i) n *= dims.total();
  if (n > static_cast<double>(kDenseProjectorCap)) {
    throw ResourceError("(abc)^k = " + fmt(n) + " exceeds the dense cap " +
                        std::to_string(kDenseProjectorCap));
  }
}

}  // namespace

std::vector<Partition> ball_labels(std::span<const double> r, int k, int max_rows, double delta) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(k, max_rows)) {
    if (l1_distance(p, r) <= delta + 1e-12) out.push_back(std::move(p));
  }
  return out;
}

ExperimentReport cmd_thm1_certificate(const DensityMatrix& rho, int k, double delta,
                                      const RunOptions& opts) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const TripartiteDims dims = tripartite_dims(rho);
  require_dense_regime(dims, k);
  ExperimentReport report("thm1-certificate",
                          {{"k", k}, {"delta", delta}, {"dims", rho.dims()}, {"seed", opts.seed}});
  const SpectraTuple spec = spectra_tuple(rho);
  const int a = dims.a, b = dims.b, c = dims.c;
  const auto alphas = ball_labels(spec.r_a, k, a, delta);
  const auto betas = ball_labels(spec.r_b, k, b, delta);
  const auto gammas = ball_labels(spec.r_c, k, c, delta);
  const auto mus = ball_labels(spec.r_ab, k, a * b, delta);
  const auto nus = ball_labels(spec.r_bc, k, b * c, delta);
  const auto lambdas = ball_labels(spec.r_abc, k, a * b * c, delta);

  struct SectorResult {
    std::vector<json> records;
    double trace_p = 0.0;
    double trace_q = 0.0;
    cplx overlap{0.0, 0.0};
    std::vector<double> hs;
  };
  const std::size_t nb = betas.size(), ng = gammas.size();
  const std::size_t sectors = alphas.size() * nb * ng;
  const std::function<SectorResult(std::size_t)> run = [&](std::size_t idx) {
    const Partition& alpha = alphas[idx / (nb * ng)];
    const Partition& beta = betas[idx / ng % nb];
    const Partition& gamma = gammas[idx % ng];
    SectorResult res;
    const TripartiteSector sector(alpha, beta, gamma, dims, k);
    ComplexMatrix m;
    if (!sector.empty()) m = sector.compress(rho.matrix());
    // tr(X M) for real X and complex M
    auto trace_with = [&](const RealMatrix& x, const ComplexMatrix& y) {
      return (x.transpose().cast<cplx>().cwiseProduct(y)).sum();
    };
    for (const auto& lambda : lambdas) {
      if (sector.empty()) break;
      const RealMatrix& pl = sector.projector_abc(lambda);
      for (const auto& mu : mus) {
        res.trace_q += trace_with(RealMatrix(pl * sector.projector_ab(mu)), m).real();
      }
      for (const auto& nu : nus) {
        const RealMatrix p = pl * sector.projector_bc(nu);
        res.trace_p += trace_with(p, m).real();
        const ComplexMatrix mp = m * p.cast<cplx>();
        for (const auto& mu : mus) {
          // tr(P_lambda P_nu P_mu M) = tr(P_mu (M P_lambda P_nu))
          const cplx ov = trace_with(sector.projector_ab(mu), mp);
          res.overlap += ov;
          const SixLabels labels{alpha, beta, gamma, mu, nu, lambda};
          const double hs = recoupling_tensor(labels).hs;
          res.hs.push_back(hs);
          json rec = labels_json(labels);
          rec["hs"] = hs;
          rec["overlap_re"] = ov.real();
          rec["overlap_im"] = ov.imag();
          res.records.push_back(std::move(rec));
        }
      }
    }
    if (sector.empty()) {
      // Zero sector: the tuples still count toward the hs aggregate.
      for (const auto& lambda : lambdas)
        for (const auto& nu : nus)
          for (const auto& mu : mus) {
            const SixLabels labels{alpha, beta, gamma, mu, nu, lambda};
            const double hs = recoupling_tensor(labels).hs;
            res.hs.push_back(hs);
            json rec = labels_json(labels);
            rec["hs"] = hs;
            rec["overlap_re"] = 0.0;
            rec["overlap_im"] = 0.0;
            res.records.push_back(std::move(rec));
          }
    }
    return res;
  };
  const auto results = parallel_map<SectorResult>(sectors, opts.threads, run);

  double trace_p = 0.0, trace_q = 0.0;
  cplx overlap{0.0, 0.0};
  std::vector<double> hs_terms;
  for (const auto& r : results) {
    trace_p += r.trace_p;
    trace_q += r.trace_q;
    overlap += r.overlap;
    hs_terms.insert(hs_terms.end(), r.hs.begin(), r.hs.end());
    for (const auto& rec : r.records) report.add_record(rec);
  }
  const double hs_sum = pairwise_sum(hs_terms);
  const double overlap_abs = std::abs(overlap);
  const double skew_rhs = trace_p - std::sqrt(std::max(0.0, 1.0 - trace_q));
  constexpr double slack = 1e-9;

  report.set_summary("trace_p", trace_p);
  report.set_summary("trace_q", trace_q);
  report.set_summary("overlap_abs", overlap_abs);
  report.set_summary("overlap_re", overlap.real());
  report.set_summary("overlap_im", overlap.imag());
  report.set_summary("hs_sum", hs_sum);
  report.set_summary("skew_union_rhs", skew_rhs);
  report.set_summary("tuple_count", hs_terms.size());
  report.set_summary("ball_sizes", {alphas.size(), betas.size(), gammas.size(), mus.size(),
                                    nus.size(), lambdas.size()});
  report.add_gate("hs_sum_bounds_overlap", hs_sum >= overlap_abs - slack,
                  fmt(hs_sum) + " >= " + fmt(overlap_abs));
  report.add_gate("overlap_bounds_skew_union", overlap_abs >= skew_rhs - slack,
                  fmt(overlap_abs) + " >= " + fmt(skew_rhs));
  report.add_gate("hs_sum_bounds_skew_union", hs_sum >= skew_rhs - slack,
                  fmt(hs_sum) + " >= " + fmt(skew_rhs));
  return report;
}

namespace {

ComplexMatrix random_projector(int d, int rank, std::mt19937_64& rng) {
  if (rank == 0) return ComplexMatrix::Zero(d, d);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      g(i, j) = cplx(re, normal(rng));
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, rank);
  return q * q.adjoint();
}

struct SkewTrial {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return lhs - rhs; }
};

SkewTrial skew_union_trial(const ComplexMatrix& p, const ComplexMatrix& q,
                           const ComplexMatrix& sigma) {
  const Eigen::Index d = p.rows();
  const ComplexMatrix q_bar = ComplexMatrix::Identity(d, d) - q;
  SkewTrial t;
  t.lhs = std::abs((p * q * sigma).trace());
  t.rhs = (p * sigma).trace().real() - std::sqrt(std::max(0.0, (q_bar * sigma).trace().real()));
  return t;
}

}  // namespace

ExperimentReport cmd_skew_union_fuzz(int n, const RunOptions& opts) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  ExperimentReport report("skew-union-fuzz", {{"n", n}, {"seed", opts.seed}});
  constexpr double slack = -1e-9;

  // Fixed probes: P = Q = 1 and Q = 0 on a seeded state.
  {
    auto rng = item_rng(opts.seed, std::numeric_limits<std::uint64_t>::max());
    const int d = 4;
    const ComplexMatrix sigma = sample_hs_random({d}, rng).matrix();
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const auto both = skew_union_trial(id, id, sigma);
    const auto zero_q = skew_union_trial(id, ComplexMatrix::Zero(d, d), sigma);
    report.add_record({{"trial", "identity"}, {"dim", d}, {"lhs", both.lhs}, {"rhs", both.rhs},
                       {"slack", both.slack()}});
    report.add_record({{"trial", "zero_q"}, {"dim", d}, {"lhs", zero_q.lhs}, {"rhs", zero_q.rhs},
                       {"slack", zero_q.slack()}});
    report.add_gate("identity_probe", std::abs(both.lhs - 1.0) < 1e-12 && std::abs(both.rhs - 1.0) < 1e-12,
                    "lhs " + fmt(both.lhs) + ", rhs " + fmt(both.rhs));
    report.add_gate("zero_q_probe", zero_q.slack() >= slack, "slack " + fmt(zero_q.slack()));
  }

  struct Row {
    int dim, rank_p, rank_q;
    SkewTrial t;
  };
  const std::function<Row(std::size_t)> run = [&](std::size_t i) {
    auto rng = item_rng(opts.seed, i);
    std::uniform_int_distribution<int> dim_dist(1, 16);
    const int d = dim_dist(rng);
    std::uniform_int_distribution<int> rank_dist(0, d);
    const int rp = rank_dist(rng);
    const int rq = rank_dist(rng);
    const ComplexMatrix p = random_projector(d, rp, rng);
    const ComplexMatrix q = random_projector(d, rq, rng);
    const ComplexMatrix sigma = sample_hs_random({d}, rng).matrix();
    return Row{d, rp, rq, skew_union_trial(p, q, sigma)};
  };
  const auto rows = parallel_map<Row>(static_cast<std::size_t>(n), opts.threads, run);
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double s = r.t.slack();
    min_slack = std::min(min_slack, s);
    if (s < slack) ++violations;
    report.add_record({{"trial", i}, {"dim", r.dim}, {"rank_p", r.rank_p}, {"rank_q", r.rank_q},
                       {"lhs", r.t.lhs}, {"rhs", r.t.rhs}, {"slack", s}});
  }
  report.set_summary("trials", n);
  report.set_summary("violations", violations);
  report.set_summary("min_slack", min_slack);
  report.add_gate("no_violations", violations == 0,
                  std::to_string(violations) + " violations, min slack " + fmt(min_slack));
  return report;
}

ExperimentReport cmd_spectrum_estimation(const DensityMatrix& rho, int k_max, double delta,
                                         const RunOptions& opts) {
  const int d = rho.total_dim();
  if (d > 4) throw std::invalid_argument("spectrum estimation supports d <= 4");
  if (k_max < 1 || k_max > 30) throw std::invalid_argument("k_max must be in 1..30");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  ExperimentReport report("spectrum-estimation",
                          {{"k_max", k_max}, {"delta", delta}, {"d", d}, {"seed", opts.seed}});
  const std::vector<double> r = normalized(clamped_spectrum(rho.matrix()));
  const std::function<std::vector<ProjectedTrace>(std::size_t)> run = [&](std::size_t i) {
    return projected_traces(r, static_cast<int>(i) + 1);
  };
  const auto by_k = parallel_map<std::vector<ProjectedTrace>>(static_cast<std::size_t>(k_max),
                                                              opts.threads, run);
  const double poly_degree = static_cast<double>(d * (d + 1));
  std::vector<double> tail(static_cast<std::size_t>(k_max) + 1, 0.0);
  double worst_completeness = 0.0;
  bool poly_ok = true;
  for (int k = 1; k <= k_max; ++k) {
    double total = 0.0;
    for (const auto& row : by_k[static_cast<std::size_t>(k - 1)]) {
      const double dist = l1_distance(row.lambda, r);
      const double exp_bound = std::exp(-k * dist * dist / 2.0);
      const double poly_bound = std::pow(k + 1.0, poly_degree) * exp_bound;
      total += row.trace;
      if (dist > delta) tail[static_cast<std::size_t>(k)] += row.trace;
      if (row.trace > poly_bound) poly_ok = false;
      report.add_record({{"k", k},
                         {"lambda", to_json(row.lambda)},
                         {"trace", row.trace},
                         {"l1_distance", dist},
                         {"exp_bound", exp_bound},
                         {"poly_bound", poly_bound},
                         {"rate", row.log_trace + k * dist * dist / 2.0}});
    }
    worst_completeness = std::max(worst_completeness, std::abs(total - 1.0));
  }

  int k0 = k_max;
  while (k0 > 1 && tail[static_cast<std::size_t>(k0)] <= tail[static_cast<std::size_t>(k0 - 1)]) --k0;
  const double final_tail = tail[static_cast<std::size_t>(k_max)];
  std::vector<double> tails(tail.begin() + 1, tail.end());
  report.set_summary("tail_mass", tails);
  report.set_summary("k0", k0);
  report.set_summary("final_tail", final_tail);
  report.set_summary("completeness_error", worst_completeness);
  report.add_gate("completeness", worst_completeness <= 1e-10,
                  "max |sum_lambda trace - 1| = " + fmt(worst_completeness));
  report.add_gate("concentration", final_tail <= 1e-3,
                  "tail mass at k=" + std::to_string(k_max) + " is " + fmt(final_tail) +
                      ", non-increasing from k0=" + std::to_string(k0));

  // Rate: along each direction x = normalize(lambda), lambda |- k_max, the
  // sequence log tr + k |x_k - r|^2/2 over the last ten k must have
  // non-increasing increments.
  const int first = std::max(1, k_max - 9);
  json directions = json::array();
  int failing = 0;
  for (const auto& top : enumerate_partitions(k_max, d)) {
    const auto x = normalize(top, static_cast<std::size_t>(d));
    std::vector<double> f;
    bool defined = true;
    for (int k = first; k <= k_max; ++k) {
      const Partition lk = round_spectrum(x, k);
      double log_trace = -std::numeric_limits<double>::infinity();
      for (const auto& row : by_k[static_cast<std::size_t>(k - 1)]) {
        if (row.lambda == lk) log_trace = row.log_trace;
      }
      if (!std::isfinite(log_trace)) {
        defined = false;
        break;
      }
      const double dist = l1_distance(lk, r);
      f.push_back(log_trace + k * dist * dist / 2.0);
    }
    bool ok = defined;
    double worst = 0.0;
    for (std::size_t i = 2; defined && i < f.size(); ++i) {
      const double rise = (f[i] - f[i - 1]) - (f[i - 1] - f[i - 2]);
      worst = std::max(worst, rise);
      if (rise > 1e-9) ok = false;
    }
    if (!ok && defined) ++failing;
    directions.push_back({{"direction", to_json(top)}, {"defined", defined},
                          {"non_increasing_increments", ok}, {"worst_increment_rise", worst}});
  }
  report.set_summary("rate_directions", directions);
  report.add_gate("rate", failing == 0,
                  std::to_string(failing) + " of " + std::to_string(directions.size()) +
                      " directions have increasing increments over k=" + std::to_string(first) +
                      ".." + std::to_string(k_max));
  report.add_diagnostic("poly_bound", poly_ok, "trace <= (k+1)^{d(d+1)} exp(-k l1^2/2) on every row");
  return report;
}

ExperimentReport cmd_dimension_ratio(const DensityMatrix& rho, const std::vector<int>& ks,
                                     const RunOptions& opts) {
  const TripartiteDims dims = tripartite_dims(rho);
  if (ks.empty()) throw std::invalid_argument("at least one k is required");
  ExperimentReport report("dimension-ratio", {{"k", ks}, {"dims", rho.dims()}, {"seed", opts.seed}});
  const SpectraTuple s = spectra_tuple(rho);
  const double gap = ssa_gap(rho);
  const double constant = 4.0 * (dims.a * dims.b + dims.b * dims.c + dims.b + dims.total());
  bool all_ok = true;
  bool bound_monotone = true;
  double previous_bound = std::numeric_limits<double>::infinity();
  std::vector<int> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  for (int k : sorted) {
    if (k < 1 || k > 100000) throw std::invalid_argument("k must be in 1..100000");
    const Partition mu = rounded(s.r_ab, k), nu = rounded(s.r_bc, k);
    const Partition beta = rounded(s.r_b, k), lambda = rounded(s.r_abc, k);
    const double g = (sk_log_dimension(mu) + sk_log_dimension(nu) - sk_log_dimension(beta) -
                      sk_log_dimension(lambda)) /
                     (k * std::log(2.0));
    const double err = std::abs(g - gap);
    const double bound = constant * std::log2(static_cast<double>(k)) / k;
    // log2(k)/k increases from k=1 to k=2; the bound is monotone from there.
    if (k >= 3 && bound > previous_bound) bound_monotone = false;
    if (k >= 3) previous_bound = bound;
    const bool ok = err <= bound;
    all_ok = all_ok && ok;
    report.add_record({{"k", k},        {"ratio", g},        {"ssa_gap", gap},
                       {"error", err},  {"bound", bound},    {"within_bound", ok},
                       {"mu", to_json(mu)}, {"nu", to_json(nu)}, {"beta", to_json(beta)},
                       {"lambda", to_json(lambda)}});
  }
  report.set_summary("ssa_gap", gap);
  report.set_summary("constant", constant);
  report.add_gate("error_within_bound", all_ok, "|g(k) - gap| <= C log2(k)/k with C = " + fmt(constant));
  report.add_diagnostic("bound_monotone", bound_monotone, "C log2(k)/k non-increasing for k >= 3");
  return report;
}

ExperimentReport cmd_converse_probe(const SpectraFile& target, int k_min, int k_max, int samples,
                                    const RunOptions& opts) {
  const TripartiteDims dims{target.dims[0], target.dims[1], target.dims[2]};
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("invalid k range");
  if (samples < 0) throw std::invalid_argument("samples must be non-negative");
  require_dense_regime(dims, k_max);
  ExperimentReport report("converse-probe", {{"k_min", k_min}, {"k_max", k_max},
                                             {"samples", samples}, {"seed", opts.seed},
                                             {"target", to_json(target)}});
  const auto& s = target.spectra;
  std::vector<double> hs_seq;
  std::vector<double> surrogate_seq;
  int cs_violations = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const SixLabels labels{rounded(s.r_a, k),  rounded(s.r_b, k),  rounded(s.r_c, k),
                           rounded(s.r_ab, k), rounded(s.r_bc, k), rounded(s.r_abc, k)};
    const auto tensor = recoupling_tensor(labels);
    const TripartiteSector sector(labels.alpha, labels.beta, labels.gamma, dims, k);
    // Fill the projector caches before the sector is shared across workers.
    sector.projector_ab(labels.mu);
    sector.projector_bc(labels.nu);
    sector.projector_abc(labels.lambda);
    struct Sample {
      double trace_p = 0.0, trace_q = 0.0, overlap = 0.0;
    };
    const std::function<Sample(std::size_t)> run = [&](std::size_t i) {
      auto rng = item_rng(opts.seed, i);
      const auto rho = sample_hs_random({dims.a, dims.b, dims.c}, rng);
      if (sector.empty()) return Sample{};
      const auto ov = overlap_trace(sector, labels.mu, labels.nu, labels.lambda,
                                    sector.compress(rho.matrix()));
      return Sample{ov.trace_p, ov.trace_q, std::abs(ov.overlap)};
    };
    const auto sampled = parallel_map<Sample>(static_cast<std::size_t>(samples), opts.threads, run);
    double best = 0.0;
    for (const auto& smp : sampled) {
      const double cs = std::sqrt(std::max(0.0, smp.trace_p)) * std::sqrt(std::max(0.0, smp.trace_q));
      best = std::max(best, cs);
      if (smp.overlap > cs + 1e-9) ++cs_violations;
    }
    hs_seq.push_back(tensor.hs);
    surrogate_seq.push_back(best);
    json rec = labels_json(labels);
    rec["k"] = k;
    rec["hs"] = tensor.hs;
    rec["multiplicities"] = tensor.shape;
    rec["max_sqrt_tp_tq"] = best;
    report.add_record(std::move(rec));
  }
  bool decreasing = true;
  bool all_zero = true;
  for (std::size_t i = 0; i < hs_seq.size(); ++i) {
    if (hs_seq[i] > kStructuralZero) all_zero = false;
    if (i > 0 && !(hs_seq[i] < hs_seq[i - 1])) decreasing = false;
  }
  report.set_summary("hs", hs_seq);
  report.set_summary("max_sqrt_tp_tq", surrogate_seq);
  report.set_summary("cauchy_schwarz_violations", cs_violations);
  report.add_gate("cauchy_schwarz", cs_violations == 0,
                  std::to_string(cs_violations) + " samples with |tr(P~Q~rho)| > sqrt(tP tQ)");
  report.add_diagnostic("hs_strictly_decreasing", decreasing, "trend over the k range");
  report.add_diagnostic("hs_vanishes", all_zero, "hs below 1e-12 at every k");
  return report;
}

ExperimentReport cmd_ssa_scan(int n, const RunOptions& opts) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  ExperimentReport report("ssa-scan", {{"n", n}, {"seed", opts.seed}, {"dims", {2, 2, 2}}});
  const auto ghz = ghz_state({2, 2, 2});
  const double ghz_ssa = ssa_gap(ghz);
  const double ghz_wm = weak_mono_gap(ghz);
  report.add_record({{"state", "ghz"}, {"ssa_gap", ghz_ssa}, {"weak_mono_gap", ghz_wm}});

  struct Gaps {
    double ssa, wm;
  };
  const std::function<Gaps(std::size_t)> run = [&](std::size_t i) {
    auto rng = item_rng(opts.seed, i);
    const auto rho = sample_hs_random({2, 2, 2}, rng);
    return Gaps{ssa_gap(rho), weak_mono_gap(rho)};
  };
  const auto gaps = parallel_map<Gaps>(static_cast<std::size_t>(n), opts.threads, run);
  double min_ssa = std::numeric_limits<double>::infinity();
  double min_wm = min_ssa;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    min_ssa = std::min(min_ssa, gaps[i].ssa);
    min_wm = std::min(min_wm, gaps[i].wm);
    report.add_record({{"state", i}, {"ssa_gap", gaps[i].ssa}, {"weak_mono_gap", gaps[i].wm}});
  }
  report.set_summary("min_ssa_gap", min_ssa);
  report.set_summary("min_weak_mono_gap", min_wm);
  report.set_summary("ghz_ssa_gap", ghz_ssa);
  report.add_gate("ssa", min_ssa >= -1e-9, "min ssa_gap " + fmt(min_ssa));
  report.add_gate("weak_monotonicity", min_wm >= -1e-9, "min weak_mono_gap " + fmt(min_wm));
  report.add_gate("ghz_probe", std::abs(ghz_ssa - 1.0) <= 1e-9, "GHZ ssa_gap " + fmt(ghz_ssa));
  return report;
}

}  // namespace recoup

namespace recoup {

ExperimentReport cmd_scan_recoupling(int k, int max_rows, const RunOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (max_rows < 1) throw std::invalid_argument("max_rows must be positive");
  ExperimentReport report("scan-recoupling", {{"k", k}, {"max_rows", max_rows}, {"seed", opts.seed}});
  const auto outer = enumerate_partitions(k, max_rows);
  const auto all = enumerate_partitions(k);
  const std::size_t n = outer.size();

  struct Block {
    double unitarity = 0.0;
    double sum_rule = 0.0;
    std::vector<json> records;
    double worst_swap = 0.0;
    double worst_swap_ag = 0.0;
  };
  const std::function<Block(std::size_t)> run = [&](std::size_t idx) {
    const Partition& alpha = outer[idx / (n * n * n)];
    const Partition& beta = outer[idx / (n * n) % n];
    const Partition& gamma = outer[idx / n % n];
    const Partition& lambda = outer[idx % n];
    Block out;
    const auto u = full_recoupling_unitary(alpha, beta, gamma, lambda);
    out.unitarity = u.matrix.size() == 0 ? 0.0 : u.unitarity_residual();
    std::vector<double> squares;
    for (const auto& mu : all) {
      for (const auto& nu : all) {
        const SixLabels labels{alpha, beta, gamma, mu, nu, lambda};
        const auto t = recoupling_tensor(labels);
        squares.push_back(t.hs * t.hs);
        const auto swap = column_swap_check(labels);
        const auto swap_ag = column_swap_check_ag(labels);
        out.worst_swap = std::max(out.worst_swap, swap.relative_residual());
        out.worst_swap_ag = std::max(out.worst_swap_ag, swap_ag.relative_residual());
        if (t.empty()) continue;
        json rec = labels_json(labels);
        rec["hs"] = t.hs;
        rec["multiplicities"] = t.shape;
        rec["swap_residual"] = swap.relative_residual();
        rec["swap_ag_residual"] = swap_ag.relative_residual();
        out.records.push_back(std::move(rec));
      }
    }
    const double count = static_cast<double>(associativity_count_mu(alpha, beta, gamma, lambda));
    out.sum_rule = std::abs(pairwise_sum(squares) - count);
    return out;
  };
  const auto blocks = parallel_map<Block>(n * n * n * n, opts.threads, run);
  double unitarity = 0.0, sum_rule = 0.0, swap = 0.0, swap_ag = 0.0;
  for (const auto& b : blocks) {
    unitarity = std::max(unitarity, b.unitarity);
    sum_rule = std::max(sum_rule, b.sum_rule);
    swap = std::max(swap, b.worst_swap);
    swap_ag = std::max(swap_ag, b.worst_swap_ag);
    for (const auto& r : b.records) report.add_record(r);
  }
  report.set_summary("outer_tuples", blocks.size());
  report.set_summary("max_unitarity_residual", unitarity);
  report.set_summary("max_sum_rule_residual", sum_rule);
  report.set_summary("max_swap_residual", swap);
  report.set_summary("max_swap_ag_residual", swap_ag);
  report.add_gate("unitarity", unitarity <= 1e-8, "max ||U^T U - 1|| = " + fmt(unitarity));
  report.add_gate("sum_rule", sum_rule <= 1e-8, "max |sum hs^2 - sum g g| = " + fmt(sum_rule));
  report.add_gate("column_swap", swap <= 1e-8, "max relative residual " + fmt(swap));
  report.add_gate("column_swap_alpha_gamma", swap_ag <= 1e-8, "max relative residual " + fmt(swap_ag));
  return report;
}

}  // namespace recoup
