#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "recoup/json_io.hpp"
#include "recoup/quantumstates.hpp"

namespace recoup {

inline constexpr int kReportSchemaVersion = 1;

struct Gate {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Trend diagnostics are reported but never decide the exit status.
  bool diagnostic = false;
};

class ExperimentReport {
 public:
  explicit ExperimentReport(std::string experiment, json parameters = json::object());

  const std::string& experiment() const { return experiment_; }
  const json& parameters() const { return parameters_; }
  const std::vector<json>& records() const { return records_; }
  const json& summary() const { return summary_; }
  const std::vector<Gate>& gates() const { return gates_; }

  void add_record(json record);
  void set_summary(const std::string& key, json value);
  void add_gate(std::string name, bool passed, std::string detail);
  void add_diagnostic(std::string name, bool passed, std::string detail);

  /// True iff every non-diagnostic gate passed.
  bool passed() const;
  const Gate* find_gate(const std::string& name) const;

  /// One JSON object per line: records first, then a summary line.
  void write_jsonl(std::ostream& out) const;
  /// Records as CSV rows; summary and gates as trailing '#' lines.
  void write_csv(std::ostream& out) const;

 private:
  std::string experiment_;
  json parameters_;
  std::vector<json> records_;
  json summary_ = json::object();
  std::vector<Gate> gates_;
};

struct RunOptions {
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Generator for item `index` of a seeded scan; independent of thread count.
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

/// Runs fn(0..n-1) on up to `threads` workers and returns results in index order.
template <typename Result>
std::vector<Result> parallel_map(std::size_t n, int threads,
                                 const std::function<Result(std::size_t)>& fn);

/// Partitions of k with at most max_rows rows whose normalization lies
/// within l1 distance delta of r (1e-12 boundary slack).
std::vector<Partition> ball_labels(std::span<const double> r, int k, int max_rows, double delta);

/// Exhaustive recoupling scan at fixed k: unitarity and sum rule for every
/// (alpha, beta, gamma, lambda) with at most max_rows rows, and both
/// column-swap relations for every six-label tuple over those outer labels.
ExperimentReport cmd_scan_recoupling(int k, int max_rows, const RunOptions& opts = {});

ExperimentReport cmd_thm1_certificate(const DensityMatrix& rho, int k, double delta,
                                      const RunOptions& opts = {});
ExperimentReport cmd_skew_union_fuzz(int n, const RunOptions& opts = {});
ExperimentReport cmd_spectrum_estimation(const DensityMatrix& rho, int k_max, double delta = 0.3,
                                         const RunOptions& opts = {});
ExperimentReport cmd_dimension_ratio(const DensityMatrix& rho, const std::vector<int>& ks,
                                     const RunOptions& opts = {});
ExperimentReport cmd_converse_probe(const SpectraFile& target, int k_min, int k_max, int samples,
                                    const RunOptions& opts = {});
ExperimentReport cmd_ssa_scan(int n, const RunOptions& opts = {});

}  // namespace recoup

#include "recoup/detail/parallel.hpp"
