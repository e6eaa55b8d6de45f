// Acceptance checks. Usage: acceptance [criterion...]; no argument runs all ten.
// Prints one PASS/FAIL line per criterion and exits non-zero if any failed.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "recoup/combinatorics.hpp"
#include "recoup/experiments.hpp"
#include "recoup/intertwiner.hpp"
#include "recoup/repsym.hpp"
#include "recoup/recoupling.hpp"
#include "recoup/schurweyl.hpp"

using namespace recoup;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int worker_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

bool gate(const ExperimentReport& r, const std::string& name, std::string& detail) {
  const Gate* g = r.find_gate(name);
  if (g == nullptr) {
    detail += name + " missing; ";
    return false;
  }
  detail += name + (g->passed ? " ok" : " FAILED") + " (" + g->detail + "); ";
  return g->passed;
}

Outcome dimension_identities() {
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    BigInt s = 0;
    for (const auto& l : enumerate_partitions(k)) s += sk_dimension(l).exact * sk_dimension(l).exact;
    ok = ok && s == factorial(k);
  }
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 6; ++k) {
      BigInt s = 0;
      for (const auto& l : enumerate_partitions(k, d)) s += sk_dimension(l).exact * weyl_dimension(l, d);
      ok = ok && s == boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(k));
    }
  return {ok, "sum dim^2 = k! for k <= 8; sum dim dimV = d^k for k <= 6, d <= 3"};
}

Outcome recoupling_unitarity() {
  double worst_unitarity = 0.0, worst_sum = 0.0;
  std::size_t tuples = 0;
  for (int k = 1; k <= 5; ++k) {
    const auto outer = enumerate_partitions(k, 3);
    const auto all = enumerate_partitions(k);
    const std::size_t n = outer.size();
    const std::function<std::pair<double, double>(std::size_t)> run = [&](std::size_t idx) {
      const Partition& a = outer[idx / (n * n * n)];
      const Partition& b = outer[idx / (n * n) % n];
      const Partition& g = outer[idx / n % n];
      const Partition& l = outer[idx % n];
      const double u = full_recoupling_unitary(a, b, g, l).unitarity_residual();
      double s = 0.0;
      for (const auto& m : all)
        for (const auto& v : all) s += std::pow(recoupling_tensor(SixLabels{a, b, g, m, v, l}).hs, 2);
      return std::pair{u, std::abs(s - static_cast<double>(associativity_count_mu(a, b, g, l)))};
    };
    for (const auto& [u, s] : parallel_map(n * n * n * n, worker_count(), run)) {
      worst_unitarity = std::max(worst_unitarity, u);
      worst_sum = std::max(worst_sum, s);
      ++tuples;
    }
  }
  return {worst_unitarity <= 1e-8 && worst_sum <= 1e-8,
          std::to_string(tuples) + " outer tuples, max unitarity residual " + num(worst_unitarity) +
              ", max sum-rule residual " + num(worst_sum)};
}

Outcome column_swaps() {
  double worst = 0.0, worst_ag = 0.0;
  std::size_t tuples = 0;
  for (int k = 1; k <= 4; ++k) {
    const auto parts = enumerate_partitions(k);
    const std::size_t n = parts.size();
    std::size_t total = 1;
    for (int i = 0; i < 6; ++i) total *= n;
    const std::function<std::pair<double, double>(std::size_t)> run = [&](std::size_t idx) {
      std::array<std::size_t, 6> at{};
      for (int i = 5; i >= 0; --i) {
        at[static_cast<std::size_t>(i)] = idx % n;
        idx /= n;
      }
      const SixLabels six{parts[at[0]], parts[at[1]], parts[at[2]],
                          parts[at[3]], parts[at[4]], parts[at[5]]};
      return std::pair{column_swap_check(six).relative_residual(),
                       column_swap_check_ag(six).relative_residual()};
    };
    for (const auto& [s, s_ag] : parallel_map(total, worker_count(), run)) {
      worst = std::max(worst, s);
      worst_ag = std::max(worst_ag, s_ag);
      ++tuples;
    }
  }
  return {worst <= 1e-8 && worst_ag <= 1e-8,
          std::to_string(tuples) + " tuples, max relative residual " + num(worst) +
              " (beta-lambda), " + num(worst_ag) + " (alpha-gamma)"};
}

Outcome cross_route() {
  const TripartiteDims dims{2, 2, 2};
  double worst = 0.0, worst_sandwich = 0.0;
  std::size_t tuples = 0;
  for (int k = 1; k <= 3; ++k) {
    const auto local = enumerate_partitions(k, 2);
    const auto all = enumerate_partitions(k);
    for (const auto& a : local)
      for (const auto& b : local)
        for (const auto& g : local) {
          const TripartiteSector sector(a, b, g, dims, k);
          for (const auto& m : all)
            for (const auto& n : all)
              for (const auto& l : all) {
                const SixLabels six{a, b, g, m, n, l};
                const auto sw = hs_norm_via_schurweyl(six, dims, k);
                const auto via_sector = hs_norm_via_schurweyl(sector, m, n, l);
                const double hs = recoupling_tensor(six).hs;
                worst = std::max({worst, std::abs(sw.hs - hs), std::abs(via_sector.hs - hs)});
                worst_sandwich = std::max(worst_sandwich, sw.op_norm - hs);
                ++tuples;
              }
        }
  }
  return {worst <= 1e-8 && worst_sandwich <= 1e-8,
          std::to_string(tuples) + " tuples, max |hs difference| " + num(worst) +
              ", max op_norm - hs " + num(worst_sandwich)};
}

Outcome spectrum_estimation() {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(0, 0) = 0.9;
  rho(1, 1) = 0.1;
  const auto r = cmd_spectrum_estimation(DensityMatrix({2}, rho), 30, 0.3);
  std::string detail;
  const bool c = gate(r, "completeness", detail);
  const bool t = gate(r, "concentration", detail);
  const bool s = gate(r, "rate", detail);
  return {c && t && s, detail};
}

Outcome certificate() {
  const auto r = cmd_thm1_certificate(maximally_mixed({2, 2, 2}), 4, 1.0, {1, worker_count()});
  std::string detail = "hs_sum " + num(r.summary().at("hs_sum").get<double>()) + ", |overlap| " +
                       num(r.summary().at("overlap_abs").get<double>()) + ", rhs " +
                       num(r.summary().at("skew_union_rhs").get<double>()) + "; ";
  const bool a = gate(r, "hs_sum_bounds_skew_union", detail);
  const bool b = gate(r, "hs_sum_bounds_overlap", detail);
  const bool c = gate(r, "overlap_bounds_skew_union", detail);
  return {a && b && c, detail};
}

Outcome entropy() {
  const auto r = cmd_ssa_scan(1000, {1, worker_count()});
  std::string detail;
  const bool a = gate(r, "ssa", detail);
  const bool b = gate(r, "weak_monotonicity", detail);
  const bool c = gate(r, "ghz_probe", detail);
  return {a && b && c, detail};
}

Outcome dimension_ratio() {
  const auto r = cmd_dimension_ratio(ghz_state({2, 2, 2}), {2000});
  const double g = r.records().front().at("ratio").get<double>();
  return {std::abs(g - 1.0) <= 0.05, "g(2000) = " + num(g)};
}

Outcome graphical_identities() {
  double tele = 0.0, gram = 0.0;
  for (int k = 1; k <= 5; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const int d = sk_dimension_int(l);
      tele = std::max(tele, hs_norm(RealMatrix(teleportation_contraction(l) - RealMatrix::Identity(d, d) / d)));
    }
  std::size_t triples = 0;
  for (int k = 1; k <= 3; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& l : parts) {
          if (kronecker_int(a, b, l) == 0) continue;
          gram = std::max(gram, bend_and_compare(a, b, l).gram_residual);
          ++triples;
        }
  }
  return {tele <= 1e-10 && gram <= 1e-8, "teleportation residual " + num(tele) + ", Gram residual " +
                                             num(gram) + " over " + std::to_string(triples) + " triples"};
}

Outcome skew_union() {
  const auto r = cmd_skew_union_fuzz(10000, {1, worker_count()});
  std::string detail;
  const bool a = gate(r, "no_violations", detail);
  const bool b = gate(r, "identity_probe", detail);
  const bool c = gate(r, "zero_q_probe", detail);
  return {a && b && c, detail};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"dimension identities", 1.0, dimension_identities},
    {"recoupling unitarity and sum rule, k <= 5", 600.0, recoupling_unitarity},
    {"column-swap symmetries, k <= 4", 300.0, column_swaps},
    {"cross-route norm oracle, a = b = c = 2, k <= 3", 600.0, cross_route},
    {"spectrum estimation, diag(0.9, 0.1), k = 30", 5.0, spectrum_estimation},
    {"overlap chain, I/8, k = 4, delta = 1", 1800.0, certificate},
    {"entropy inequalities, 1000 random states", 10.0, entropy},
    {"dimension ratio, GHZ, k = 2000", 1.0, dimension_ratio},
    {"teleportation and bending identities", 60.0, graphical_identities},
    {"skew-union fuzz, 10000 triples", 30.0, skew_union},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= 10; ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > 10) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    const Criterion& c = kCriteria[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool passed = out.passed && in_time;
    if (!passed) ++failures;
    std::printf("criterion %d %s: %s [%.2f s of %.0f s]  %s%s\n", id, passed ? "PASS" : "FAIL", c.name,
                seconds, c.budget_seconds, out.detail.c_str(), in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
