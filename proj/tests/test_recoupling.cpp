#include <cmath>

#include "doctest.h"
#include "recoup/intertwiner.hpp"
#include "recoup/recoupling.hpp"

using namespace recoup;

namespace {

SixLabels labels(const Partition& a, const Partition& b, const Partition& g, const Partition& m,
                 const Partition& n, const Partition& l) {
  return SixLabels{a, b, g, m, n, l};
}

// Independent count: sum over mu of the product of Kronecker coefficients.
long long sum_rule_oracle(const Partition& a, const Partition& b, const Partition& g,
                          const Partition& l) {
  long long s = 0;
  for (const auto& m : enumerate_partitions(l.k()))
    s += kronecker_int(a, b, m) * kronecker_int(m, g, l);
  return s;
}

}  // namespace

TEST_CASE("label parsing") {
  const auto s = parse_labels("2,1;2,1;3;2,1;2,1;3");
  CHECK(s.alpha == Partition({2, 1}));
  CHECK(s.gamma == Partition({3}));
  CHECK(s.k() == 3);
  CHECK_THROWS_AS(parse_labels("2,1;2,1;3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_labels("2,1;2,1;3;2,1;2,1;2"), std::invalid_argument);
}

TEST_CASE("all trivial labels") {
  for (int k = 1; k <= 5; ++k) {
    const auto t = Partition::trivial(k);
    const auto r = recoupling_tensor(labels(t, t, t, t, t, t));
    CHECK(r.shape == std::array<int, 4>{1, 1, 1, 1});
    CHECK(std::abs(r.at(0, 0, 0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.hs == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coupling with the trivial irrep is the identity") {
  for (int k = 2; k <= 4; ++k) {
    const auto parts = enumerate_partitions(k);
    const auto t = Partition::trivial(k);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& m : parts)
          for (const auto& n : parts)
            for (const auto& l : parts) {
              const auto r = recoupling_tensor(labels(a, b, t, m, n, l));
              const double expect =
                  (m == l && n == b) ? std::sqrt(static_cast<double>(kronecker_int(a, b, l))) : 0.0;
              CHECK(std::abs(r.hs - expect) < 1e-9);
            }
  }
}

TEST_CASE("empty tensors are legal") {
  const auto r = recoupling_tensor(
      labels(Partition({2}), Partition({2}), Partition({2}), Partition({1, 1}), Partition({2}),
             Partition({2})));
  CHECK(r.empty());
  CHECK(r.hs == 0.0);
}

TEST_CASE("(2,1) sum rule") {
  const Partition p({2, 1});
  const auto parts = enumerate_partitions(3);
  double total = 0.0;
  for (const auto& m : parts)
    for (const auto& n : parts)
      total += std::pow(recoupling_tensor(labels(p, p, p, m, n, p)).hs, 2);
  CHECK(std::abs(total - static_cast<double>(sum_rule_oracle(p, p, p, p))) < 1e-9);
}

TEST_CASE("associativity counts") {
  for (int k = 2; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k, 3);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& g : parts)
          for (const auto& l : parts) {
            const long long mu = associativity_count_mu(a, b, g, l);
            CHECK(mu == sum_rule_oracle(a, b, g, l));
            CHECK(mu == associativity_count_nu(a, b, g, l));
          }
  }
}

TEST_CASE("tensor layout and norms") {
  const Partition p({2, 1, 1}), q({2, 2}), r({3, 1});
  for (const auto& m : enumerate_partitions(4))
    for (const auto& n : enumerate_partitions(4)) {
      const auto t = recoupling_tensor(labels(r, q, r, m, n, p));
      if (t.empty()) continue;
      const RealMatrix mat = t.as_matrix();
      CHECK(mat.rows() == t.shape[2] * t.shape[3]);
      CHECK(mat.cols() == t.shape[0] * t.shape[1]);
      for (int i = 0; i < t.shape[0]; ++i)
        for (int j = 0; j < t.shape[1]; ++j)
          for (int kk = 0; kk < t.shape[2]; ++kk)
            for (int ll = 0; ll < t.shape[3]; ++ll)
              CHECK(mat(kk * t.shape[3] + ll, i * t.shape[1] + j) == t.at(i, j, kk, ll));
      CHECK(std::abs(mat.norm() - t.hs) < 1e-12);
      CHECK(op_norm(mat) <= t.hs + 1e-12);
      const double bound =
          std::sqrt(static_cast<double>(std::min(t.shape[0] * t.shape[1], t.shape[2] * t.shape[3])));
      CHECK(t.hs <= bound + 1e-9);
    }
}

TEST_CASE("full recoupling unitary") {
  const Partition p({2, 1});
  const auto u = full_recoupling_unitary(p, p, p, p);
  CHECK(u.matrix.rows() == u.matrix.cols());
  CHECK(u.matrix.rows() == sum_rule_oracle(p, p, p, p));
  CHECK(u.unitarity_residual() < 1e-8);

  const auto ut = full_recoupling_unitary(Partition({2, 2}), Partition({3, 1}), Partition({4}),
                                          Partition({2, 1, 1}));
  // gamma trivial: a signed permutation matrix
  CHECK(ut.unitarity_residual() < 1e-8);
  for (Eigen::Index i = 0; i < ut.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < ut.matrix.cols(); ++j) {
      const double x = std::abs(ut.matrix(i, j));
      CHECK((x < 1e-9 || std::abs(x - 1.0) < 1e-9));
    }

  for (const auto& [a, b, g, l] : std::vector<std::array<Partition, 4>>{
           {Partition({3, 1}), Partition({2, 1, 1}), Partition({2, 2}), Partition({3, 1})},
           {Partition({2, 2}), Partition({2, 2}), Partition({3, 1}), Partition({2, 1, 1})},
           {Partition({2, 1, 1}), Partition({3, 1}), Partition({3, 1}), Partition({2, 2})}}) {
    const auto v = full_recoupling_unitary(a, b, g, l);
    CHECK(v.unitarity_residual() < 1e-8);
    CHECK(v.matrix.rows() == sum_rule_oracle(a, b, g, l));
  }
}

TEST_CASE("column swap examples") {
  const auto two = Partition({2});
  const auto s = column_swap_check(labels(two, two, two, two, two, two));
  CHECK(s.predicted_ratio == doctest::Approx(1.0));
  CHECK(s.lhs_hs == doctest::Approx(s.rhs_hs));
  CHECK(column_swap_check_ag(labels(two, two, two, two, two, two)).predicted_ratio ==
        doctest::Approx(1.0));
  const Partition p({2, 1});
  CHECK(column_swap_check(labels(p, p, p, p, p, p)).relative_residual() <= 1e-8);
  CHECK(column_swap_check_ag(labels(p, p, p, p, p, p)).relative_residual() <= 1e-8);

  const Partition a({4}), b({3, 1}), g({2, 2}), m({2, 1, 1}), n({1, 1, 1, 1}), l({3, 1});
  CHECK(swap_beta_lambda(labels(a, b, g, m, n, l)) == labels(a, m, g, b, l, n));
  CHECK(swap_alpha_gamma(labels(a, b, g, m, n, l)) == labels(m, b, n, a, g, l));
}

TEST_CASE("column swap relations on every tuple up to k = 3") {
  for (int k = 1; k <= 3; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& g : parts)
          for (const auto& m : parts)
            for (const auto& n : parts)
              for (const auto& l : parts) {
                const auto six = labels(a, b, g, m, n, l);
                CHECK(column_swap_check(six).relative_residual() <= 1e-8);
                CHECK(column_swap_check_ag(six).relative_residual() <= 1e-8);
              }
  }
}

TEST_CASE("k = 2 swap grid with alpha = gamma = (2), mu = nu = (1,1)") {
  const Partition t({2}), s({1, 1});
  for (const auto& b : enumerate_partitions(2))
    for (const auto& l : enumerate_partitions(2)) {
      const auto six = labels(t, b, t, s, s, l);
      CHECK(column_swap_check(six).relative_residual() <= 1e-8);
      CHECK(column_swap_check_ag(six).relative_residual() <= 1e-8);
    }
}
