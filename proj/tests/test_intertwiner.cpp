#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "recoup/intertwiner.hpp"
#include "recoup/repsym.hpp"

using namespace recoup;

namespace {

// g from an explicit character table of S_3, classes (1,1,1), (2,1), (3).
int s3_kronecker(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& c) {
  const std::map<std::vector<int>, std::array<int, 3>> table{
      {{3}, {1, 1, 1}}, {{2, 1}, {2, 0, -1}}, {{1, 1, 1}, {1, -1, 1}}};
  const std::array<int, 3> sizes{1, 3, 2};
  int s = 0;
  for (int t = 0; t < 3; ++t) s += sizes[t] * table.at(a)[t] * table.at(b)[t] * table.at(c)[t];
  return s / 6;
}

std::vector<Permutation> sample_permutations(int k, int n, std::mt19937_64& rng) {
  std::vector<Permutation> out;
  std::vector<int> img(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    out.emplace_back(img);
  }
  return out;
}

}  // namespace

TEST_CASE("kronecker coefficient examples") {
  for (int k = 1; k <= 6; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      CHECK(kronecker_coefficient(l, l, Partition::trivial(k)) == 1);
      CHECK(kronecker_coefficient(l, Partition::sign(k), l.conjugate()) == 1);
      for (const auto& m : enumerate_partitions(k))
        CHECK(kronecker_int(l, Partition::trivial(k), m) == (l == m ? 1 : 0));
    }
  for (const auto& a : enumerate_partitions(3))
    for (const auto& b : enumerate_partitions(3))
      for (const auto& c : enumerate_partitions(3)) {
        const std::vector<int> ra(a.rows().begin(), a.rows().end());
        const std::vector<int> rb(b.rows().begin(), b.rows().end());
        const std::vector<int> rc(c.rows().begin(), c.rows().end());
        CHECK(kronecker_int(a, b, c) == s3_kronecker(ra, rb, rc));
      }
  CHECK(kronecker_int(Partition({2, 1}), Partition({2, 1}), Partition({2, 1})) == 1);
  CHECK_THROWS_AS(kronecker_coefficient(Partition({2}), Partition({2, 1}), Partition({3})),
                  std::invalid_argument);
}

TEST_CASE("kronecker coefficients are symmetric and decompose dimensions") {
  for (int k = 2; k <= 6; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        long long total = 0;
        for (const auto& c : parts) {
          const int g = kronecker_int(a, b, c);
          CHECK(g == kronecker_int(b, a, c));
          CHECK(g == kronecker_int(a, c, b));
          total += g * sk_dimension_int(c);
        }
        CHECK(total == static_cast<long long>(sk_dimension_int(a)) * sk_dimension_int(b));
      }
  }
}

TEST_CASE("intertwiner multiplicities, normalization and equivariance") {
  std::mt19937_64 rng(21);
  for (int k = 1; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k);
    const auto perms = sample_permutations(k, 6, rng);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& l : parts) {
          const auto basis = cg_isometries(a, b, l);
          REQUIRE(basis.multiplicity() == kronecker_int(a, b, l));
          const int dl = sk_dimension_int(l);
          for (int i = 0; i < basis.multiplicity(); ++i) {
            const auto& phi = basis.maps[static_cast<std::size_t>(i)];
            CHECK(phi.rows() == sk_dimension_int(a) * sk_dimension_int(b));
            CHECK(phi.cols() == dl);
            for (int j = 0; j < basis.multiplicity(); ++j) {
              const double ip = (basis.maps[static_cast<std::size_t>(j)].transpose() * phi).trace();
              CHECK(std::abs(ip - (i == j ? dl : 0.0)) < 1e-9);
            }
            // each map is an isometry: phi^T phi = identity
            CHECK((phi.transpose() * phi - RealMatrix::Identity(dl, dl)).norm() < 1e-9);
          }
          CHECK(equivariance_residual(basis, perms) < 1e-9);
        }
  }
}

TEST_CASE("intertwiners resolve the identity on [alpha] (x) [beta]") {
  for (int k = 2; k <= 4; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        const int n = sk_dimension_int(a) * sk_dimension_int(b);
        RealMatrix sum = RealMatrix::Zero(n, n);
        for (const auto& l : parts)
          for (const auto& phi : cg_isometries(a, b, l).maps) sum += phi * phi.transpose();
        CHECK((sum - RealMatrix::Identity(n, n)).norm() < 1e-9);
      }
  }
}

TEST_CASE("one-dimensional and trivial couplings") {
  const auto sign = cg_isometries(Partition({1, 1}), Partition({1, 1}), Partition({2}));
  REQUIRE(sign.multiplicity() == 1);
  CHECK(std::abs(std::abs(sign.maps[0](0, 0)) - 1.0) < 1e-12);

  const auto triv = cg_isometries(Partition({2, 1}), Partition({2, 1}), Partition({3}));
  REQUIRE(triv.multiplicity() == 1);
  CHECK(triv.maps[0].rows() == 4);
  CHECK(triv.maps[0].cols() == 1);
  const RealVector v = triv.maps[0].col(0);
  const RealVector t = trivial_coupling(Partition({2, 1}));
  CHECK(std::abs(std::abs(v.dot(t)) - 1.0) < 1e-12);

  CHECK(trivial_coupling(Partition({4})).size() == 1);
  CHECK(trivial_coupling(Partition({4}))(0) == doctest::Approx(1.0));
  RealVector expect = RealVector::Zero(4);
  expect(0) = expect(3) = 1.0 / std::sqrt(2.0);
  CHECK((t - expect).norm() < 1e-15);
}

TEST_CASE("trivial coupling is invariant under R(pi) (x) R(pi)") {
  std::mt19937_64 rng(3);
  for (int k = 2; k <= 5; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const auto rep = cached_rep(l);
      const RealVector t = trivial_coupling(l);
      for (const auto& pi : sample_permutations(k, 5, rng)) {
        const RealMatrix r = represent(*rep, pi);
        CHECK((kron(r, r) * t - t).norm() < 1e-10);
      }
    }
}

TEST_CASE("teleportation identity") {
  const RealMatrix half = teleportation_contraction(Partition({2, 1}));
  CHECK((half - RealMatrix::Identity(2, 2) / 2.0).norm() < 1e-12);
  for (int k = 1; k <= 5; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const int d = sk_dimension_int(l);
      CHECK((teleportation_contraction(l) - RealMatrix::Identity(d, d) / d).norm() <= 1e-10);
    }
}

TEST_CASE("bending gives unitary changes of basis") {
  for (const auto& a : enumerate_partitions(2))
    for (const auto& l : enumerate_partitions(2)) {
      const Partition b = kronecker_int(a, Partition({2}), l) ? Partition({2}) : Partition({1, 1});
      const auto cmp = bend_and_compare(a, b, l);
      REQUIRE(cmp.unitary.rows() == 1);
      CHECK(std::abs(std::abs(cmp.unitary(0, 0)) - 1.0) < 1e-12);
    }
  const auto c = bend_and_compare(Partition({2, 1}), Partition({2, 1}), Partition({2, 1}));
  REQUIRE(c.unitary.rows() == 1);
  CHECK(std::abs(std::abs(c.unitary(0, 0)) - 1.0) <= 1e-10);

  for (int k = 1; k <= 4; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts)
      for (const auto& b : parts)
        for (const auto& l : parts) {
          if (kronecker_int(a, b, l) == 0) continue;
          const auto cmp = bend_and_compare(a, b, l);
          CHECK(cmp.gram_residual <= 1e-8);
          CHECK(cmp.unitarity_residual <= 1e-8);
          const int g = kronecker_int(a, b, l);
          CHECK((cmp.gram - sk_dimension_int(a) * RealMatrix::Identity(g, g)).norm() <= 1e-8);
        }
  }
  CHECK_THROWS_AS(bend_and_compare(Partition({2}), Partition({2}), Partition({1, 1})),
                  std::invalid_argument);
}

TEST_CASE("unknown cap") {
  IntertwinerOptions opts;
  opts.max_unknowns = 7;  // this triple needs 2 * 2 * 2
  CHECK_THROWS_AS(cg_isometries(Partition({2, 1}), Partition({2, 1}), Partition({2, 1}), opts),
                  ResourceError);
  CHECK(cached_cg(Partition({3, 1}), Partition({3, 1}), Partition({2, 2}))->multiplicity() == 1);
}
