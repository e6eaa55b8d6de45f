#include "recoup/intertwiner.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "recoup/repsym.hpp"

namespace recoup {

BigInt kronecker_coefficient(const Partition& alpha, const Partition& beta,
                             const Partition& lambda) {
  const int k = lambda.k();
  if (alpha.k() != k || beta.k() != k) {
    throw std::invalid_argument("kronecker_coefficient: partitions of different k");
  }
  BigInt total = 0;
  for (const auto& t : conjugacy_classes(k)) {
    total += t.class_size * character(alpha, t.cycles) * character(beta, t.cycles) *
             character(lambda, t.cycles);
  }
  const BigInt order = factorial(k);
  if (total % order != 0) throw std::logic_error("character sum not divisible by k!");
  return total / order;
}

int kronecker_int(const Partition& alpha, const Partition& beta, const Partition& lambda) {
  return static_cast<int>(kronecker_coefficient(alpha, beta, lambda));
}

IntertwinerBasis cg_isometries(const Partition& alpha, const Partition& beta,
                               const Partition& lambda, const IntertwinerOptions& opts) {
  const int k = lambda.k();
  if (alpha.k() != k || beta.k() != k) {
    throw std::invalid_argument("cg_isometries: partitions of different k");
  }
  const auto ra = cached_rep(alpha);
  const auto rb = cached_rep(beta);
  const auto rl = cached_rep(lambda);
  const Eigen::Index da = ra->dim(), db = rb->dim(), dl = rl->dim();
  const Eigen::Index rows = da * db;
  const Eigen::Index unknowns = rows * dl;
  if (static_cast<std::size_t>(unknowns) > opts.max_unknowns) {
    throw ResourceError("intertwiner system for (" + alpha.to_string() + ")x(" +
                        beta.to_string() + ")<-(" + lambda.to_string() + ") has " +
                        std::to_string(unknowns) + " unknowns, above the cap " +
                        std::to_string(opts.max_unknowns));
  }

  IntertwinerBasis basis{lambda, alpha, beta, {}};
  const int expected = kronecker_int(alpha, beta, lambda);
  if (expected == 0) return basis;

  // Column-major vec: vec(T X - X R) = (I (x) T - R^T (x) I) vec(X), R symmetric.
  RealMatrix system(static_cast<Eigen::Index>(k - 1) * unknowns, unknowns);
  const RealMatrix id_rows = RealMatrix::Identity(rows, rows);
  const RealMatrix id_l = RealMatrix::Identity(dl, dl);
  for (int i = 0; i + 1 < k; ++i) {
    const RealMatrix t = kron(ra->generators[i], rb->generators[i]);
    system.middleRows(static_cast<Eigen::Index>(i) * unknowns, unknowns) =
        kron(id_l, t) - kron(RealMatrix(rl->generators[i].transpose()), id_rows);
  }
  const RealMatrix null = orthonormal_nullspace(system, opts.rank_tol);
  if (null.cols() != expected) {
    throw std::logic_error("intertwiner space has dimension " + std::to_string(null.cols()) +
                           " but the Kronecker coefficient is " + std::to_string(expected));
  }
  const double scale = std::sqrt(static_cast<double>(dl));
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    RealMatrix phi = Eigen::Map<const RealMatrix>(null.col(c).data(), rows, dl) * scale;
    basis.maps.push_back(std::move(phi));
  }
  return basis;
}

std::shared_ptr<const IntertwinerBasis> cached_cg(const Partition& alpha, const Partition& beta,
                                                  const Partition& lambda) {
  using Key = std::tuple<Partition, Partition, Partition>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const IntertwinerBasis>> cache;
  Key key{alpha, beta, lambda};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const IntertwinerBasis>(cg_isometries(alpha, beta, lambda));
  std::unique_lock lock(mutex);
  return cache.emplace(std::move(key), std::move(built)).first->second;
}

double equivariance_residual(const IntertwinerBasis& basis, const std::vector<Permutation>& perms) {
  const auto ra = cached_rep(basis.left);
  const auto rb = cached_rep(basis.right);
  const auto rl = cached_rep(basis.source);
  double worst = 0.0;
  for (const auto& pi : perms) {
    const RealMatrix t = kron(represent(*ra, pi), represent(*rb, pi));
    const RealMatrix r = represent(*rl, pi);
    for (const auto& phi : basis.maps) {
      worst = std::max(worst, hs_norm(RealMatrix(t * phi - phi * r)));
    }
  }
  return worst;
}

RealVector trivial_coupling(const Partition& lambda) {
  const int d = sk_dimension_int(lambda);
  RealVector v = RealVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int e = 0; e < d; ++e) v(e * d + e) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

RealMatrix teleportation_contraction(const Partition& lambda) {
  const auto basis = cached_cg(lambda, lambda, Partition::trivial(lambda.k()));
  if (basis->multiplicity() != 1) {
    throw std::logic_error("[lambda] (x) [lambda] must contain the trivial irrep once");
  }
  const RealVector phi = basis->maps.front().col(0);
  const Eigen::Index d = sk_dimension_int(lambda);
  // out(x, y) = sum_e Phi(x, e) Phi(e, y): the wire enters on the right leg
  // of |Phi> and leaves through the left leg of <Phi|.
  const Eigen::Map<const RealMatrix> as_matrix(phi.data(), d, d);  // (second, first)
  RealMatrix out = RealMatrix::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      double acc = 0.0;
      for (Eigen::Index e = 0; e < d; ++e) acc += as_matrix(e, x) * as_matrix(y, e);
      out(x, y) = acc;
    }
  }
  return out;
}

BendComparison bend_and_compare(const Partition& alpha, const Partition& beta,
                                const Partition& lambda, double tol) {
  const auto forward = cached_cg(alpha, beta, lambda);
  if (forward->multiplicity() == 0) {
    throw std::invalid_argument("bend_and_compare needs g(alpha, beta, lambda) >= 1");
  }
  const auto target = cached_cg(lambda, beta, alpha);
  const Eigen::Index da = sk_dimension_int(alpha);
  const Eigen::Index db = sk_dimension_int(beta);
  const Eigen::Index dl = sk_dimension_int(lambda);
  const int g = forward->multiplicity();

  // Transposing the alpha and lambda legs keeps tr(psi^T psi) = dim[lambda];
  // the beta bubble contributes 1/sqrt(dim[beta]) against the prefactor.
  const double prefactor = std::sqrt(static_cast<double>(da * db) / static_cast<double>(dl)) /
                           std::sqrt(static_cast<double>(db));
  BendComparison out;
  for (const auto& phi : forward->maps) {
    RealMatrix psi(dl * db, da);
    for (Eigen::Index a = 0; a < da; ++a) {
      for (Eigen::Index b = 0; b < db; ++b) {
        for (Eigen::Index l = 0; l < dl; ++l) psi(l * db + b, a) = prefactor * phi(a * db + b, l);
      }
    }
    out.psi.push_back(std::move(psi));
  }

  out.gram.resize(g, g);
  out.unitary.resize(g, target->multiplicity());
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) out.gram(i, j) = (out.psi[j].transpose() * out.psi[i]).trace();
    for (int t = 0; t < target->multiplicity(); ++t) {
      out.unitary(i, t) =
          (target->maps[t].transpose() * out.psi[i]).trace() / static_cast<double>(da);
    }
  }
  out.gram_residual =
      hs_norm(RealMatrix(out.gram - static_cast<double>(da) * RealMatrix::Identity(g, g)));
  if (out.gram_residual > tol) {
    throw std::logic_error("bent intertwiners have Gram residual " +
                           std::to_string(out.gram_residual) + " against dim[alpha] * I");
  }
  out.unitarity_residual =
      out.unitary.rows() == out.unitary.cols()
          ? hs_norm(RealMatrix(out.unitary.transpose() * out.unitary - RealMatrix::Identity(g, g)))
          : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace recoup
