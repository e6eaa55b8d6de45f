#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "recoup/combinatorics.hpp"
#include "recoup/tensorlinalg.hpp"

namespace recoup {

/// Orthonormal S_k-linear maps [source] -> [left] (x) [right], each a
/// (dim[left] dim[right]) x dim[source] real matrix with
/// tr(phi_j^T phi_i) = dim[source] delta_ij. Rows index left slowest.
struct IntertwinerBasis {
  Partition source;
  Partition left;
  Partition right;
  std::vector<RealMatrix> maps;

  int multiplicity() const { return static_cast<int>(maps.size()); }
};

struct IntertwinerOptions {
  /// Refuse when dim[left] dim[right] dim[source] exceeds this.
  std::size_t max_unknowns = 4096;
  double rank_tol = 1e-10;
};

/// g(alpha, beta, lambda) = (1/k!) sum_t |C_t| chi_alpha chi_beta chi_lambda.
BigInt kronecker_coefficient(const Partition& alpha, const Partition& beta,
                             const Partition& lambda);
int kronecker_int(const Partition& alpha, const Partition& beta, const Partition& lambda);

/// Solves (R_alpha (x) R_beta)(s_i) phi = phi R_lambda(s_i) for every Coxeter
/// generator at once, orthonormalizes in the HS inner product and rescales
/// by sqrt(dim[lambda]).
IntertwinerBasis cg_isometries(const Partition& alpha, const Partition& beta,
                               const Partition& lambda, const IntertwinerOptions& opts = {});

/// Memoized cg_isometries(alpha, beta, lambda). Thread safe.
std::shared_ptr<const IntertwinerBasis> cached_cg(const Partition& alpha, const Partition& beta,
                                                  const Partition& lambda);

/// Largest equivariance residual over the supplied permutations.
double equivariance_residual(const IntertwinerBasis& basis, const std::vector<Permutation>& perms);

/// (1/sqrt(dim)) sum_e |e>|e> in the Young orthogonal basis of [lambda].
RealVector trivial_coupling(const Partition& lambda);

/// (1 (x) <Phi|)(|Phi> (x) 1) on [lambda], with |Phi> taken from
/// cg_isometries(lambda, lambda, (k)). Equals identity / dim[lambda].
RealMatrix teleportation_contraction(const Partition& lambda);

struct BendComparison {
  /// psi_i : [alpha] -> [lambda] (x) [beta], rows index lambda slowest.
  std::vector<RealMatrix> psi;
  /// gram(i, j) = tr(psi_j^T psi_i); expected dim[alpha] * identity.
  RealMatrix gram;
  /// psi_i = sum_i' U(i, i') phi'_i' with phi' = cg_isometries(lambda, beta, alpha).
  RealMatrix unitary;
  double gram_residual = 0.0;
  double unitarity_residual = 0.0;
};

/// Bends the alpha and lambda legs of each phi_i in cg_isometries(alpha, beta,
/// lambda) and compares the result with the intertwiners [alpha] ->
/// [lambda] (x) [beta]. Throws std::logic_error if the Gram matrix misses
/// dim[alpha] * I by more than `tol`.
BendComparison bend_and_compare(const Partition& alpha, const Partition& beta,
                                const Partition& lambda, double tol = 1e-8);

}  // namespace recoup
