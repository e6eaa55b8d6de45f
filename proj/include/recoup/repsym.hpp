#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "recoup/combinatorics.hpp"

namespace recoup {

/// Thrown when an operation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Young's orthogonal form of one irrep of S_k. generators[i] represents the
/// adjacent transposition (i, i+1), zero-based.
struct RepMatrixSet {
  Partition shape;
  std::vector<StandardTableau> basis;
  std::vector<Eigen::MatrixXd> generators;

  int dim() const { return static_cast<int>(basis.size()); }
  int k() const { return shape.k(); }
};

inline constexpr std::size_t kDefaultRepDimCap = 5000;

RepMatrixSet young_orthogonal_rep(const Partition& lambda,
                                  std::size_t max_dim = kDefaultRepDimCap);

/// Shared, memoized young_orthogonal_rep. Safe to call from several threads.
std::shared_ptr<const RepMatrixSet> cached_rep(const Partition& lambda);

/// Bubble-sort reduced word: pi = s_{w[0]} s_{w[1]} ... s_{w[n-1]}.
std::vector<int> reduced_word(const Permutation& pi);

/// R(pi) as the product of generators along reduced_word(pi). R is a
/// homomorphism: R(pi * sigma) = R(pi) R(sigma).
Eigen::MatrixXd represent(const RepMatrixSet& reps, const Permutation& pi);
/// Same, along an explicitly supplied word (used to test word independence).
Eigen::MatrixXd represent_word(const RepMatrixSet& reps, const std::vector<int>& word);

/// chi_lambda at cycle type t, Murnaghan-Nakayama with a synchronized memo.
BigInt character(const Partition& lambda, const Partition& cycle_type);
/// Same value as a double; exact whenever |chi| < 2^53.
double character_value(const Partition& lambda, const Partition& cycle_type);

}  // namespace recoup
