#pragma once

#include <array>
#include <vector>

#include "recoup/combinatorics.hpp"
#include "recoup/tensorlinalg.hpp"

namespace recoup {

/// Labels of the recoupling coefficient [alpha beta mu; gamma lambda nu].
/// mu couples (alpha, beta); nu couples (beta, gamma); lambda is the total.
struct SixLabels {
  Partition alpha, beta, gamma, mu, nu, lambda;

  int k() const { return lambda.k(); }
  std::string to_string() const;
  friend bool operator==(const SixLabels&, const SixLabels&) = default;
};

/// Builds labels from "a;b;g;m;n;l" with each entry like "2,1".
SixLabels parse_labels(std::string_view text);

/// Entries (i, j) -> (k, l) with i in H^{alpha beta}_mu, j in H^{mu gamma}_lambda,
/// k in H^{beta gamma}_nu, l in H^{alpha nu}_lambda.
struct RecouplingTensor {
  SixLabels labels;
  /// {g(alpha,beta,mu), g(mu,gamma,lambda), g(beta,gamma,nu), g(alpha,nu,lambda)}
  std::array<int, 4> shape{};
  std::vector<double> entries;  // row-major over (i, j, k, l)
  double hs = 0.0;

  double at(int i, int j, int k, int l) const;
  bool empty() const { return entries.empty(); }
  /// Rows (k, l), columns (i, j): the coefficient as a linear map.
  RealMatrix as_matrix() const;
};

RecouplingTensor recoupling_tensor(const SixLabels& labels);

/// The full change of basis for fixed (alpha, beta, gamma, lambda): rows are
/// the (nu, k, l) blocks, columns the (mu, i, j) blocks.
struct RecouplingUnitary {
  std::vector<Partition> mus;  // in enumeration order, only those with a nonzero block
  std::vector<Partition> nus;
  std::vector<int> mu_offsets;
  std::vector<int> nu_offsets;
  RealMatrix matrix;

  double unitarity_residual() const;
};

RecouplingUnitary full_recoupling_unitary(const Partition& alpha, const Partition& beta,
                                          const Partition& gamma, const Partition& lambda);

/// sum_mu g(alpha,beta,mu) g(mu,gamma,lambda), via characters only.
long long associativity_count_mu(const Partition& alpha, const Partition& beta,
                                 const Partition& gamma, const Partition& lambda);
long long associativity_count_nu(const Partition& alpha, const Partition& beta,
                                 const Partition& gamma, const Partition& lambda);

/// HS norms below this are rounding noise on a coefficient that vanishes by
/// symmetry (entries are O(1) sums of products of unit-norm maps).
inline constexpr double kStructuralZero = 1e-12;

struct SwapCheck {
  double lhs_hs = 0.0;
  double rhs_hs = 0.0;
  double predicted_ratio = 0.0;

  /// |lhs - ratio * rhs| / max(lhs, ratio * rhs); zero when both sides are
  /// below kStructuralZero.
  double relative_residual() const;
};

/// ||[a b m; g l n]|| against sqrt(dim m dim n / (dim b dim l)) ||[a m b; g n l]||.
SwapCheck column_swap_check(const SixLabels& labels);
/// ||[a b m; g l n]|| against sqrt(dim m dim n / (dim a dim g)) ||[m b a; n l g]||.
SwapCheck column_swap_check_ag(const SixLabels& labels);

/// Labels of the partner coefficient used by each swap check.
SixLabels swap_beta_lambda(const SixLabels& labels);
SixLabels swap_alpha_gamma(const SixLabels& labels);

}  // namespace recoup
