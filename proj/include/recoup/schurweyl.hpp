#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "recoup/combinatorics.hpp"
#include "recoup/recoupling.hpp"
#include "recoup/tensorlinalg.hpp"

namespace recoup {

// Index convention on (C^{abc})^{(x)k}: copy 0 is the slowest index; within a
// copy the local index is (x_a * b + x_b) * c + x_c.

/// Where each basis index of (C^D)^{(x)k} goes under U(pi), restricted to the
/// sub-factors selected by `active` inside every copy. local_dims are the
/// per-copy factor dimensions (e.g. {a, b, c}); inactive factors stay put.
/// U(pi)|i_1 ... i_k> = |i_{pi^-1(1)} ... i_{pi^-1(k)}>, so U(pi) U(sigma) = U(pi sigma).
std::vector<std::uint32_t> permutation_index_map(const Permutation& pi,
                                                 std::span<const int> local_dims,
                                                 std::span<const bool> active);
std::vector<std::uint32_t> permutation_index_map(const Permutation& pi, int d);

/// Matrix-free U(pi) v on (C^d)^{(x)k}.
ComplexVector apply_permutation(const Permutation& pi, const ComplexVector& v, int d);
RealVector apply_permutation(const Permutation& pi, const RealVector& v, int d);

inline constexpr std::size_t kDenseProjectorCap = 4096;
inline constexpr std::size_t kImplicitProjectorCap = 1000000;

/// P_lambda = (dim[lambda]/k!) sum_pi chi_lambda(pi) U(pi) on (C^d)^{(x)k}.
class IsotypicProjector {
 public:
  IsotypicProjector(Partition lambda, int d, int k);

  const Partition& shape() const { return lambda_; }
  int local_dim() const { return d_; }
  int copies() const { return k_; }
  std::size_t total_dim() const { return total_; }
  bool is_dense() const { return dense_.has_value(); }
  bool is_zero() const { return zero_; }
  /// Throws std::logic_error for implicit projectors.
  const RealMatrix& dense() const;
  ComplexVector apply(const ComplexVector& v) const;
  /// dim[lambda] * dim V^d_lambda.
  long long expected_rank() const;

 private:
  Partition lambda_;
  int d_;
  int k_;
  std::size_t total_;
  bool zero_ = false;
  std::vector<Permutation> perms_;
  std::vector<double> coeffs_;
  std::optional<RealMatrix> dense_;
};

IsotypicProjector isotypic_projector(const Partition& lambda, int d, int k);

/// tr(P_lambda rho^{(x)k}) by the cycle-type expansion
/// (dim[lambda]/k!) sum_t |C_t| chi_lambda(t) prod_j (tr rho^j)^{m_j(t)},
/// evaluated in 100-digit arithmetic from the spectrum of rho.
double projected_trace(const Partition& lambda, const ComplexMatrix& rho, int k);
double projected_trace_from_spectrum(const Partition& lambda, std::span<const double> spectrum);

struct ProjectedTrace {
  Partition lambda;
  double trace = 0.0;
  double log_trace = 0.0;  // natural log, -inf when the trace vanishes
};

/// Every lambda |- k with at most spectrum.size() rows, reverse lexicographic.
std::vector<ProjectedTrace> projected_traces(std::span<const double> spectrum, int k);

/// Same quantity via dense P_lambda and dense rho^{(x)k} (d^k <= 4096).
double projected_trace_dense(const Partition& lambda, const ComplexMatrix& rho, int k);

struct TripartiteDims {
  int a = 2, b = 2, c = 2;
  int total() const { return a * b * c; }
};

enum class Subsystem { A, B, C, AB, BC, ABC };

/// Dense isotypic projector of `lambda` acting on the given subsystem of
/// (C^{abc})^{(x)k}, identity on the rest.
RealMatrix subsystem_projector(const Partition& lambda, Subsystem which, TripartiteDims dims,
                               int k);

struct TripartiteOperators {
  RealMatrix p_tilde;  // (P_a (x) P_b (x) P_g)(P_a (x) P_nu) P_lambda
  RealMatrix q_tilde;  // (P_a (x) P_b (x) P_g)(P_mu (x) P_g) P_lambda
};

/// Dense P-tilde and Q-tilde by multiplying the full-space projectors.
TripartiteOperators tripartite_projectors(const SixLabels& labels, TripartiteDims dims, int k,
                                          std::size_t cap = kDenseProjectorCap);

/// Orthonormal basis of the image of P_alpha on (C^d)^{(x)k} and the
/// restriction of every U(pi) to it (pi in all_permutations(k) order).
struct LocalIsotypic {
  Partition shape;
  int d = 0;
  RealMatrix basis;
  std::vector<RealMatrix> restricted;
};

std::shared_ptr<const LocalIsotypic> local_isotypic(const Partition& alpha, int d, int k);

/// The range of P_alpha (x) P_beta (x) P_gamma in product coordinates
/// (alpha-index slowest). Every operator built from subsystem projectors and
/// commuting with that projector is represented here as a small matrix.
class TripartiteSector {
 public:
  TripartiteSector(Partition alpha, Partition beta, Partition gamma, TripartiteDims dims, int k);

  int size() const { return static_cast<int>(size_); }
  bool empty() const { return size_ == 0; }
  const Partition& alpha() const { return alpha_; }
  const Partition& beta() const { return beta_; }
  const Partition& gamma() const { return gamma_; }
  TripartiteDims dims() const { return dims_; }
  int copies() const { return k_; }

  const RealMatrix& projector_ab(const Partition& mu) const;
  const RealMatrix& projector_bc(const Partition& nu) const;
  const RealMatrix& projector_abc(const Partition& lambda) const;

  RealMatrix p_tilde(const Partition& nu, const Partition& lambda) const;
  RealMatrix q_tilde(const Partition& mu, const Partition& lambda) const;

  /// Columns are the sector basis vectors written in the full index convention.
  RealMatrix embedding() const;
  /// B^T rho^{(x)k} B for a state on C^{abc}.
  ComplexMatrix compress(const ComplexMatrix& rho) const;

 private:
  RealMatrix group_average(const Partition& shape, bool use_a, bool use_b, bool use_c) const;

  Partition alpha_, beta_, gamma_;
  TripartiteDims dims_;
  int k_;
  std::shared_ptr<const LocalIsotypic> la_, lb_, lc_;
  Eigen::Index size_ = 0;
  mutable std::map<Partition, RealMatrix> ab_cache_, bc_cache_, abc_cache_;
};

struct SchurWeylNorms {
  double hs = 0.0;        // ||P~Q~||_HS / sqrt(identity_dim)
  double op_norm = 0.0;   // ||P~Q~||_inf
  double raw_hs = 0.0;    // ||P~Q~||_HS
  double identity_dim = 0.0;  // dim[lambda] dimV_alpha dimV_beta dimV_gamma
};

/// The recoupling HS norm read off P~Q~ = 1 (x) [6j].
SchurWeylNorms hs_norm_via_schurweyl(const SixLabels& labels, TripartiteDims dims, int k,
                                     bool with_op_norm = true);
SchurWeylNorms hs_norm_via_schurweyl(const TripartiteSector& sector, const Partition& mu,
                                     const Partition& nu, const Partition& lambda,
                                     bool with_op_norm = true);

struct OverlapTraces {
  std::complex<double> overlap;  // tr(P~ Q~ rho^{(x)k})
  double trace_p = 0.0;          // tr(P~ rho^{(x)k})
  double trace_q = 0.0;          // tr(Q~ rho^{(x)k})
};

/// Dense route: explicit operators on (C^{abc})^{(x)k}.
OverlapTraces overlap_trace(const RealMatrix& p_tilde, const RealMatrix& q_tilde,
                            const ComplexMatrix& rho, int k);
/// Sector route with a pre-compressed rho^{(x)k}.
OverlapTraces overlap_trace(const TripartiteSector& sector, const Partition& mu,
                            const Partition& nu, const Partition& lambda,
                            const ComplexMatrix& compressed_rho);

/// rho^{(x)k} as a dense matrix (copy 0 slowest).
ComplexMatrix tensor_power(const ComplexMatrix& rho, int k);

}  // namespace recoup
