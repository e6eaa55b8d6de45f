#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "recoup/tensorlinalg.hpp"

namespace recoup {

inline constexpr double kStateTol = 1e-10;

/// Residuals measured by DensityMatrix::check.
struct StateResiduals {
  double hermiticity = 0.0;   // ||rho - rho^dagger||_HS
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;   // |tr rho - 1|
};

/// A validated density matrix on C^{d_0} (x) C^{d_1} (x) ... (factor 0 slowest).
class DensityMatrix {
 public:
  /// Throws std::invalid_argument naming the failing residual.
  DensityMatrix(std::vector<int> dims, ComplexMatrix matrix);

  static StateResiduals check(const ComplexMatrix& matrix);

  const std::vector<int>& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int total_dim() const { return static_cast<int>(matrix_.rows()); }
  const StateResiduals& residuals() const { return residuals_; }
  /// Reduced state on the listed factors.
  ComplexMatrix marginal(std::vector<int> keep) const;

 private:
  std::vector<int> dims_;
  ComplexMatrix matrix_;
  StateResiduals residuals_;
};

/// Marginal spectra of a tripartite state, each non-increasing.
struct SpectraTuple {
  std::vector<double> r_a, r_b, r_c, r_ab, r_bc, r_abc;
};

/// Throws std::invalid_argument unless the state has exactly three factors.
SpectraTuple spectra_tuple(const DensityMatrix& rho);

/// Non-increasing eigenvalues with entries in [-1e-10, 0) set to zero.
std::vector<double> clamped_spectrum(const ComplexMatrix& m);

/// Shannon entropy in bits, 0 log 0 = 0. Throws on entries below -1e-10.
double von_neumann_entropy(std::span<const double> r);
double von_neumann_entropy(const ComplexMatrix& rho);

/// H(AB) + H(BC) - H(B) - H(ABC).
double ssa_gap(const DensityMatrix& rho);
/// H(AB) + H(BC) - H(A) - H(C).
double weak_mono_gap(const DensityMatrix& rho);

/// GG^dagger / tr(GG^dagger) with G square, entries standard complex Gaussian.
DensityMatrix sample_hs_random(std::vector<int> dims, std::mt19937_64& rng);
DensityMatrix sample_hs_random(std::vector<int> dims, std::uint64_t seed);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix random_unitary(int d, std::mt19937_64& rng);

DensityMatrix maximally_mixed(std::vector<int> dims);
/// (|0...0> + |1...1>)/sqrt(2) on qubits (each dimension must be at least 2).
DensityMatrix ghz_state(std::vector<int> dims);
/// |psi><psi| for a vector of the right length; normalizes psi.
DensityMatrix pure_state(std::vector<int> dims, const ComplexVector& psi);

}  // namespace recoup
