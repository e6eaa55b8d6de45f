#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace recoup {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Factor dimensions of a tensor-product space. Factor 0 is the slowest
/// index in the flat row-major layout.
struct TensorShape {
  std::vector<int> dims;

  TensorShape() = default;
  explicit TensorShape(std::vector<int> factor_dims);
  /// k copies of C^d.
  static TensorShape power(int d, int k);

  std::size_t total() const;
  int size() const { return static_cast<int>(dims.size()); }
  /// Stride of factor f in the flat index.
  std::size_t stride(int f) const;
};

inline constexpr double kDefaultRankTol = 1e-10;

/// Orthonormal basis (as columns) of ker A. Singular values at or below
/// tol * sigma_max count as zero. Each column is rotated so that its first
/// entry of largest magnitude is real and positive.
RealMatrix orthonormal_nullspace(const RealMatrix& a, double tol = kDefaultRankTol);
ComplexMatrix orthonormal_nullspace(const ComplexMatrix& a, double tol = kDefaultRankTol);

/// Applies the sign convention above to a single vector in place.
void fix_phase(Eigen::Ref<RealVector> v);
void fix_phase(Eigen::Ref<ComplexVector> v);

struct Eigensystem {
  RealVector values;     // non-increasing
  ComplexMatrix vectors; // columns match values
};

/// Throws std::invalid_argument when ||H - H^dagger|| > 1e-10 ||H||.
Eigensystem hermitian_eigensystem(const ComplexMatrix& h);
/// Eigenvalues only, non-increasing.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// Trace over every factor not listed in `keep`. The kept factors stay in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorShape& shape,
                            std::vector<int> keep);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Cascade summation, deterministic for a given input order.
double pairwise_sum(std::span<const double> values);

double hs_norm(const ComplexMatrix& a);
double hs_norm(const RealMatrix& a);
double op_norm(const ComplexMatrix& a);
double op_norm(const RealMatrix& a);

/// Numerical rank with the same thresholding rule as orthonormal_nullspace.
int numerical_rank(const RealMatrix& a, double tol = kDefaultRankTol);

}  // namespace recoup
