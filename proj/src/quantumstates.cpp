#include "recoup/quantumstates.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace recoup {

StateResiduals DensityMatrix::check(const ComplexMatrix& m) {
  StateResiduals r;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  r.hermiticity = hs_norm(ComplexMatrix(m - m.adjoint()));
  r.trace_error = std::abs(m.trace() - cplx(1.0, 0.0));
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  r.min_eigenvalue = hermitian_eigenvalues(sym).minCoeff();
  return r;
}

DensityMatrix::DensityMatrix(std::vector<int> dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  long long total = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("state dimensions must be positive");
    total *= d;
  }
  if (dims_.empty() || matrix_.rows() != total || matrix_.cols() != total) {
    throw std::invalid_argument("matrix size does not match the product of the dimensions");
  }
  residuals_ = check(matrix_);
  std::ostringstream msg;
  if (residuals_.hermiticity > kStateTol) {
    msg << "not Hermitian: ||rho - rho^dagger|| = " << residuals_.hermiticity;
  } else if (residuals_.min_eigenvalue < -kStateTol) {
    msg << "not positive semidefinite: min eigenvalue " << residuals_.min_eigenvalue;
  } else if (residuals_.trace_error > kStateTol) {
    msg << "trace differs from 1 by " << residuals_.trace_error;
  }
  if (!msg.str().empty()) throw std::invalid_argument(msg.str());
}

ComplexMatrix DensityMatrix::marginal(std::vector<int> keep) const {
  return partial_trace(matrix_, TensorShape(dims_), std::move(keep));
}

std::vector<double> clamped_spectrum(const ComplexMatrix& m) {
  const RealVector ev = hermitian_eigenvalues(m);
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  for (double& x : out) {
    if (x < 0.0 && x >= -kStateTol) x = 0.0;
  }
  return out;
}

SpectraTuple spectra_tuple(const DensityMatrix& rho) {
  if (rho.dims().size() != 3) throw std::invalid_argument("spectra_tuple needs a tripartite state");
  SpectraTuple t;
  t.r_a = clamped_spectrum(rho.marginal({0}));
  t.r_b = clamped_spectrum(rho.marginal({1}));
  t.r_c = clamped_spectrum(rho.marginal({2}));
  t.r_ab = clamped_spectrum(rho.marginal({0, 1}));
  t.r_bc = clamped_spectrum(rho.marginal({1, 2}));
  t.r_abc = clamped_spectrum(rho.matrix());
  return t;
}

double von_neumann_entropy(std::span<const double> r) {
  std::vector<double> terms;
  terms.reserve(r.size());
  for (double x : r) {
    if (x < -kStateTol) {
      throw std::invalid_argument("entropy of a vector with negative entry " + std::to_string(x));
    }
    if (x > 0.0) terms.push_back(-x * std::log2(x));
  }
  return pairwise_sum(terms);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto spec = clamped_spectrum(rho);
  return von_neumann_entropy(spec);
}

namespace {

void require_tripartite(const DensityMatrix& rho) {
  if (rho.dims().size() != 3) throw std::invalid_argument("entropy gaps need a tripartite state");
}

}  // namespace

double ssa_gap(const DensityMatrix& rho) {
  require_tripartite(rho);
  const auto t = spectra_tuple(rho);
  return von_neumann_entropy(t.r_ab) + von_neumann_entropy(t.r_bc) - von_neumann_entropy(t.r_b) -
         von_neumann_entropy(t.r_abc);
}

double weak_mono_gap(const DensityMatrix& rho) {
  require_tripartite(rho);
  const auto t = spectra_tuple(rho);
  return von_neumann_entropy(t.r_ab) + von_neumann_entropy(t.r_bc) - von_neumann_entropy(t.r_a) -
         von_neumann_entropy(t.r_c);
}

namespace {

int product(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("at least one dimension is required");
  int n = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("state dimensions must be positive");
    n *= d;
  }
  return n;
}

ComplexMatrix ginibre(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  // Fill column by column, real part first, so the stream order is fixed.
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

}  // namespace

DensityMatrix sample_hs_random(std::vector<int> dims, std::mt19937_64& rng) {
  const int d = product(dims);
  const ComplexMatrix g = ginibre(d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(dims), std::move(rho));
}

DensityMatrix sample_hs_random(std::vector<int> dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_hs_random(std::move(dims), rng);
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

DensityMatrix maximally_mixed(std::vector<int> dims) {
  const int d = product(dims);
  return DensityMatrix(std::move(dims), ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix ghz_state(std::vector<int> dims) {
  const int d = product(dims);
  ComplexVector psi = ComplexVector::Zero(d);
  Eigen::Index ones = 0;
  for (int f : dims) {
    if (f < 2) throw std::invalid_argument("GHZ needs every factor of dimension at least 2");
    ones = ones * f + 1;
  }
  psi(0) = 1.0;
  psi(ones) = 1.0;
  return pure_state(std::move(dims), psi);
}

DensityMatrix pure_state(std::vector<int> dims, const ComplexVector& psi) {
  const int d = product(dims);
  if (psi.size() != d) throw std::invalid_argument("state vector length does not match dims");
  const double n = psi.norm();
  if (n == 0.0) throw std::invalid_argument("state vector is zero");
  const ComplexVector v = psi / n;
  return DensityMatrix(std::move(dims), v * v.adjoint());
}

}  // namespace recoup
