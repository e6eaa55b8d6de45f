#include "recoup/tensorlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace recoup {

TensorShape::TensorShape(std::vector<int> factor_dims) : dims(std::move(factor_dims)) {
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("tensor factors must have dimension >= 1");
  }
}

TensorShape TensorShape::power(int d, int k) {
  return TensorShape(std::vector<int>(static_cast<std::size_t>(k), d));
}

std::size_t TensorShape::total() const {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::size_t TensorShape::stride(int f) const {
  std::size_t s = 1;
  for (int g = size() - 1; g > f; --g) s *= static_cast<std::size_t>(dims[g]);
  return s;
}

namespace {

template <class Vec>
Eigen::Index leading_index(const Vec& v) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) largest = std::max(largest, std::abs(v(i)));
  // tolerate rounding-level ties so the pick is stable
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest * (1.0 - 1e-9)) return i;
  }
  return 0;
}

template <class Mat>
Mat nullspace_impl(const Mat& a, double tol) {
  using Scalar = typename Mat::Scalar;
  const Eigen::Index n = a.cols();
  if (tol <= 0) throw std::invalid_argument("nullspace tolerance must be positive");
  if (a.rows() == 0 || n == 0) {
    Mat basis = Mat::Identity(n, n);
    return basis;
  }
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sigma_max && sigma_max > 0) ++rank;
  }
  Mat basis = svd.matrixV().rightCols(n - rank);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    auto col = basis.col(c);
    const Eigen::Index lead = leading_index(col);
    const Scalar x = col(lead);
    if (std::abs(x) > 0) col *= std::abs(x) / x;
  }
  return basis;
}

}  // namespace

RealMatrix orthonormal_nullspace(const RealMatrix& a, double tol) {
  return nullspace_impl(a, tol);
}

ComplexMatrix orthonormal_nullspace(const ComplexMatrix& a, double tol) {
  return nullspace_impl(a, tol);
}

void fix_phase(Eigen::Ref<RealVector> v) {
  const auto lead = leading_index(v);
  if (v(lead) < 0) v = -v;
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  const auto lead = leading_index(v);
  const cplx x = v(lead);
  if (std::abs(x) > 0) v *= std::abs(x) / x;
}

namespace {

void check_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(hs_norm(h), 1e-300);
  const double residual = hs_norm(ComplexMatrix(h - h.adjoint()));
  if (residual > 1e-10 * scale) {
    throw std::invalid_argument("matrix is not Hermitian (residual " +
                                std::to_string(residual) + ")");
  }
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  check_hermitian(h);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  // Eigen sorts ascending
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  check_hermitian(h);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const TensorShape& shape,
                            std::vector<int> keep) {
  const std::size_t n = shape.total();
  if (static_cast<std::size_t>(m.rows()) != n || m.rows() != m.cols()) {
    throw std::invalid_argument("partial_trace: matrix size does not match the shape");
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int f : keep) {
    if (f < 0 || f >= shape.size()) throw std::out_of_range("partial_trace: factor out of range");
  }
  std::vector<int> traced;
  for (int f = 0; f < shape.size(); ++f) {
    if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);
  }
  std::size_t kept_dim = 1;
  for (int f : keep) kept_dim *= static_cast<std::size_t>(shape.dims[f]);
  std::size_t traced_dim = 1;
  for (int f : traced) traced_dim *= static_cast<std::size_t>(shape.dims[f]);

  // flat offset of each kept / traced multi-index
  auto offsets = [&](const std::vector<int>& factors, std::size_t count) {
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      std::size_t off = 0;
      for (int t = static_cast<int>(factors.size()) - 1; t >= 0; --t) {
        const int f = factors[t];
        off += (rest % shape.dims[f]) * shape.stride(f);
        rest /= shape.dims[f];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto kept_off = offsets(keep, kept_dim);
  const auto traced_off = offsets(traced, traced_dim);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (std::size_t i = 0; i < kept_dim; ++i) {
    for (std::size_t j = 0; j < kept_dim; ++j) {
      cplx acc = 0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += m(static_cast<Eigen::Index>(kept_off[i] + traced_off[t]),
                 static_cast<Eigen::Index>(kept_off[j] + traced_off[t]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return out;
}

namespace {

template <class Mat>
Mat kron_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <class Mat>
double hs_impl(const Mat& a) {
  std::vector<double> squares(static_cast<std::size_t>(a.size()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      squares[static_cast<std::size_t>(j * a.rows() + i)] = std::norm(a(i, j));
    }
  }
  return std::sqrt(pairwise_sum(squares));
}

template <class Mat>
double op_impl(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }
RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double hs_norm(const ComplexMatrix& a) { return hs_impl(a); }
double hs_norm(const RealMatrix& a) { return hs_impl(a); }
double op_norm(const ComplexMatrix& a) { return op_impl(a); }
double op_norm(const RealMatrix& a) { return op_impl(a); }

int numerical_rank(const RealMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<RealMatrix> svd(a);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0) && sv(0) > 0) ++rank;
  }
  return rank;
}

}  // namespace recoup
