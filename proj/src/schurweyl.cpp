#include "recoup/schurweyl.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "recoup/repsym.hpp"

namespace recoup {

namespace {

using HighFloat = boost::multiprecision::cpp_bin_float_100;

std::size_t checked_power(std::size_t base, int k, std::size_t limit) {
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) {
    if (n > limit / base) return limit + 1;
    n *= base;
  }
  return n;
}

// (dim[lambda] / k!) chi_lambda(pi) for every pi in all_permutations(k) order.
std::vector<double> group_average_coefficients(const Partition& lambda,
                                               const std::vector<Permutation>& perms) {
  const double scale = static_cast<double>(sk_dimension(lambda).exact) /
                       static_cast<double>(factorial(lambda.k()));
  std::map<Partition, double> by_type;
  std::vector<double> out;
  out.reserve(perms.size());
  for (const auto& pi : perms) {
    const Partition t = pi.cycle_type();
    auto it = by_type.find(t);
    if (it == by_type.end()) it = by_type.emplace(t, character_value(lambda, t)).first;
    out.push_back(scale * it->second);
  }
  return out;
}

// out += c * U(pi) m, column by column (U(pi) e_i = e_{map[i]}).
void accumulate_permuted_rows(const std::vector<std::uint32_t>& map, double c,
                              const RealMatrix& m, RealMatrix& out) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double* src = m.col(j).data();
    double* dst = out.col(j).data();
    for (Eigen::Index i = 0; i < n; ++i) dst[map[static_cast<std::size_t>(i)]] += c * src[i];
  }
}

std::array<bool, 3> active_factors(Subsystem which) {
  switch (which) {
    case Subsystem::A: return {true, false, false};
    case Subsystem::B: return {false, true, false};
    case Subsystem::C: return {false, false, true};
    case Subsystem::AB: return {true, true, false};
    case Subsystem::BC: return {false, true, true};
    case Subsystem::ABC: return {true, true, true};
  }
  return {false, false, false};
}

int subsystem_dim(Subsystem which, TripartiteDims dims) {
  const auto act = active_factors(which);
  return (act[0] ? dims.a : 1) * (act[1] ? dims.b : 1) * (act[2] ? dims.c : 1);
}

// sum_pi c_pi U_S(pi) m for the isotypic projector of lambda on subsystem S.
RealMatrix apply_subsystem_projector(const Partition& lambda, Subsystem which, TripartiteDims dims,
                                     int k, const RealMatrix& m) {
  RealMatrix out = RealMatrix::Zero(m.rows(), m.cols());
  if (lambda.num_rows() > subsystem_dim(which, dims)) return out;
  const auto perms = all_permutations(k);
  const auto coeffs = group_average_coefficients(lambda, perms);
  const std::array<int, 3> local{dims.a, dims.b, dims.c};
  const auto act = active_factors(which);
  for (std::size_t p = 0; p < perms.size(); ++p) {
    if (coeffs[p] == 0.0) continue;
    accumulate_permuted_rows(permutation_index_map(perms[p], local, act), coeffs[p], m, out);
  }
  return out;
}

void check_tripartite_cap(TripartiteDims dims, int k, std::size_t cap) {
  if (dims.a < 1 || dims.b < 1 || dims.c < 1) throw std::invalid_argument("dimensions must be positive");
  const std::size_t n = checked_power(static_cast<std::size_t>(dims.total()), k, cap);
  if (n > cap) {
    throw ResourceError("tripartite space of dimension (" + std::to_string(dims.total()) + ")^" +
                        std::to_string(k) + " exceeds the dense cap " + std::to_string(cap));
  }
}

}  // namespace

std::vector<std::uint32_t> permutation_index_map(const Permutation& pi,
                                                 std::span<const int> local_dims,
                                                 std::span<const bool> active) {
  const int k = pi.size();
  const int f = static_cast<int>(local_dims.size());
  if (active.size() != local_dims.size()) {
    throw std::invalid_argument("permutation_index_map: one activity flag per factor");
  }
  std::size_t per_copy = 1;
  for (int d : local_dims) {
    if (d < 1) throw std::invalid_argument("permutation_index_map: factor dimension < 1");
    per_copy *= static_cast<std::size_t>(d);
  }
  const std::size_t total = checked_power(per_copy, k, kImplicitProjectorCap);
  if (total > kImplicitProjectorCap) {
    throw ResourceError("permutation action on more than " +
                        std::to_string(kImplicitProjectorCap) + " basis states");
  }
  // Digit positions run (copy, factor) with copy slowest; stride of each.
  const int positions = k * f;
  std::vector<std::size_t> stride(static_cast<std::size_t>(positions));
  std::size_t s = 1;
  for (int p = positions - 1; p >= 0; --p) {
    stride[static_cast<std::size_t>(p)] = s;
    s *= static_cast<std::size_t>(local_dims[static_cast<std::size_t>(p % f)]);
  }
  std::vector<std::size_t> dest(static_cast<std::size_t>(positions));
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < f; ++t) {
      const int to = active[static_cast<std::size_t>(t)] ? pi(j) : j;
      dest[static_cast<std::size_t>(j * f + t)] = stride[static_cast<std::size_t>(to * f + t)];
    }
  }
  std::vector<std::uint32_t> map(total);
  std::vector<int> digit(static_cast<std::size_t>(positions), 0);
  std::size_t out = 0;
  for (std::size_t in = 0; in < total; ++in) {
    map[in] = static_cast<std::uint32_t>(out);
    // Odometer increment on the input digits, updating the output index.
    for (int p = positions - 1; p >= 0; --p) {
      const auto up = static_cast<std::size_t>(p);
      const int radix = local_dims[static_cast<std::size_t>(p % f)];
      if (++digit[up] < radix) {
        out += dest[up];
        break;
      }
      digit[up] = 0;
      out -= dest[up] * static_cast<std::size_t>(radix - 1);
    }
  }
  return map;
}

std::vector<std::uint32_t> permutation_index_map(const Permutation& pi, int d) {
  const std::array<int, 1> local{d};
  const std::array<bool, 1> act{true};
  return permutation_index_map(pi, local, act);
}

namespace {

template <typename Vec>
Vec apply_permutation_impl(const Permutation& pi, const Vec& v, int d) {
  const std::size_t expected = checked_power(static_cast<std::size_t>(d), pi.size(),
                                             kImplicitProjectorCap);
  if (d < 1 || static_cast<std::size_t>(v.size()) != expected) {
    throw std::invalid_argument("apply_permutation: vector length " + std::to_string(v.size()) +
                                " is not " + std::to_string(d) + "^" + std::to_string(pi.size()));
  }
  const auto map = permutation_index_map(pi, d);
  Vec out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(map[i]) = v(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace

ComplexVector apply_permutation(const Permutation& pi, const ComplexVector& v, int d) {
  return apply_permutation_impl(pi, v, d);
}

RealVector apply_permutation(const Permutation& pi, const RealVector& v, int d) {
  return apply_permutation_impl(pi, v, d);
}

IsotypicProjector::IsotypicProjector(Partition lambda, int d, int k)
    : lambda_(std::move(lambda)), d_(d), k_(k) {
  if (d < 1 || k < 1) throw std::invalid_argument("isotypic_projector: d and k must be positive");
  if (lambda_.k() != k) throw std::invalid_argument("isotypic_projector: lambda must partition k");
  total_ = checked_power(static_cast<std::size_t>(d), k, kImplicitProjectorCap);
  if (total_ > kImplicitProjectorCap) {
    throw ResourceError("isotypic projector on " + std::to_string(d) + "^" + std::to_string(k) +
                        " states exceeds the cap " + std::to_string(kImplicitProjectorCap));
  }
  const double work = static_cast<double>(factorial(k)) * static_cast<double>(total_);
  if (work > 5e9) {
    throw ResourceError("group average over " + std::to_string(k) +
                        "! permutations is too expensive at this size");
  }
  zero_ = lambda_.num_rows() > d;
  if (!zero_) {
    perms_ = all_permutations(k);
    coeffs_ = group_average_coefficients(lambda_, perms_);
  }
  if (total_ <= kDenseProjectorCap) {
    const auto n = static_cast<Eigen::Index>(total_);
    RealMatrix p = RealMatrix::Zero(n, n);
    for (std::size_t i = 0; i < perms_.size(); ++i) {
      const auto map = permutation_index_map(perms_[i], d_);
      for (Eigen::Index c = 0; c < n; ++c) p(map[static_cast<std::size_t>(c)], c) += coeffs_[i];
    }
    dense_ = std::move(p);
  }
}

const RealMatrix& IsotypicProjector::dense() const {
  if (!dense_) throw std::logic_error("isotypic projector is implicit at this size");
  return *dense_;
}

ComplexVector IsotypicProjector::apply(const ComplexVector& v) const {
  if (static_cast<std::size_t>(v.size()) != total_) {
    throw std::invalid_argument("IsotypicProjector::apply: length mismatch");
  }
  if (dense_) return *dense_ * v;
  ComplexVector out = ComplexVector::Zero(v.size());
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    const auto map = permutation_index_map(perms_[i], d_);
    for (std::size_t j = 0; j < map.size(); ++j)
      out(map[j]) += coeffs_[i] * v(static_cast<Eigen::Index>(j));
  }
  return out;
}

long long IsotypicProjector::expected_rank() const {
  return static_cast<long long>(sk_dimension(lambda_).exact) *
         static_cast<long long>(weyl_dimension(lambda_, d_));
}

IsotypicProjector isotypic_projector(const Partition& lambda, int d, int k) {
  return IsotypicProjector(lambda, d, k);
}

namespace {

struct ClassWeights {
  std::vector<Partition> types;
  std::vector<HighFloat> weights;  // |C_t| / k! * prod_j p_j^{m_j}
};

ClassWeights class_weights(std::span<const double> spectrum, int k) {
  std::vector<HighFloat> power_sums(static_cast<std::size_t>(k) + 1, HighFloat(0));
  for (double x : spectrum) {
    const HighFloat hx(x);
    HighFloat acc(1);
    for (int j = 1; j <= k; ++j) {
      acc *= hx;
      power_sums[static_cast<std::size_t>(j)] += acc;
    }
  }
  const HighFloat order(factorial(k));
  ClassWeights out;
  for (const auto& cls : conjugacy_classes(k)) {
    HighFloat w = HighFloat(cls.class_size) / order;
    for (int part : cls.cycles.rows()) w *= power_sums[static_cast<std::size_t>(part)];
    out.types.push_back(cls.cycles);
    out.weights.push_back(std::move(w));
  }
  return out;
}

HighFloat trace_from_weights(const Partition& lambda, const ClassWeights& cw) {
  HighFloat sum(0);
  for (std::size_t t = 0; t < cw.types.size(); ++t) {
    sum += HighFloat(character(lambda, cw.types[t])) * cw.weights[t];
  }
  return sum * HighFloat(sk_dimension(lambda).exact);
}

void check_spectrum(std::span<const double> spectrum) {
  if (spectrum.empty()) throw std::invalid_argument("projected_trace: empty spectrum");
  for (double x : spectrum) {
    if (!(x >= -1e-10)) throw std::invalid_argument("projected_trace: negative eigenvalue");
  }
}

}  // namespace

double projected_trace_from_spectrum(const Partition& lambda, std::span<const double> spectrum) {
  check_spectrum(spectrum);
  if (lambda.num_rows() > static_cast<int>(spectrum.size())) return 0.0;
  return static_cast<double>(trace_from_weights(lambda, class_weights(spectrum, lambda.k())));
}

double projected_trace(const Partition& lambda, const ComplexMatrix& rho, int k) {
  if (lambda.k() != k) throw std::invalid_argument("projected_trace: lambda must partition k");
  const RealVector ev = hermitian_eigenvalues(rho);
  return projected_trace_from_spectrum(lambda, std::span<const double>(ev.data(), ev.size()));
}

std::vector<ProjectedTrace> projected_traces(std::span<const double> spectrum, int k) {
  check_spectrum(spectrum);
  const ClassWeights cw = class_weights(spectrum, k);
  std::vector<ProjectedTrace> out;
  for (const auto& lambda : enumerate_partitions(k, static_cast<int>(spectrum.size()))) {
    const HighFloat t = trace_from_weights(lambda, cw);
    ProjectedTrace row{lambda, static_cast<double>(t), -std::numeric_limits<double>::infinity()};
    if (t > 0) row.log_trace = static_cast<double>(boost::multiprecision::log(t));
    out.push_back(std::move(row));
  }
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& rho, int k) {
  if (k < 1) throw std::invalid_argument("tensor_power: k must be positive");
  ComplexMatrix out = rho;
  for (int i = 1; i < k; ++i) out = kron(out, rho);
  return out;
}

double projected_trace_dense(const Partition& lambda, const ComplexMatrix& rho, int k) {
  const auto p = isotypic_projector(lambda, static_cast<int>(rho.rows()), k);
  const ComplexMatrix power = tensor_power(rho, k);
  return (p.dense().cast<cplx>() * power).trace().real();
}

RealMatrix subsystem_projector(const Partition& lambda, Subsystem which, TripartiteDims dims,
                               int k) {
  check_tripartite_cap(dims, k, kDenseProjectorCap);
  const auto n = static_cast<Eigen::Index>(checked_power(static_cast<std::size_t>(dims.total()),
                                                         k, kDenseProjectorCap));
  return apply_subsystem_projector(lambda, which, dims, k, RealMatrix::Identity(n, n));
}

TripartiteOperators tripartite_projectors(const SixLabels& labels, TripartiteDims dims, int k,
                                          std::size_t cap) {
  if (labels.k() != k) throw std::invalid_argument("tripartite_projectors: labels must partition k");
  check_tripartite_cap(dims, k, cap);
  const RealMatrix p_lambda = subsystem_projector(labels.lambda, Subsystem::ABC, dims, k);
  auto local = [&](RealMatrix m) {
    m = apply_subsystem_projector(labels.alpha, Subsystem::A, dims, k, m);
    m = apply_subsystem_projector(labels.beta, Subsystem::B, dims, k, m);
    return apply_subsystem_projector(labels.gamma, Subsystem::C, dims, k, m);
  };
  TripartiteOperators out;
  out.q_tilde = local(apply_subsystem_projector(labels.mu, Subsystem::AB, dims, k, p_lambda));
  out.p_tilde = local(apply_subsystem_projector(labels.nu, Subsystem::BC, dims, k, p_lambda));
  return out;
}

std::shared_ptr<const LocalIsotypic> local_isotypic(const Partition& alpha, int d, int k) {
  using Key = std::tuple<Partition, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const LocalIsotypic>> cache;
  if (alpha.k() != k) throw std::invalid_argument("local_isotypic: alpha must partition k");
  Key key{alpha, d};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<LocalIsotypic>();
  built->shape = alpha;
  built->d = d;
  const auto proj = isotypic_projector(alpha, d, k);
  const RealMatrix& p = proj.dense();
  const auto r = static_cast<Eigen::Index>(proj.is_zero() ? 0 : proj.expected_rank());
  if (r > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(p);
    // Eigenvalues ascending: the image is spanned by the last r vectors.
    built->basis = eig.eigenvectors().rightCols(r);
    const RealVector vals = eig.eigenvalues().tail(r);
    if ((vals.array() - 1.0).abs().maxCoeff() > 1e-8 ||
        (r < p.rows() && std::abs(eig.eigenvalues()(p.rows() - r - 1)) > 1e-8)) {
      throw std::logic_error("isotypic projector for " + alpha.to_string() +
                             " does not have the Schur-Weyl rank");
    }
  } else {
    built->basis = RealMatrix::Zero(p.rows(), 0);
  }
  for (const auto& pi : all_permutations(k)) {
    const auto map = permutation_index_map(pi, d);
    RealMatrix moved = RealMatrix::Zero(built->basis.rows(), built->basis.cols());
    accumulate_permuted_rows(map, 1.0, built->basis, moved);
    built->restricted.push_back(built->basis.transpose() * moved);
  }
  std::unique_lock lock(mutex);
  return cache.emplace(std::move(key), std::move(built)).first->second;
}

TripartiteSector::TripartiteSector(Partition alpha, Partition beta, Partition gamma,
                                   TripartiteDims dims, int k)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)), dims_(dims), k_(k) {
  check_tripartite_cap(dims, k, kDenseProjectorCap);
  la_ = local_isotypic(alpha_, dims.a, k);
  lb_ = local_isotypic(beta_, dims.b, k);
  lc_ = local_isotypic(gamma_, dims.c, k);
  size_ = la_->basis.cols() * lb_->basis.cols() * lc_->basis.cols();
}

RealMatrix TripartiteSector::group_average(const Partition& shape, bool use_a, bool use_b,
                                           bool use_c) const {
  const Eigen::Index ra = la_->basis.cols(), rb = lb_->basis.cols(), rc = lc_->basis.cols();
  const Eigen::Index inner = (use_a ? ra : 1) * (use_b ? rb : 1) * (use_c ? rc : 1);
  RealMatrix acc = RealMatrix::Zero(inner, inner);
  const int rows_allowed = (use_a ? dims_.a : 1) * (use_b ? dims_.b : 1) * (use_c ? dims_.c : 1);
  if (size_ == 0 || shape.num_rows() > rows_allowed) return RealMatrix::Zero(size_, size_);
  if (shape.k() != k_) throw std::invalid_argument("sector projector label must partition k");
  const auto perms = all_permutations(k_);
  const auto coeffs = group_average_coefficients(shape, perms);
  for (std::size_t p = 0; p < perms.size(); ++p) {
    if (coeffs[p] == 0.0) continue;
    RealMatrix term = RealMatrix::Ones(1, 1);
    if (use_a) term = kron(term, la_->restricted[p]);
    if (use_b) term = kron(term, lb_->restricted[p]);
    if (use_c) term = kron(term, lc_->restricted[p]);
    acc += coeffs[p] * term;
  }
  if (!use_a) acc = kron(RealMatrix::Identity(ra, ra), acc);
  if (!use_c) acc = kron(acc, RealMatrix::Identity(rc, rc));
  return acc;
}

const RealMatrix& TripartiteSector::projector_ab(const Partition& mu) const {
  if (auto it = ab_cache_.find(mu); it != ab_cache_.end()) return it->second;
  return ab_cache_.emplace(mu, group_average(mu, true, true, false)).first->second;
}

const RealMatrix& TripartiteSector::projector_bc(const Partition& nu) const {
  if (auto it = bc_cache_.find(nu); it != bc_cache_.end()) return it->second;
  return bc_cache_.emplace(nu, group_average(nu, false, true, true)).first->second;
}

const RealMatrix& TripartiteSector::projector_abc(const Partition& lambda) const {
  if (auto it = abc_cache_.find(lambda); it != abc_cache_.end()) return it->second;
  return abc_cache_.emplace(lambda, group_average(lambda, true, true, true)).first->second;
}

RealMatrix TripartiteSector::p_tilde(const Partition& nu, const Partition& lambda) const {
  return projector_abc(lambda) * projector_bc(nu);
}

RealMatrix TripartiteSector::q_tilde(const Partition& mu, const Partition& lambda) const {
  return projector_abc(lambda) * projector_ab(mu);
}

RealMatrix TripartiteSector::embedding() const {
  const int a = dims_.a, b = dims_.b, c = dims_.c;
  const std::size_t n = checked_power(static_cast<std::size_t>(dims_.total()), k_,
                                      kDenseProjectorCap);
  const RealMatrix product = kron(kron(la_->basis, lb_->basis), lc_->basis);
  // Row of `product` is (iA, iB, iC) with iA slowest; move it to the fused index.
  const std::size_t na = checked_power(static_cast<std::size_t>(a), k_, n);
  const std::size_t nb = checked_power(static_cast<std::size_t>(b), k_, n);
  const std::size_t nc = checked_power(static_cast<std::size_t>(c), k_, n);
  RealMatrix out(static_cast<Eigen::Index>(n), product.cols());
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      for (std::size_t ic = 0; ic < nc; ++ic) {
        std::size_t full = 0;
        std::size_t xa = ia, xb = ib, xc = ic, weight = 1;
        for (int j = k_ - 1; j >= 0; --j) {
          const std::size_t local = (xa % a * b + xb % b) * c + xc % c;
          full += local * weight;
          weight *= static_cast<std::size_t>(dims_.total());
          xa /= a;
          xb /= b;
          xc /= c;
        }
        out.row(static_cast<Eigen::Index>(full)) =
            product.row(static_cast<Eigen::Index>((ia * nb + ib) * nc + ic));
      }
    }
  }
  return out;
}

ComplexMatrix TripartiteSector::compress(const ComplexMatrix& rho) const {
  const Eigen::Index d = dims_.total();
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("compress: state must act on C^{abc}");
  }
  if (size_ == 0) return ComplexMatrix::Zero(0, 0);
  const RealMatrix emb = embedding();
  ComplexMatrix y = emb.cast<cplx>();
  const Eigen::Index n = y.rows();
  // Apply rho on copy j: view the index as (left, d, right) with right = d^{k-1-j}.
  ComplexVector scratch(d);
  for (int j = 0; j < k_; ++j) {
    Eigen::Index right = 1;
    for (int t = j + 1; t < k_; ++t) right *= d;
    const Eigen::Index left = n / (right * d);
    for (Eigen::Index col = 0; col < y.cols(); ++col) {
      cplx* v = y.col(col).data();
      for (Eigen::Index l = 0; l < left; ++l) {
        for (Eigen::Index r = 0; r < right; ++r) {
          for (Eigen::Index x = 0; x < d; ++x) scratch(x) = v[(l * d + x) * right + r];
          const ComplexVector moved = rho * scratch;
          for (Eigen::Index x = 0; x < d; ++x) v[(l * d + x) * right + r] = moved(x);
        }
      }
    }
  }
  return emb.transpose().cast<cplx>() * y;
}

SchurWeylNorms hs_norm_via_schurweyl(const TripartiteSector& sector, const Partition& mu,
                                     const Partition& nu, const Partition& lambda,
                                     bool with_op_norm) {
  const TripartiteDims dims = sector.dims();
  SchurWeylNorms out;
  out.identity_dim = static_cast<double>(sk_dimension(lambda).exact) *
                     static_cast<double>(weyl_dimension(sector.alpha(), dims.a)) *
                     static_cast<double>(weyl_dimension(sector.beta(), dims.b)) *
                     static_cast<double>(weyl_dimension(sector.gamma(), dims.c));
  if (sector.empty()) return out;
  // Inside the sector P_abc = 1, so P~Q~ = P_lambda P_nu P_lambda P_mu = P_lambda P_nu P_mu.
  const RealMatrix x = sector.projector_abc(lambda) * sector.projector_bc(nu) *
                       sector.projector_ab(mu);
  out.raw_hs = hs_norm(x);
  if (with_op_norm) out.op_norm = op_norm(x);
  if (out.identity_dim == 0.0) {
    if (out.raw_hs > 1e-9) {
      throw std::logic_error("P~Q~ is nonzero although the identity factor is empty");
    }
    return out;
  }
  out.hs = out.raw_hs / std::sqrt(out.identity_dim);
  return out;
}

SchurWeylNorms hs_norm_via_schurweyl(const SixLabels& labels, TripartiteDims dims, int k,
                                     bool with_op_norm) {
  if (labels.k() != k) throw std::invalid_argument("hs_norm_via_schurweyl: labels must partition k");
  const TripartiteSector sector(labels.alpha, labels.beta, labels.gamma, dims, k);
  return hs_norm_via_schurweyl(sector, labels.mu, labels.nu, labels.lambda, with_op_norm);
}

OverlapTraces overlap_trace(const RealMatrix& p_tilde, const RealMatrix& q_tilde,
                            const ComplexMatrix& rho, int k) {
  const ComplexMatrix power = tensor_power(rho, k);
  if (p_tilde.rows() != power.rows() || q_tilde.rows() != power.rows()) {
    throw std::invalid_argument("overlap_trace: operator and state sizes differ");
  }
  const ComplexMatrix q_rho = q_tilde.cast<cplx>() * power;
  OverlapTraces out;
  out.overlap = (p_tilde.transpose().cast<cplx>().cwiseProduct(q_rho)).sum();
  out.trace_p = (p_tilde.cast<cplx>().cwiseProduct(power.transpose())).sum().real();
  out.trace_q = q_rho.trace().real();
  return out;
}

OverlapTraces overlap_trace(const TripartiteSector& sector, const Partition& mu,
                            const Partition& nu, const Partition& lambda,
                            const ComplexMatrix& compressed_rho) {
  OverlapTraces out;
  if (sector.empty()) return out;
  if (compressed_rho.rows() != sector.size()) {
    throw std::invalid_argument("overlap_trace: compressed state does not match the sector");
  }
  const RealMatrix& pl = sector.projector_abc(lambda);
  const RealMatrix p = pl * sector.projector_bc(nu);
  const RealMatrix q = pl * sector.projector_ab(mu);
  const RealMatrix pq = p * sector.projector_ab(mu);
  auto trace_with = [&](const RealMatrix& x) {
    return (x.cast<cplx>().cwiseProduct(compressed_rho.transpose())).sum();
  };
  out.overlap = trace_with(pq);
  out.trace_p = trace_with(p).real();
  out.trace_q = trace_with(q).real();
  return out;
}

}  // namespace recoup
