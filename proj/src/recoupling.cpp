#include "recoup/recoupling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "recoup/intertwiner.hpp"

namespace recoup {

std::string SixLabels::to_string() const {
  return alpha.to_string() + ";" + beta.to_string() + ";" + gamma.to_string() + ";" +
         mu.to_string() + ";" + nu.to_string() + ";" + lambda.to_string();
}

SixLabels parse_labels(std::string_view text) {
  std::vector<Partition> parts;
  std::istringstream in{std::string(text)};
  std::string token;
  while (std::getline(in, token, ';')) parts.push_back(Partition::parse(token));
  if (parts.size() != 6) {
    throw std::invalid_argument("expected six ';'-separated partitions, got " +
                                std::to_string(parts.size()));
  }
  SixLabels labels{parts[0], parts[1], parts[2], parts[3], parts[4], parts[5]};
  const int k = labels.k();
  for (const auto& p : parts) {
    if (p.k() != k) throw std::invalid_argument("all six labels must partition the same k");
  }
  return labels;
}

double RecouplingTensor::at(int i, int j, int k, int l) const {
  const auto& s = shape;
  return entries.at(static_cast<std::size_t>(((i * s[1] + j) * s[2] + k) * s[3] + l));
}

RealMatrix RecouplingTensor::as_matrix() const {
  const auto& s = shape;
  RealMatrix m = RealMatrix::Zero(s[2] * s[3], s[0] * s[1]);
  if (empty()) return m;
  for (int i = 0; i < s[0]; ++i)
    for (int j = 0; j < s[1]; ++j)
      for (int k = 0; k < s[2]; ++k)
        for (int l = 0; l < s[3]; ++l) m(k * s[3] + l, i * s[1] + j) = at(i, j, k, l);
  return m;
}

namespace {

// ((alpha beta) gamma) tree: (phi^{ab}_mu,i (x) 1_gamma) phi^{mu gamma}_lambda,j
std::vector<RealMatrix> left_tree(const SixLabels& s) {
  const auto ab = cached_cg(s.alpha, s.beta, s.mu);
  const auto mg = cached_cg(s.mu, s.gamma, s.lambda);
  const Eigen::Index dg = sk_dimension_int(s.gamma);
  const RealMatrix id_g = RealMatrix::Identity(dg, dg);
  std::vector<RealMatrix> out;
  for (const auto& outer : ab->maps) {
    const RealMatrix lifted = kron(outer, id_g);
    for (const auto& inner : mg->maps) out.push_back(lifted * inner);
  }
  return out;
}

// (alpha (beta gamma)) tree: (1_alpha (x) phi^{bg}_nu,k) phi^{alpha nu}_lambda,l
std::vector<RealMatrix> right_tree(const SixLabels& s) {
  const auto bg = cached_cg(s.beta, s.gamma, s.nu);
  const auto an = cached_cg(s.alpha, s.nu, s.lambda);
  const Eigen::Index da = sk_dimension_int(s.alpha);
  const RealMatrix id_a = RealMatrix::Identity(da, da);
  std::vector<RealMatrix> out;
  for (const auto& outer : bg->maps) {
    const RealMatrix lifted = kron(id_a, outer);
    for (const auto& inner : an->maps) out.push_back(lifted * inner);
  }
  return out;
}

void check_same_k(const SixLabels& s) {
  const int k = s.k();
  for (const Partition* p : {&s.alpha, &s.beta, &s.gamma, &s.mu, &s.nu}) {
    if (p->k() != k) throw std::invalid_argument("recoupling labels must partition the same k");
  }
}

}  // namespace

RecouplingTensor recoupling_tensor(const SixLabels& labels) {
  check_same_k(labels);
  RecouplingTensor t;
  t.labels = labels;
  t.shape = {kronecker_int(labels.alpha, labels.beta, labels.mu),
             kronecker_int(labels.mu, labels.gamma, labels.lambda),
             kronecker_int(labels.beta, labels.gamma, labels.nu),
             kronecker_int(labels.alpha, labels.nu, labels.lambda)};
  for (int n : t.shape) {
    if (n == 0) return t;
  }
  const auto lhs = left_tree(labels);
  const auto rhs = right_tree(labels);
  const double inv_dim = 1.0 / sk_dimension_int(labels.lambda);
  const auto& s = t.shape;
  t.entries.resize(static_cast<std::size_t>(s[0] * s[1] * s[2] * s[3]));
  std::vector<double> squares;
  squares.reserve(t.entries.size());
  for (int i = 0; i < s[0]; ++i) {
    for (int j = 0; j < s[1]; ++j) {
      const RealMatrix& in = lhs[static_cast<std::size_t>(i * s[1] + j)];
      for (int k = 0; k < s[2]; ++k) {
        for (int l = 0; l < s[3]; ++l) {
          const RealMatrix& out = rhs[static_cast<std::size_t>(k * s[3] + l)];
          const double v = inv_dim * (out.transpose() * in).trace();
          t.entries[static_cast<std::size_t>(((i * s[1] + j) * s[2] + k) * s[3] + l)] = v;
          squares.push_back(v * v);
        }
      }
    }
  }
  t.hs = std::sqrt(pairwise_sum(squares));
  return t;
}

double RecouplingUnitary::unitarity_residual() const {
  const Eigen::Index n = matrix.cols();
  if (matrix.rows() != n) return std::numeric_limits<double>::infinity();
  return hs_norm(RealMatrix(matrix.transpose() * matrix - RealMatrix::Identity(n, n)));
}

long long associativity_count_mu(const Partition& alpha, const Partition& beta,
                                 const Partition& gamma, const Partition& lambda) {
  long long total = 0;
  for (const auto& mu : enumerate_partitions(lambda.k())) {
    total += static_cast<long long>(kronecker_int(alpha, beta, mu)) *
             kronecker_int(mu, gamma, lambda);
  }
  return total;
}

long long associativity_count_nu(const Partition& alpha, const Partition& beta,
                                 const Partition& gamma, const Partition& lambda) {
  long long total = 0;
  for (const auto& nu : enumerate_partitions(lambda.k())) {
    total += static_cast<long long>(kronecker_int(beta, gamma, nu)) *
             kronecker_int(alpha, nu, lambda);
  }
  return total;
}

RecouplingUnitary full_recoupling_unitary(const Partition& alpha, const Partition& beta,
                                          const Partition& gamma, const Partition& lambda) {
  const int k = lambda.k();
  RecouplingUnitary u;
  int cols = 0;
  int rows = 0;
  const auto shapes = enumerate_partitions(k);
  for (const auto& mu : shapes) {
    const int n = kronecker_int(alpha, beta, mu) * kronecker_int(mu, gamma, lambda);
    if (n == 0) continue;
    u.mus.push_back(mu);
    u.mu_offsets.push_back(cols);
    cols += n;
  }
  for (const auto& nu : shapes) {
    const int n = kronecker_int(beta, gamma, nu) * kronecker_int(alpha, nu, lambda);
    if (n == 0) continue;
    u.nus.push_back(nu);
    u.nu_offsets.push_back(rows);
    rows += n;
  }
  if (rows != cols) {
    throw std::logic_error("recoupling dimension mismatch: " + std::to_string(cols) + " vs " +
                           std::to_string(rows));
  }
  u.matrix = RealMatrix::Zero(rows, cols);
  for (std::size_t m = 0; m < u.mus.size(); ++m) {
    for (std::size_t n = 0; n < u.nus.size(); ++n) {
      const auto t = recoupling_tensor({alpha, beta, gamma, u.mus[m], u.nus[n], lambda});
      if (t.empty()) continue;
      const RealMatrix block = t.as_matrix();
      u.matrix.block(u.nu_offsets[n], u.mu_offsets[m], block.rows(), block.cols()) = block;
    }
  }
  return u;
}

double SwapCheck::relative_residual() const {
  const double predicted = predicted_ratio * rhs_hs;
  const double scale = std::max(lhs_hs, predicted);
  if (scale < kStructuralZero) return 0.0;
  return std::abs(lhs_hs - predicted) / scale;
}

SixLabels swap_beta_lambda(const SixLabels& s) {
  // [a b m; g l n] -> [a m b; g n l]
  return {s.alpha, s.mu, s.gamma, s.beta, s.lambda, s.nu};
}

SixLabels swap_alpha_gamma(const SixLabels& s) {
  // [a b m; g l n] -> [m b a; n l g]
  return {s.mu, s.beta, s.nu, s.alpha, s.gamma, s.lambda};
}

namespace {

double dim_ratio(const Partition& n1, const Partition& n2, const Partition& d1,
                 const Partition& d2) {
  return std::sqrt(static_cast<double>(sk_dimension_int(n1)) * sk_dimension_int(n2) /
                   (static_cast<double>(sk_dimension_int(d1)) * sk_dimension_int(d2)));
}

}  // namespace

SwapCheck column_swap_check(const SixLabels& labels) {
  return {recoupling_tensor(labels).hs, recoupling_tensor(swap_beta_lambda(labels)).hs,
          dim_ratio(labels.mu, labels.nu, labels.beta, labels.lambda)};
}

SwapCheck column_swap_check_ag(const SixLabels& labels) {
  return {recoupling_tensor(labels).hs, recoupling_tensor(swap_alpha_gamma(labels)).hs,
          dim_ratio(labels.mu, labels.nu, labels.alpha, labels.gamma)};
}

}  // namespace recoup
