#include "recoup/repsym.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

namespace recoup {

namespace {

// Key a tableau by its row sequence for the swap lookup.
struct TableauIndex {
  std::map<std::vector<int>, int> by_rows;
};

}  // namespace

RepMatrixSet young_orthogonal_rep(const Partition& lambda, std::size_t max_dim) {
  const Dimension dim = sk_dimension(lambda);
  if (dim.exact > max_dim) {
    throw ResourceError("irrep [" + lambda.to_string() + "] has dimension " +
                        dim.exact.str() + ", above the cap " + std::to_string(max_dim));
  }
  RepMatrixSet reps;
  reps.shape = lambda;
  reps.basis = standard_tableaux(lambda);
  const int n = reps.dim();
  const int k = lambda.k();

  TableauIndex index;
  for (int t = 0; t < n; ++t) index.by_rows.emplace(reps.basis[t].row_of, t);

  for (int i = 0; i + 1 < k; ++i) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < n; ++t) {
      const auto& tab = reps.basis[t];
      const double axial = tab.content(i + 1) - tab.content(i);
      g(t, t) = 1.0 / axial;
      if (std::abs(axial) > 1.0) {
        auto swapped = tab.row_of;
        std::swap(swapped[i], swapped[i + 1]);
        const int u = index.by_rows.at(swapped);
        g(u, t) = std::sqrt(1.0 - 1.0 / (axial * axial));
      }
    }
    reps.generators.push_back(std::move(g));
  }
  return reps;
}

std::shared_ptr<const RepMatrixSet> cached_rep(const Partition& lambda) {
  static std::shared_mutex mutex;
  static std::map<Partition, std::shared_ptr<const RepMatrixSet>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(lambda); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const RepMatrixSet>(young_orthogonal_rep(lambda));
  std::unique_lock lock(mutex);
  return cache.emplace(lambda, std::move(built)).first->second;
}

std::vector<int> reduced_word(const Permutation& pi) {
  // Sorting the image array by right multiplications s_i gives
  // pi s_{i1} ... s_{im} = id, hence pi = s_{im} ... s_{i1}.
  std::vector<int> img(pi.images().begin(), pi.images().end());
  std::vector<int> swaps;
  const int k = pi.size();
  for (int pass = 0; pass < k; ++pass) {
    bool changed = false;
    for (int i = 0; i + 1 < k; ++i) {
      if (img[i] > img[i + 1]) {
        std::swap(img[i], img[i + 1]);
        swaps.push_back(i);
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

Eigen::MatrixXd represent_word(const RepMatrixSet& reps, const std::vector<int>& word) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(reps.dim(), reps.dim());
  for (int i : word) out = out * reps.generators.at(static_cast<std::size_t>(i));
  return out;
}

Eigen::MatrixXd represent(const RepMatrixSet& reps, const Permutation& pi) {
  if (pi.size() != reps.k()) throw std::invalid_argument("permutation size differs from k");
  return represent_word(reps, reduced_word(pi));
}

namespace {

using CharKey = std::pair<std::vector<int>, std::vector<int>>;

struct CharacterCache {
  std::shared_mutex mutex;
  std::map<CharKey, BigInt> values;
};

CharacterCache& character_cache() {
  static CharacterCache cache;
  return cache;
}

// Murnaghan-Nakayama on beta-sets: removing a rim hook of length h moves one
// bead from b to b - h; the sign counts beads jumped over.
BigInt mn_recursive(const std::vector<int>& shape, const std::vector<int>& parts,
                    std::size_t next) {
  if (next == parts.size()) return 1;
  CharKey key{shape, std::vector<int>(parts.begin() + static_cast<long>(next), parts.end())};
  auto& cache = character_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.values.find(key); it != cache.values.end()) return it->second;
  }

  const int h = parts[next];
  const int n = static_cast<int>(shape.size());
  std::vector<int> beta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) beta[i] = shape[i] + (n - 1 - i);  // strictly decreasing

  BigInt total = 0;
  for (int i = 0; i < n; ++i) {
    const int target = beta[i] - h;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int jumped = 0;
    for (int b : beta) {
      if (b > target && b < beta[i]) ++jumped;
    }
    std::vector<int> moved = beta;
    moved[i] = target;
    std::sort(moved.begin(), moved.end(), std::greater<>());
    std::vector<int> smaller(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) smaller[r] = moved[r] - (n - 1 - r);
    while (!smaller.empty() && smaller.back() == 0) smaller.pop_back();
    BigInt sub = mn_recursive(smaller, parts, next + 1);
    if (jumped % 2) total -= sub;
    else total += sub;
  }

  std::unique_lock lock(cache.mutex);
  cache.values.emplace(std::move(key), total);
  return total;
}

}  // namespace

BigInt character(const Partition& lambda, const Partition& cycle_type) {
  if (lambda.k() != cycle_type.k()) {
    throw std::invalid_argument("character: partition sizes differ");
  }
  std::vector<int> shape(lambda.rows().begin(), lambda.rows().end());
  std::vector<int> parts(cycle_type.rows().begin(), cycle_type.rows().end());
  return mn_recursive(shape, parts, 0);
}

double character_value(const Partition& lambda, const Partition& cycle_type) {
  return character(lambda, cycle_type).convert_to<double>();
}

}  // namespace recoup
