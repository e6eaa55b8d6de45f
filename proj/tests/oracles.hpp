#pragma once

// Brute-force reference computations. Nothing here calls into the library
// except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Rows = std::vector<int>;

inline int total(const Rows& r) { return std::accumulate(r.begin(), r.end(), 0); }

/// Number of partitions of n with parts at most m.
inline long long partition_count(int n, int m) {
  if (n == 0) return 1;
  if (m == 0) return 0;
  long long s = 0;
  for (int p = std::min(n, m); p >= 1; --p) s += partition_count(n - p, p);
  return s;
}

inline void partitions_into(int n, int max_part, int max_rows, Rows& cur, std::vector<Rows>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_rows) return;
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_into(n - p, p, max_rows, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Rows> partitions(int n, int max_rows = 1 << 20) {
  std::vector<Rows> out;
  Rows cur;
  partitions_into(n, n, max_rows, cur, out);
  return out;
}

/// Standard tableaux counted by removing the largest entry from each corner.
inline long long count_syt(Rows r) {
  while (!r.empty() && r.back() == 0) r.pop_back();
  if (r.empty()) return 1;
  static std::map<Rows, long long> memo;
  if (auto it = memo.find(r); it != memo.end()) return it->second;
  long long s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const bool corner = (i + 1 == r.size()) || r[i + 1] < r[i];
    if (!corner) continue;
    Rows q = r;
    --q[i];
    s += count_syt(q);
  }
  memo[r] = s;
  return s;
}

/// Semistandard fillings with entries 0..d-1, each weighted by prod x[entry].
/// Returns the Schur polynomial value; with x = 1 it counts tableaux.
inline double schur_polynomial(const Rows& shape, const std::vector<double>& x) {
  const int d = static_cast<int>(x.size());
  if (static_cast<int>(shape.size()) > d) return 0.0;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < static_cast<int>(shape.size()); ++i)
    for (int j = 0; j < shape[static_cast<std::size_t>(i)]; ++j) cells.emplace_back(i, j);
  std::vector<std::vector<int>> t(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) t[i].assign(static_cast<std::size_t>(shape[i]), 0);
  double sum = 0.0;
  std::function<void(std::size_t, double)> fill = [&](std::size_t n, double w) {
    if (n == cells.size()) {
      sum += w;
      return;
    }
    const auto [i, j] = cells[n];
    int lo = 0;
    if (j > 0) lo = std::max(lo, t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]);
    if (i > 0) lo = std::max(lo, t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + 1);
    for (int v = lo; v < d; ++v) {
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      fill(n + 1, w * x[static_cast<std::size_t>(v)]);
    }
  };
  fill(0, 1.0);
  return sum;
}

inline long long count_ssyt(const Rows& shape, int d) {
  return std::llround(schur_polynomial(shape, std::vector<double>(static_cast<std::size_t>(d), 1.0)));
}

/// tr(P_lambda rho^{(x)k}) = dim[lambda] s_lambda(spectrum).
inline double projected_trace(const Rows& shape, const std::vector<double>& spectrum) {
  return static_cast<double>(count_syt(shape)) * schur_polynomial(shape, spectrum);
}

inline Rows cycle_type(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  Rows type;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

/// Class sizes of S_k by walking every permutation.
inline std::map<Rows, long long> class_sizes(int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<Rows, long long> out;
  do {
    ++out[cycle_type(perm)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace oracle
