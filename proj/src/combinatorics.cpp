#include "recoup/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace recoup {

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) {
      throw std::invalid_argument("partition rows must be positive");
    }
    if (i > 0 && rows_[i] > rows_[i - 1]) {
      throw std::invalid_argument("partition rows must be non-increasing");
    }
  }
  k_ = std::accumulate(rows_.begin(), rows_.end(), 0);
}

Partition Partition::trivial(int k) { return Partition({k}); }

Partition Partition::sign(int k) {
  return Partition(std::vector<int>(static_cast<std::size_t>(k), 1));
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> rows;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) {
      throw std::invalid_argument("empty row in partition '" + std::string(text) + "'");
    }
    std::size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument("bad row '" + token + "' in partition");
    }
    rows.push_back(value);
  }
  return Partition(std::move(rows));
}

Partition Partition::conjugate() const {
  std::vector<int> cols;
  for (int c = 0; c < (rows_.empty() ? 0 : rows_[0]); ++c) {
    int height = 0;
    while (height < num_rows() && rows_[height] > c) ++height;
    cols.push_back(height);
  }
  return Partition(std::move(cols));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rows_[i]);
  }
  return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[v]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> img(static_cast<std::size_t>(k));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::adjacent(int k, int i) {
  auto p = identity(k);
  std::swap(p.images_[i], p.images_[i + 1]);
  return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> img(images_.size());
  for (int j = 0; j < size(); ++j) img[j] = images_[other.images_[j]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (int j = 0; j < size(); ++j) img[images_[j]] = j;
  return Permutation(std::move(img));
}

Partition Permutation::cycle_type() const {
  std::vector<char> seen(images_.size(), 0);
  std::vector<int> lengths;
  for (int j = 0; j < size(); ++j) {
    if (seen[j]) continue;
    int len = 0;
    for (int x = j; !seen[x]; x = images_[x]) {
      seen[x] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return Partition(std::move(lengths));
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<int> img(static_cast<std::size_t>(k));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, int rows_left, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (rows_left == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    // the remaining rows can hold at most part * rows_left boxes
    if (static_cast<long>(part) * rows_left < remaining) break;
    cur.push_back(part);
    partitions_rec(remaining - part, part, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<int> hook_lengths(const Partition& lambda) {
  std::vector<int> hooks;
  hooks.reserve(static_cast<std::size_t>(lambda.k()));
  const Partition conj = lambda.conjugate();
  for (int i = 0; i < lambda.num_rows(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      hooks.push_back((lambda[i] - j - 1) + (conj[j] - i - 1) + 1);
    }
  }
  return hooks;
}

}  // namespace

std::vector<Partition> enumerate_partitions(int k, int max_rows) {
  if (k < 1 || max_rows < 1) {
    throw std::invalid_argument("enumerate_partitions needs k >= 1 and max_rows >= 1");
  }
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(k, k, max_rows, cur, out);
  return out;
}

std::vector<Partition> enumerate_partitions(int k) { return enumerate_partitions(k, k); }

std::vector<StandardTableau> standard_tableaux(const Partition& lambda) {
  std::vector<StandardTableau> out;
  const int k = lambda.k();
  const int rows = lambda.num_rows();
  std::vector<int> filled(static_cast<std::size_t>(rows), 0);
  StandardTableau cur;
  cur.row_of.resize(k);
  cur.col_of.resize(k);
  std::function<void(int)> place = [&](int entry) {
    if (entry == k) {
      out.push_back(cur);
      return;
    }
    for (int r = 0; r < rows; ++r) {
      if (filled[r] >= lambda[r]) continue;
      if (r > 0 && filled[r] >= filled[r - 1]) continue;
      cur.row_of[entry] = r;
      cur.col_of[entry] = filled[r];
      ++filled[r];
      place(entry + 1);
      --filled[r];
    }
  };
  place(0);
  return out;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Dimension sk_dimension(const Partition& lambda) {
  BigInt hook_product = 1;
  for (int h : hook_lengths(lambda)) hook_product *= h;
  return {factorial(lambda.k()) / hook_product, sk_log_dimension(lambda)};
}

double sk_log_dimension(const Partition& lambda) {
  double log_hooks = 0.0;
  for (int h : hook_lengths(lambda)) log_hooks += std::log(static_cast<double>(h));
  return std::lgamma(static_cast<double>(lambda.k()) + 1.0) - log_hooks;
}

int sk_dimension_int(const Partition& lambda) {
  BigInt d = sk_dimension(lambda).exact;
  if (d > std::numeric_limits<int>::max()) {
    throw std::overflow_error("dim[" + lambda.to_string() + "] does not fit in int");
  }
  return static_cast<int>(d);
}

BigInt weyl_dimension(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("weyl_dimension needs d >= 1");
  if (lambda.num_rows() > d) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= lambda[i] - lambda[j] + j - i;
      den *= j - i;
    }
  }
  return num / den;
}

int weyl_dimension_int(const Partition& lambda, int d) {
  BigInt v = weyl_dimension(lambda, d);
  if (v > std::numeric_limits<int>::max()) {
    throw std::overflow_error("dim V does not fit in int");
  }
  return static_cast<int>(v);
}

std::vector<double> normalize(const Partition& lambda, std::size_t length) {
  if (lambda.k() == 0) throw std::invalid_argument("cannot normalize the empty partition");
  std::vector<double> out(std::max(length, static_cast<std::size_t>(lambda.num_rows())), 0.0);
  for (int i = 0; i < lambda.num_rows(); ++i) {
    out[i] = static_cast<double>(lambda[i]) / lambda.k();
  }
  return out;
}

double l1_distance(const Partition& lambda, std::span<const double> r) {
  const auto bar = normalize(lambda, r.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < bar.size(); ++i) {
    dist += std::abs(bar[i] - (i < r.size() ? r[i] : 0.0));
  }
  return dist;
}

Partition round_spectrum(std::span<const double> r, int k) {
  if (k < 1) throw std::invalid_argument("round_spectrum needs k >= 1");
  if (r.empty()) throw std::invalid_argument("round_spectrum needs a non-empty vector");
  double total = 0.0;
  for (double x : r) {
    if (!(x >= 0.0)) throw std::invalid_argument("spectrum entries must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("spectrum must sum to 1 (got " + std::to_string(total) + ")");
  }
  const std::size_t n = r.size();
  std::vector<int> rows(n);
  std::vector<double> rem(n);
  int assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = r[i] * k;
    rows[i] = static_cast<int>(std::floor(target));
    rem[i] = target - rows[i];
    assigned += rows[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // larger remainder first; ties go to the earlier (larger) row
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t t = 0; assigned < k; ++t) {
    ++rows[order[t % n]];
    ++assigned;
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
  return Partition(std::move(rows));
}

BigInt class_size(const Partition& cycle_type) {
  BigInt denom = 1;
  const auto rows = cycle_type.rows();
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j] == rows[i]) ++j;
    const int len = rows[i];
    const int mult = static_cast<int>(j - i);
    for (int m = 0; m < mult; ++m) denom *= len;
    denom *= factorial(mult);
    i = j;
  }
  return factorial(cycle_type.k()) / denom;
}

std::vector<CycleType> conjugacy_classes(int k) {
  std::vector<CycleType> out;
  for (auto& p : enumerate_partitions(k)) {
    auto size = class_size(p);
    out.push_back({std::move(p), std::move(size)});
  }
  return out;
}

}  // namespace recoup
