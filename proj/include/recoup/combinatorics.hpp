#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace recoup {

using BigInt = boost::multiprecision::cpp_int;

/// A Young diagram: non-increasing positive rows. The empty diagram (k = 0)
/// is allowed so that recursive algorithms can bottom out on it.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> rows);

  static Partition trivial(int k);  // (k)
  static Partition sign(int k);     // (1,...,1)
  /// Parses "3,1" (whitespace tolerated).
  static Partition parse(std::string_view text);

  int k() const { return k_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  std::span<const int> rows() const { return rows_; }
  /// Row length, zero past the last row.
  int operator[](std::size_t i) const { return i < rows_.size() ? rows_[i] : 0; }

  Partition conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.rows_ <=> b.rows_;
  }

 private:
  std::vector<int> rows_;
  int k_ = 0;
};

/// Zero-based permutation, stored as the image of 0..k-1.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int k);
  /// Adjacent transposition swapping positions i and i+1 (zero-based).
  static Permutation adjacent(int k, int i);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<std::size_t>(j)]; }
  std::span<const int> images() const { return images_; }

  /// (this * other)(j) = this(other(j)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  Partition cycle_type() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All k! permutations in lexicographic order of their image arrays.
std::vector<Permutation> all_permutations(int k);

struct CycleType {
  Partition cycles;
  BigInt class_size;
};

/// Standard tableau stored by the cell of each entry: entry t (zero-based)
/// sits in row row_of[t], column col_of[t].
struct StandardTableau {
  std::vector<int> row_of;
  std::vector<int> col_of;

  int content(int entry) const { return col_of[entry] - row_of[entry]; }
  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;
};

/// Dimension of an S_k irrep, exact and as a natural logarithm.
struct Dimension {
  BigInt exact;
  double log = 0.0;
};

// Partitions of k with at most max_rows rows, reverse lexicographic order.
std::vector<Partition> enumerate_partitions(int k, int max_rows);
std::vector<Partition> enumerate_partitions(int k);

// Standard tableaux of shape lambda, ordered lexicographically by the row
// sequence of entries 1..k. The first one is the row-reading tableau.
std::vector<StandardTableau> standard_tableaux(const Partition& lambda);

Dimension sk_dimension(const Partition& lambda);
/// Natural log of dim[lambda] via hooks and lgamma; no big integers, usable
/// for k in the hundreds of thousands.
double sk_log_dimension(const Partition& lambda);
/// Convenience for small shapes; throws std::overflow_error if dim does not
/// fit in an int.
int sk_dimension_int(const Partition& lambda);

/// dim V^d_lambda by the Weyl product formula; zero past d rows.
BigInt weyl_dimension(const Partition& lambda, int d);
int weyl_dimension_int(const Partition& lambda, int d);

/// lambda / k padded with zeros to `length` (at least the row count).
std::vector<double> normalize(const Partition& lambda, std::size_t length = 0);

/// l1 distance between normalize(lambda) and r, both zero-padded to the
/// longer length.
double l1_distance(const Partition& lambda, std::span<const double> r);

/// Largest-remainder apportionment of k*r into a partition of k.
Partition round_spectrum(std::span<const double> r, int k);

std::vector<CycleType> conjugacy_classes(int k);
BigInt class_size(const Partition& cycle_type);
BigInt factorial(int n);

}  // namespace recoup
