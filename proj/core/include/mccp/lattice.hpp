#pragma once

#include <cstdint>
#include <vector>

#include "mccp/errors.hpp"
#include "mccp/subset.hpp"

namespace mccp {

// A real-valued function on the subset lattice of {1..n}, stored densely
// and indexed by bitmask. Length is always exactly 2^n.
struct SubsetVector {
  int n = 0;
  std::vector<double> values;

  SubsetVector() = default;
  explicit SubsetVector(int ground_set_size);
  SubsetVector(int ground_set_size, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](Subset k) const { return values[k]; }
  double& operator[](Subset k) { return values[k]; }

  double sum() const;
  double max_abs() const;

  // Unit of the subset algebra: 1 at the empty set, 0 elsewhere.
  static SubsetVector unit(int ground_set_size);
  // 1 at subset k, 0 elsewhere.
  static SubsetVector indicator(int ground_set_size, Subset k);
};

SubsetVector operator+(const SubsetVector& a, const SubsetVector& b);
SubsetVector operator-(const SubsetVector& a, const SubsetVector& b);
SubsetVector operator*(double c, const SubsetVector& a);
double max_abs_diff(const SubsetVector& a, const SubsetVector& b);

// Subset-sum (zeta) transform: y_K = sum_{I <= K} x_I.
// In-place per-bit sweep, ascending bit index, O(n 2^n); the summation
// order is fixed so results are reproducible across runs.
void zeta_subsets_inplace(SubsetVector& x);
SubsetVector zeta_subsets(SubsetVector x);

// Inverse (Moebius) transform: x_K = sum_{I <= K} (-1)^{|K-I|} y_I.
void mobius_subsets_inplace(SubsetVector& y);
SubsetVector mobius_subsets(SubsetVector y);

// Superset-sum transform: y_A = sum_{J >= A} x_J.
void zeta_supersets_inplace(SubsetVector& x);
SubsetVector zeta_supersets(SubsetVector x);

// A partition of some subset K into pairwise disjoint nonempty blocks.
// Blocks appear in order of their smallest element.
struct SetPartition {
  std::vector<Subset> blocks;
  int block_count() const { return static_cast<int>(blocks.size()); }
};

inline constexpr int kMaxPartitionGroundSet = 12;  // Bell(12) ~ 4.2e6

// Visits every partition of the nonempty set k exactly once, in restricted
// growth string order (lexicographic over block assignments of the elements
// of k in ascending order). The callback receives a reused SetPartition.
template <class F>
void for_each_partition(Subset k, F&& f) {
  if (k == 0) fail(ErrorCode::EmptySet, "cannot partition the empty set");
  const std::vector<int> elems = elements_of(k);
  const int m = static_cast<int>(elems.size());
  if (m > kMaxPartitionGroundSet) {
    fail(ErrorCode::TooLarge, "partition enumeration capped at |K| <= " +
                                  std::to_string(kMaxPartitionGroundSet));
  }
  SetPartition part;
  part.blocks.reserve(static_cast<std::size_t>(m));
  // Element i goes into block rgs[i]; rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<int> rgs(static_cast<std::size_t>(m), 0);
  auto recurse = [&](auto&& self, int i, int used) -> void {
    if (i == m) {
      f(const_cast<const SetPartition&>(part));
      return;
    }
    const Subset bit = singleton(elems[static_cast<std::size_t>(i)]);
    for (int b = 0; b <= used; ++b) {
      rgs[static_cast<std::size_t>(i)] = b;
      const bool fresh = (b == used);
      if (fresh) {
        part.blocks.push_back(bit);
      } else {
        part.blocks[static_cast<std::size_t>(b)] |= bit;
      }
      self(self, i + 1, used + (fresh ? 1 : 0));
      if (fresh) {
        part.blocks.pop_back();
      } else {
        part.blocks[static_cast<std::size_t>(b)] &= ~bit;
      }
    }
  };
  recurse(recurse, 0, 0);
}

// Materialised partition list; intended for small K (the count is Bell(|K|)).
std::vector<SetPartition> enumerate_partitions(Subset k);

// Number of partitions of an n-element set.
std::uint64_t bell_number(int n);

// sum over all partitions A of an n-element set of (-1)^{|A|} |A|!,
// by explicit enumeration in exact 64-bit arithmetic. Equals (-1)^n.
std::int64_t partition_alternating_sum(int n);

}  // namespace mccp
