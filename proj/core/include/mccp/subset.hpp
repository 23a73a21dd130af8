#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mccp/errors.hpp"

namespace mccp {

// Subsets of the ground set S = {1,...,n} are bitmasks: bit i-1 set <=>
// element i is in the subset. Numeric order on masks is a linear extension
// of set inclusion, so matrices indexed this way are upper triangular.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSet = 24;       // vector-level operations
inline constexpr int kMaxDenseGroundSet = 12;  // dense 2^n x 2^n matrices

// Default tolerance for structural validation (simplex / zero-sum checks).
inline constexpr double kValidationTol = 1e-12;

constexpr std::size_t lattice_size(int n) { return std::size_t{1} << n; }

constexpr Subset full_set(int n) {
  return static_cast<Subset>((std::uint64_t{1} << n) - 1);
}

// Elements are 1-based throughout the public interface.
constexpr Subset singleton(int element) { return Subset{1} << (element - 1); }

constexpr bool contains(Subset k, int element) {
  return (k >> (element - 1)) & 1u;
}

constexpr bool subset_of(Subset i, Subset j) { return (i & j) == i; }

constexpr int cardinality(Subset k) { return std::popcount(k); }

constexpr Subset set_complement(Subset k, int n) { return full_set(n) & ~k; }

// Visits every submask of k, including k itself and 0, in descending
// numeric order. The order is fixed so that summations are deterministic.
template <class F>
constexpr void for_each_submask(Subset k, F&& f) {
  Subset s = k;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & k;
  }
}

inline std::vector<int> elements_of(Subset k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(k)));
  for (int i = 1; k != 0; ++i, k >>= 1) {
    if (k & 1u) out.push_back(i);
  }
  return out;
}

inline Subset subset_from_elements(const std::vector<int>& elements, int n) {
  Subset k = 0;
  for (int e : elements) {
    if (e < 1 || e > n) {
      fail(ErrorCode::InvalidArgument,
           "element " + std::to_string(e) + " outside ground set {1.." +
               std::to_string(n) + "}");
    }
    k |= singleton(e);
  }
  return k;
}

// "{}", "{1,3}", ... for reports and error messages.
inline std::string format_subset(Subset k) {
  std::string out = "{";
  bool first = true;
  for (int e : elements_of(k)) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

// All subsets of {1..n} ordered by cardinality, then by mask. This is the
// order used in human-readable reports.
std::vector<Subset> subsets_by_cardinality(int n);

}  // namespace mccp
