#include "mccp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace mccp {

namespace {

void check_ground_set(int n) {
  if (n < 1 || n > kMaxGroundSet) {
    fail(ErrorCode::InvalidArgument,
         "ground set size must be in [1," + std::to_string(kMaxGroundSet) +
             "], got " + std::to_string(n));
  }
}

void check_same_n(const SubsetVector& a, const SubsetVector& b) {
  if (a.n != b.n) {
    fail(ErrorCode::DimensionMismatch,
         "ground set mismatch: " + std::to_string(a.n) + " vs " +
             std::to_string(b.n));
  }
}

}  // namespace

SubsetVector::SubsetVector(int ground_set_size)
    : n(ground_set_size), values(lattice_size(ground_set_size), 0.0) {
  check_ground_set(ground_set_size);
}

SubsetVector::SubsetVector(int ground_set_size, std::vector<double> v)
    : n(ground_set_size), values(std::move(v)) {
  check_ground_set(ground_set_size);
  if (values.size() != lattice_size(n)) {
    fail(ErrorCode::DimensionMismatch,
         "subset vector for n=" + std::to_string(n) + " needs " +
             std::to_string(lattice_size(n)) + " entries, got " +
             std::to_string(values.size()));
  }
  for (double v_k : values) {
    if (!std::isfinite(v_k)) {
      fail(ErrorCode::InvalidArgument, "subset vector entries must be finite");
    }
  }
}

double SubsetVector::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double SubsetVector::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

SubsetVector SubsetVector::unit(int ground_set_size) {
  SubsetVector e(ground_set_size);
  e.values[0] = 1.0;
  return e;
}

SubsetVector SubsetVector::indicator(int ground_set_size, Subset k) {
  SubsetVector e(ground_set_size);
  e.values[k] = 1.0;
  return e;
}

SubsetVector operator+(const SubsetVector& a, const SubsetVector& b) {
  check_same_n(a, b);
  SubsetVector out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

SubsetVector operator-(const SubsetVector& a, const SubsetVector& b) {
  check_same_n(a, b);
  SubsetVector out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

SubsetVector operator*(double c, const SubsetVector& a) {
  SubsetVector out = a;
  for (double& v : out.values) v *= c;
  return out;
}

double max_abs_diff(const SubsetVector& a, const SubsetVector& b) {
  check_same_n(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

void zeta_subsets_inplace(SubsetVector& x) {
  const std::size_t d = x.size();
  for (int bit = 0; bit < x.n; ++bit) {
    const Subset step = Subset{1} << bit;
    for (Subset k = 0; k < d; ++k) {
      if (k & step) x.values[k] += x.values[k ^ step];
    }
  }
}

SubsetVector zeta_subsets(SubsetVector x) {
  zeta_subsets_inplace(x);
  return x;
}

void mobius_subsets_inplace(SubsetVector& y) {
  const std::size_t d = y.size();
  for (int bit = 0; bit < y.n; ++bit) {
    const Subset step = Subset{1} << bit;
    for (Subset k = 0; k < d; ++k) {
      if (k & step) y.values[k] -= y.values[k ^ step];
    }
  }
}

SubsetVector mobius_subsets(SubsetVector y) {
  mobius_subsets_inplace(y);
  return y;
}

void zeta_supersets_inplace(SubsetVector& x) {
  const std::size_t d = x.size();
  for (int bit = 0; bit < x.n; ++bit) {
    const Subset step = Subset{1} << bit;
    for (Subset k = 0; k < d; ++k) {
      if (!(k & step)) x.values[k] += x.values[k | step];
    }
  }
}

SubsetVector zeta_supersets(SubsetVector x) {
  zeta_supersets_inplace(x);
  return x;
}

std::vector<SetPartition> enumerate_partitions(Subset k) {
  std::vector<SetPartition> out;
  for_each_partition(k, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

std::uint64_t bell_number(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "bell_number needs n >= 0");
  // Bell triangle; exact for n <= 25 in 64 bits.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(i) + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j + 1 < next.size(); ++j) next[j + 1] = next[j] + row[j];
    row = std::move(next);
  }
  return row[0];
}

std::int64_t partition_alternating_sum(int n) {
  if (n == 0) fail(ErrorCode::EmptySet, "partition sum needs a nonempty set");
  if (n < 0 || n > 10) {
    fail(ErrorCode::TooLarge, "partition_alternating_sum capped at n <= 10");
  }
  static constexpr std::int64_t kFactorial[13] = {
      1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800,
      479001600};
  std::int64_t total = 0;
  for_each_partition(full_set(n), [&](const SetPartition& p) {
    const int m = p.block_count();
    total += (m % 2 == 0 ? 1 : -1) * kFactorial[m];
  });
  return total;
}

std::vector<Subset> subsets_by_cardinality(int n) {
  check_ground_set(n);
  std::vector<Subset> order(lattice_size(n));
  for (Subset k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [](Subset a, Subset b) {
    const int ca = cardinality(a), cb = cardinality(b);
    return ca != cb ? ca < cb : a < b;
  });
  return order;
}

}  // namespace mccp
