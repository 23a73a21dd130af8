#include "mccp/star_algebra.hpp"

#include <cmath>
#include <string>

namespace mccp {

namespace {

void check_tagged_sum(const SubsetVector& v, double target, double tol,
                      const char* what) {
  const double s = v.sum();
  if (std::abs(s - target) > tol) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " violated: entries sum to " + std::to_string(s));
  }
}

VectorTag star_tag(VectorTag a, VectorTag b) {
  // Sums multiply under star: 0 * s = 0, 1 * 1 = 1.
  if (a == VectorTag::ZeroSum || b == VectorTag::ZeroSum) return VectorTag::ZeroSum;
  if (a == VectorTag::UnitSum && b == VectorTag::UnitSum) return VectorTag::UnitSum;
  return VectorTag::General;
}

}  // namespace

ModuliVector ModuliVector::general(SubsetVector v) {
  return ModuliVector{std::move(v), VectorTag::General};
}

ModuliVector ModuliVector::zero_sum(SubsetVector v, double tol) {
  check_tagged_sum(v, 0.0, tol, "zero-sum constraint");
  return ModuliVector{std::move(v), VectorTag::ZeroSum};
}

ModuliVector ModuliVector::unit_sum(SubsetVector v, double tol) {
  check_tagged_sum(v, 1.0, tol, "unit-sum constraint");
  return ModuliVector{std::move(v), VectorTag::UnitSum};
}

SubsetVector star(const SubsetVector& x, const SubsetVector& y) {
  if (x.n != y.n) {
    fail(ErrorCode::DimensionMismatch, "star product needs equal ground sets");
  }
  const std::size_t d = x.size();
  SubsetVector out(x.n);
  for (Subset k = 0; k < d; ++k) {
    // I u J = K exactly once: I runs over submasks of K, J = (K - I) | W
    // with W a submask of I.
    double acc = 0.0;
    for_each_submask(k, [&](Subset i) {
      const Subset rest = k ^ i;
      double ysum = 0.0;
      for_each_submask(i, [&](Subset w) { ysum += y[rest | w]; });
      acc += x[i] * ysum;
    });
    out[k] = acc;
  }
  return out;
}

ModuliVector star(const ModuliVector& x, const ModuliVector& y) {
  return ModuliVector{star(x.values, y.values), star_tag(x.tag, y.tag)};
}

double lattice_norm(const SubsetVector& x) {
  return zeta_subsets(x).max_abs();
}

double lattice_norm(const ModuliVector& x) { return lattice_norm(x.values); }

SubsetVector exp_series(const SubsetVector& x) {
  SubsetVector acc = SubsetVector::unit(x.n);
  SubsetVector term = acc;
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    term = star(term, x);
    for (double& v : term.values) v /= k;
    acc = acc + term;
    if (lattice_norm(term) < kSeriesTermTol) return acc;
  }
  fail(ErrorCode::NonConvergence,
       "exponential series did not settle after " +
           std::to_string(kSeriesMaxTerms) +
           " terms (input norm " + std::to_string(lattice_norm(x)) + ")");
}

ModuliVector exp_series(const ModuliVector& x) {
  const VectorTag tag =
      x.tag == VectorTag::ZeroSum ? VectorTag::UnitSum : VectorTag::General;
  return ModuliVector{exp_series(x.values), tag};
}

SubsetVector exp_closed(const SubsetVector& r) {
  SubsetVector out = zeta_subsets(r);
  for (double& v : out.values) v = std::exp(v);
  mobius_subsets_inplace(out);
  return out;
}

ModuliVector exp_closed(const ModuliVector& r) {
  const VectorTag tag =
      r.tag == VectorTag::ZeroSum ? VectorTag::UnitSum : VectorTag::General;
  return ModuliVector{exp_closed(r.values), tag};
}

SubsetVector log_series(const SubsetVector& y) {
  SubsetVector x = y - SubsetVector::unit(y.n);
  const double nrm = lattice_norm(x);
  if (!(nrm < 1.0)) {
    fail(ErrorCode::OutOfConvergenceRegion,
         "log series needs ||y - unit|| < 1, got " + std::to_string(nrm));
  }
  SubsetVector acc = x;
  SubsetVector power = x;
  for (int k = 2; k <= kSeriesMaxTerms; ++k) {
    power = star(power, x);
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    SubsetVector term = (sign / k) * power;
    acc = acc + term;
    if (lattice_norm(term) < kSeriesTermTol) return acc;
  }
  fail(ErrorCode::NonConvergence,
       "log series did not settle after " + std::to_string(kSeriesMaxTerms) +
           " terms (||y - unit|| = " + std::to_string(nrm) + ")");
}

ModuliVector log_series(const ModuliVector& y) {
  const VectorTag tag =
      y.tag == VectorTag::UnitSum ? VectorTag::ZeroSum : VectorTag::General;
  return ModuliVector{log_series(y.values), tag};
}

SubsetVector euler_limit(const SubsetVector& x, long m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "euler_limit needs m >= 1");
  SubsetVector base = (1.0 / static_cast<double>(m)) * x;
  base[0] += 1.0;
  SubsetVector result = SubsetVector::unit(x.n);
  unsigned long e = static_cast<unsigned long>(m);
  while (e > 0) {
    if (e & 1ul) result = star(result, base);
    e >>= 1;
    if (e > 0) base = star(base, base);
  }
  return result;
}

ModuliVector euler_limit(const ModuliVector& x, long m) {
  const VectorTag tag =
      x.tag == VectorTag::ZeroSum ? VectorTag::UnitSum : VectorTag::General;
  return ModuliVector{euler_limit(x.values, m), tag};
}

}  // namespace mccp
