#include "mccp/model.hpp"

#include <cmath>
#include <string>

#include "mccp/star_algebra.hpp"

namespace mccp {

CouponDistribution::CouponDistribution(SubsetVector p, double tol)
    : p_(std::move(p)) {
  for (Subset k = 0; k < p_.size(); ++k) {
    if (p_[k] < -tol) {
      fail(ErrorCode::NotStochastic, "negative probability " +
                                         std::to_string(p_[k]) + " at " +
                                         format_subset(k));
    }
  }
  const double s = p_.sum();
  if (std::abs(s - 1.0) > tol) {
    fail(ErrorCode::NotStochastic,
         "probabilities sum to " + std::to_string(s) + ", expected 1");
  }
}

RateVector::RateVector(SubsetVector r, double tol) : r_(std::move(r)) {
  const double s = r_.sum();
  if (std::abs(s) > tol) {
    fail(ErrorCode::InvalidArgument,
         "rate parameters must sum to 0, got " + std::to_string(s));
  }
  is_generator_ = true;
  for (Subset k = 1; k < r_.size(); ++k) {
    if (r_[k] < -tol) {
      is_generator_ = false;
      break;
    }
  }
}

LatticeMatrix::LatticeMatrix(int ground_set_size) : n(ground_set_size) {
  if (n < 1 || n > kMaxDenseGroundSet) {
    fail(ErrorCode::TooLarge,
         "dense lattice matrices are capped at n <= " +
             std::to_string(kMaxDenseGroundSet) + ", got " + std::to_string(n));
  }
  entries.assign(dim() * dim(), 0.0);
}

DenseMatrix LatticeMatrix::to_dense() const {
  DenseMatrix out(dim());
  out.a = entries;
  return out;
}

double max_abs_diff(const LatticeMatrix& x, const LatticeMatrix& y) {
  if (x.n != y.n) {
    fail(ErrorCode::DimensionMismatch, "lattice matrix dimension mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < x.entries.size(); ++i) {
    m = std::max(m, std::abs(x.entries[i] - y.entries[i]));
  }
  return m;
}

namespace {

// Shared synthesis: rows are row_I[I u K] += v_K, which places v on row
// empty and makes the matrix upper triangular in bitmask order.
LatticeMatrix synthesize(const SubsetVector& v) {
  LatticeMatrix m(v.n);
  const std::size_t d = m.dim();
  for (Subset i = 0; i < d; ++i) {
    double* row = &m.entries[i * d];
    for (Subset k = 0; k < d; ++k) row[i | k] += v[k];
  }
  return m;
}

}  // namespace

LatticeMatrix cm_from_params(const CouponDistribution& p) {
  return synthesize(p.probs());
}

CouponDistribution params_from_cm(const LatticeMatrix& m, double tol) {
  const std::size_t d = m.dim();
  SubsetVector p(m.n);
  for (Subset k = 0; k < d; ++k) p[k] = m.at(0, k);
  for (Subset k = 0; k < d; ++k) {
    if (p[k] < -tol) {
      fail(ErrorCode::NotStochastic,
           "empty-set row is not a probability vector: entry " +
               std::to_string(p[k]) + " at " + format_subset(k));
    }
  }
  if (std::abs(p.sum() - 1.0) > tol) {
    fail(ErrorCode::NotStochastic,
         "empty-set row sums to " + std::to_string(p.sum()));
  }
  const LatticeMatrix expected = synthesize(p);
  for (Subset i = 0; i < d; ++i) {
    for (Subset j = 0; j < d; ++j) {
      const double dev = std::abs(m.at(i, j) - expected.at(i, j));
      if (dev > tol) {
        throw Error(ErrorCode::NotCM,
                    "entry (" + format_subset(i) + "," + format_subset(j) +
                        ") deviates from the CM form by " + std::to_string(dev),
                    i, j, dev);
      }
    }
  }
  return CouponDistribution(std::move(p), tol);
}

LatticeMatrix cg_from_params(const RateVector& r) {
  return synthesize(r.rates());
}

RateVector params_from_cg(const LatticeMatrix& q, double tol) {
  const std::size_t d = q.dim();
  SubsetVector r(q.n);
  double sum_rest = 0.0;
  for (Subset k = 1; k < d; ++k) {
    r[k] = q.at(0, k);
    sum_rest += r[k];
  }
  r[0] = -sum_rest;
  const LatticeMatrix expected = synthesize(r);
  for (Subset i = 0; i < d; ++i) {
    for (Subset j = 0; j < d; ++j) {
      const double dev = std::abs(q.at(i, j) - expected.at(i, j));
      if (dev > tol) {
        throw Error(ErrorCode::NotCG,
                    "entry (" + format_subset(i) + "," + format_subset(j) +
                        ") deviates from the CG form by " + std::to_string(dev),
                    i, j, dev);
      }
    }
  }
  return RateVector(std::move(r), tol);
}

Spectrum eigenvalues_cm(const CouponDistribution& p) {
  return Spectrum{SpectrumKind::Markov, zeta_subsets(p.probs())};
}

Spectrum eigenvalues_cg(const RateVector& r) {
  return Spectrum{SpectrumKind::Generator, zeta_subsets(r.rates())};
}

LatticeMatrix eigenbasis(int n) {
  LatticeMatrix v(n);
  const std::size_t d = v.dim();
  for (Subset i = 0; i < d; ++i) {
    for (Subset k = 0; k < d; ++k) {
      if (subset_of(i, k)) v.at(i, k) = 1.0;
    }
  }
  return v;
}

LatticeMatrix eigenbasis_inverse(int n) {
  LatticeMatrix w(n);
  const std::size_t d = w.dim();
  for (Subset i = 0; i < d; ++i) {
    for (Subset k = 0; k < d; ++k) {
      if (subset_of(i, k)) {
        w.at(i, k) = (cardinality(k ^ i) % 2 == 0) ? 1.0 : -1.0;
      }
    }
  }
  return w;
}

LatticeMatrix extremal_cm(int n, Subset k) {
  LatticeMatrix m(n);
  if (k >= m.dim()) {
    fail(ErrorCode::InvalidArgument,
         "subset mask out of range for n=" + std::to_string(n));
  }
  for (Subset i = 0; i < m.dim(); ++i) m.at(i, i | k) = 1.0;
  return m;
}

CouponDistribution independent_params(const IndependentSpec& spec) {
  const int n = spec.n();
  if (n < 1 || n > kMaxGroundSet) {
    fail(ErrorCode::InvalidArgument, "independent spec needs 1 <= n <= 24");
  }
  for (double pi : spec.pi) {
    if (!(pi > 0.0) || !(pi < 1.0)) {
      fail(ErrorCode::DegenerateIndependent,
           "inclusion probabilities must lie strictly in (0,1), got " +
               std::to_string(pi));
    }
  }
  // Build the product measure one element at a time.
  SubsetVector p(n);
  p[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const Subset bit = Subset{1} << i;
    const double pi = spec.pi[static_cast<std::size_t>(i)];
    for (Subset k = bit; k-- > 0;) {
      p[k | bit] = p[k] * pi;
      p[k] *= 1.0 - pi;
    }
  }
  return CouponDistribution(std::move(p));
}

CouponDistribution cm_power_params(const CouponDistribution& p, long m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "power needs m >= 1");
  SubsetVector acc = p.probs();
  for (long k = 1; k < m; ++k) acc = star(acc, p.probs());
  return CouponDistribution(std::move(acc), 1e-9);
}

CouponDistribution cm_power_params_spectral(const CouponDistribution& p,
                                            long m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "power needs m >= 1");
  SubsetVector lam = zeta_subsets(p.probs());
  for (double& v : lam.values) v = std::pow(v, static_cast<double>(m));
  mobius_subsets_inplace(lam);
  return CouponDistribution(std::move(lam), 1e-9);
}

}  // namespace mccp
