#pragma once

#include <vector>

#include "mccp/lattice.hpp"
#include "mccp/oracle.hpp"
#include "mccp/subset.hpp"

namespace mccp {

// Distribution of the subset Z drawn in one step: p_K = P(Z = K).
// Construction rejects vectors off the probability simplex (entries below
// -tol or total away from 1 by more than tol); nothing is renormalised.
class CouponDistribution {
 public:
  explicit CouponDistribution(SubsetVector p, double tol = kValidationTol);

  int n() const { return p_.n; }
  const SubsetVector& probs() const { return p_; }
  double operator[](Subset k) const { return p_[k]; }

 private:
  SubsetVector p_;
};

// Parameter vector of a zero-row-sum matrix in the subset algebra; the
// full-dimension vector with r_empty included, summing to zero. It is a
// Markov generator parameter iff r_K >= -tol for every nonempty K.
class RateVector {
 public:
  explicit RateVector(SubsetVector r, double tol = kValidationTol);

  int n() const { return r_.n; }
  const SubsetVector& rates() const { return r_; }
  double operator[](Subset k) const { return r_[k]; }
  bool is_generator() const { return is_generator_; }

 private:
  SubsetVector r_;
  bool is_generator_ = false;
};

// Dense 2^n x 2^n matrix indexed by subsets in bitmask order. Plain storage;
// the stochastic / zero-row-sum / triangular properties are established by
// the constructors below and checked by the params_from_* validators.
struct LatticeMatrix {
  int n = 0;
  std::vector<double> entries;  // row-major

  LatticeMatrix() = default;
  explicit LatticeMatrix(int ground_set_size);

  std::size_t dim() const { return lattice_size(n); }
  double at(Subset i, Subset j) const { return entries[i * dim() + j]; }
  double& at(Subset i, Subset j) { return entries[i * dim() + j]; }

  DenseMatrix to_dense() const;
};

double max_abs_diff(const LatticeMatrix& x, const LatticeMatrix& y);

// Eigenvalues indexed by subsets: the Markov flavour carries lambda_K
// (diagonal of M), the Generator flavour mu_K (diagonal of Q).
enum class SpectrumKind { Markov, Generator };

struct Spectrum {
  SpectrumKind kind = SpectrumKind::Markov;
  SubsetVector values;
};

// Per-element inclusion probabilities for the independent-sampling model.
struct IndependentSpec {
  std::vector<double> pi;  // 0 < pi_i < 1, element i = index + 1
  int n() const { return static_cast<int>(pi.size()); }
};

// M_IJ = sum over K with I u K = J of p_K; upper triangular, row sums 1,
// M_SS = 1.
LatticeMatrix cm_from_params(const CouponDistribution& p);

// Reads the parameter vector from row empty and checks that re-synthesis
// reproduces every entry within tol. Rejects matrices whose empty row is
// not a probability vector (NotStochastic) or whose structure deviates
// (NotCM, with the witness entry).
CouponDistribution params_from_cm(const LatticeMatrix& m, double tol = 1e-9);

// B_IJ = sum over K with I u K = J of r_K; zero row sums, diagonal
// B_II = sum_{K <= I} r_K.
LatticeMatrix cg_from_params(const RateVector& r);

// Inverse validator: r_K = Q_{empty,K} for nonempty K, r_empty forced by the
// zero-sum constraint; structure checked like params_from_cm (NotCG).
RateVector params_from_cg(const LatticeMatrix& q, double tol = 1e-9);

// lambda_K = sum_{I <= K} p_I, the diagonal of the CM matrix.
Spectrum eigenvalues_cm(const CouponDistribution& p);

// mu_K = sum_{I <= K} r_I, the diagonal of the CG matrix; mu_S = 0.
Spectrum eigenvalues_cg(const RateVector& r);

// Columns are the parameter-independent eigenvectors v^K = sum_{I <= K} e^I,
// i.e. V_{I,K} = [I <= K]. Every CM/CG matrix is diagonalised by this basis.
LatticeMatrix eigenbasis(int n);

// Exact signed inverse of eigenbasis(n): W_{I,K} = (-1)^{|K-I|} [I <= K].
LatticeMatrix eigenbasis_inverse(int n);

// Extremal CM matrix M^(K): entry 1 at (I, I u K), else 0. Satisfies
// M^(K) M^(L) = M^(K u L) exactly.
LatticeMatrix extremal_cm(int n, Subset k);

// p_K = prod_{i in K} pi_i * prod_{j not in K} (1 - pi_j). Boundary
// pi_i in {0,1} is rejected (DegenerateIndependent).
CouponDistribution independent_params(const IndependentSpec& spec);

// Parameter vector of M^m, computed by star iteration
// p^(k+1) = p^(k) * p. Agrees with the spectral shortcut below.
CouponDistribution cm_power_params(const CouponDistribution& p, long m);

// Fast path: Moebius inversion of lambda^m, O(m + n 2^n).
CouponDistribution cm_power_params_spectral(const CouponDistribution& p, long m);

}  // namespace mccp
