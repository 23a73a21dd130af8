#pragma once

#include <optional>
#include <vector>

#include "mccp/model.hpp"

namespace mccp {

inline constexpr double kVerdictTol = 1e-10;
inline constexpr double kSingularTol = 1e-12;

// q_K = P(Z avoids K) = P(Z cap K = empty). Antitone in K, q_empty = 1,
// and q_K equals the eigenvalue lambda of the complement of K.
struct AvoidanceVector {
  int n = 0;
  SubsetVector q;
};

AvoidanceVector avoidance_probs(const CouponDistribution& p);

// q^B_A = P(Z cap A = empty | Z cap B = empty) = q_{A u B} / q_B.
double conditional_avoidance(const AvoidanceVector& q, Subset a, Subset b);

// Parameter vector of the principal real logarithm of the CM matrix:
// mu_K = log lambda_K, r = Moebius(mu), so r_empty = log p_empty and the
// entries sum to zero. Rejects singular input (p_empty <= tol_singular).
RateVector log_params(const CouponDistribution& p,
                      double tol_singular = kSingularTol);

enum class Embeddability {
  Embeddable,
  NotEmbeddable,
  SingularNotEmbeddable,
};

// Decision outcome with witness data. Witnesses are the subsets whose log
// parameter falls below -tol, ordered by cardinality then mask; boundary
// flags collect nonempty K with |r_K| <= tol, where floating-point noise
// could flip the sign.
struct EmbeddabilityVerdict {
  Embeddability outcome = Embeddability::SingularNotEmbeddable;
  std::optional<RateVector> rates;  // absent when singular
  std::vector<Subset> witnesses;
  std::vector<Subset> boundary_flags;
  bool spectrum_simple = false;
};

EmbeddabilityVerdict embeddability_verdict(const CouponDistribution& p,
                                           double tol = kVerdictTol,
                                           double tol_singular = kSingularTol);

// The generator matrix of an embeddable distribution:
// Q = cg_from_params(log_params(p)). Non-embeddable or singular input is
// rejected with the corresponding error code.
LatticeMatrix generator_from_cm(const CouponDistribution& p,
                                double tol = kVerdictTol,
                                double tol_singular = kSingularTol);

// Independent route to a single log parameter, through the partition
// lattice of K and conditional avoidance probabilities:
// r_K = (-1)^{|K|} sum over partitions A of K of
//       (-1)^{|A|-1} (|A|-1)! log prod_{A_i in A} q^{complement(K)}_{A_i}.
double partition_log_param(const CouponDistribution& p, Subset k);

// Truth and margin of p_empty * p_{ij} >= p_{i} * p_{j}, equivalent to
// r_{ij} >= 0. For n = 2 the margin coincides with the avoidance
// correlation q_S - q_{1} q_{2}.
struct PairCondition {
  bool holds = false;
  double margin = 0.0;
};

PairCondition pair_condition(const CouponDistribution& p, int i, int j);

// Correlation function of the events {i in Z, i in K}:
// C_K = sum over partitions A of K of (-1)^{|A|-1} (|A|-1)!
//       prod_{A_i in A} P(A_i <= Z).
double correlation_function(const CouponDistribution& p, Subset k);

struct PairConditionEntry {
  int i = 0;
  int j = 0;
  bool holds = false;
  double margin = 0.0;
};

// C_K for every nonempty K up to the partition guard, in cardinality-then-
// mask order, plus all pairwise conditions.
struct CorrelationReport {
  std::vector<std::pair<Subset, double>> correlations;
  std::vector<PairConditionEntry> pair_conditions;
};

CorrelationReport correlation_report(const CouponDistribution& p);

}  // namespace mccp
