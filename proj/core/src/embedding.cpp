#include "mccp/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mccp {

AvoidanceVector avoidance_probs(const CouponDistribution& p) {
  const SubsetVector lam = zeta_subsets(p.probs());
  const Subset full = full_set(p.n());
  SubsetVector q(p.n());
  for (Subset k = 0; k < q.size(); ++k) q[k] = lam[full ^ k];
  return AvoidanceVector{p.n(), std::move(q)};
}

double conditional_avoidance(const AvoidanceVector& q, Subset a, Subset b) {
  if (q.q[b] <= 0.0) {
    fail(ErrorCode::ConditionOnNullEvent,
         "cannot condition on avoiding " + format_subset(b) +
             ": the event has probability 0");
  }
  return q.q[a | b] / q.q[b];
}

RateVector log_params(const CouponDistribution& p, double tol_singular) {
  if (p[0] <= tol_singular) {
    fail(ErrorCode::SingularMatrix,
         "p_empty = " + std::to_string(p[0]) +
             " <= " + std::to_string(tol_singular) +
             ": the transition matrix is singular");
  }
  SubsetVector mu = zeta_subsets(p.probs());
  for (Subset k = 0; k < mu.size(); ++k) {
    if (!(mu[k] > 0.0)) {
      fail(ErrorCode::SingularMatrix,
           "eigenvalue at " + format_subset(k) + " is not positive");
    }
    mu[k] = std::log(mu[k]);
  }
  mobius_subsets_inplace(mu);
  return RateVector(std::move(mu), 1e-9);
}

namespace {

constexpr double kFactorial[11] = {1,    1,     2,      6,       24,      120,
                                   720,  5040,  40320,  362880,  3628800};

void sort_by_cardinality_then_mask(std::vector<Subset>& v) {
  std::sort(v.begin(), v.end(), [](Subset a, Subset b) {
    const int ca = cardinality(a), cb = cardinality(b);
    return ca != cb ? ca < cb : a < b;
  });
}

bool spectrum_is_simple(const CouponDistribution& p, double tol) {
  SubsetVector lam = zeta_subsets(p.probs());
  std::sort(lam.values.begin(), lam.values.end());
  for (std::size_t i = 1; i < lam.values.size(); ++i) {
    if (lam.values[i] - lam.values[i - 1] <= tol) return false;
  }
  return true;
}

}  // namespace

EmbeddabilityVerdict embeddability_verdict(const CouponDistribution& p,
                                           double tol, double tol_singular) {
  EmbeddabilityVerdict verdict;
  verdict.spectrum_simple = spectrum_is_simple(p, tol);
  if (p[0] <= tol_singular) {
    verdict.outcome = Embeddability::SingularNotEmbeddable;
    return verdict;
  }
  RateVector r = log_params(p, tol_singular);
  for (Subset k = 1; k < r.rates().size(); ++k) {
    if (r[k] < -tol) verdict.witnesses.push_back(k);
    if (std::abs(r[k]) <= tol) verdict.boundary_flags.push_back(k);
  }
  sort_by_cardinality_then_mask(verdict.witnesses);
  sort_by_cardinality_then_mask(verdict.boundary_flags);
  verdict.outcome = verdict.witnesses.empty() ? Embeddability::Embeddable
                                              : Embeddability::NotEmbeddable;
  verdict.rates = std::move(r);
  return verdict;
}

LatticeMatrix generator_from_cm(const CouponDistribution& p, double tol,
                                double tol_singular) {
  const EmbeddabilityVerdict verdict =
      embeddability_verdict(p, tol, tol_singular);
  if (verdict.outcome == Embeddability::SingularNotEmbeddable) {
    fail(ErrorCode::SingularMatrix,
         "singular transition matrix has no logarithm");
  }
  if (verdict.outcome == Embeddability::NotEmbeddable) {
    fail(ErrorCode::NotEmbeddable,
         "log parameter of " + format_subset(verdict.witnesses.front()) +
             " is negative: the real logarithm is not a Markov generator");
  }
  return cg_from_params(*verdict.rates);
}

double partition_log_param(const CouponDistribution& p, Subset k) {
  if (k == 0) fail(ErrorCode::EmptySet, "log parameter needs a nonempty set");
  if (cardinality(k) > 10) {
    fail(ErrorCode::TooLarge, "partition form capped at |K| <= 10");
  }
  if (p[0] <= kSingularTol) {
    fail(ErrorCode::SingularMatrix, "partition form needs p_empty > 0");
  }
  const AvoidanceVector q = avoidance_probs(p);
  const Subset cond = set_complement(k, p.n());
  // log q^B_A for B = complement(K), precomputed for all A <= K.
  std::vector<double> logq(lattice_size(p.n()), 0.0);
  for_each_submask(k, [&](Subset a) {
    logq[a] = std::log(conditional_avoidance(q, a, cond));
  });
  double total = 0.0;
  for_each_partition(k, [&](const SetPartition& part) {
    double log_prod = 0.0;
    for (Subset block : part.blocks) log_prod += logq[block];
    const int m = part.block_count();
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
    total += sign * kFactorial[m - 1] * log_prod;
  });
  const double outer = (cardinality(k) % 2 == 0) ? 1.0 : -1.0;
  return outer * total;
}

PairCondition pair_condition(const CouponDistribution& p, int i, int j) {
  const int n = p.n();
  if (i == j || i < 1 || j < 1 || i > n || j > n) {
    fail(ErrorCode::InvalidArgument,
         "pair condition needs two distinct elements of {1.." +
             std::to_string(n) + "}");
  }
  if (p[0] <= kSingularTol) {
    fail(ErrorCode::SingularMatrix, "pair condition needs p_empty > 0");
  }
  const double margin =
      p[0] * p[singleton(i) | singleton(j)] - p[singleton(i)] * p[singleton(j)];
  return PairCondition{margin >= 0.0, margin};
}

double correlation_function(const CouponDistribution& p, Subset k) {
  if (k == 0) fail(ErrorCode::EmptySet, "correlation needs a nonempty set");
  if (cardinality(k) > 10) {
    fail(ErrorCode::TooLarge, "correlation function capped at |K| <= 10");
  }
  // P(A <= Z) for all A <= K.
  const SubsetVector incl = zeta_supersets(p.probs());
  double total = 0.0;
  for_each_partition(k, [&](const SetPartition& part) {
    double prod = 1.0;
    for (Subset block : part.blocks) prod *= incl[block];
    const int m = part.block_count();
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    total += sign * kFactorial[m - 1] * prod;
  });
  return total;
}

CorrelationReport correlation_report(const CouponDistribution& p) {
  CorrelationReport report;
  const int n = p.n();
  for (Subset k : subsets_by_cardinality(n)) {
    if (k == 0 || cardinality(k) > 10) continue;
    report.correlations.emplace_back(k, correlation_function(p, k));
  }
  if (p[0] > kSingularTol) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const PairCondition pc = pair_condition(p, i, j);
        report.pair_conditions.push_back(
            PairConditionEntry{i, j, pc.holds, pc.margin});
      }
    }
  }
  return report;
}

}  // namespace mccp
