#pragma once

#include <optional>
#include <string>

#include "mccp/embedding.hpp"

namespace mccp {

struct AnalyzeOptions {
  double tolerance = kVerdictTol;
  double tol_singular = kSingularTol;
  bool correlations = false;
};

// Everything the analyze pipeline knows about one distribution.
struct AnalysisReport {
  int n = 0;
  EmbeddabilityVerdict verdict;
  SubsetVector lambda;                 // eigenvalues of the transition matrix
  std::optional<SubsetVector> mu;      // log eigenvalues; absent when singular
  SubsetVector avoidance;              // q_K
  std::vector<PairConditionEntry> pair_conditions;
  std::optional<CorrelationReport> correlations;
  // max-abs of Exp(log parameters) - p; present whenever embeddable.
  std::optional<double> reconstruction_residual;
  double tolerance = kVerdictTol;
  double tol_singular = kSingularTol;
};

AnalysisReport analyze(const CouponDistribution& p, const AnalyzeOptions& opts);

// 0 embeddable, 2 not embeddable, 3 singular.
int report_exit_code(const AnalysisReport& report);

// Machine-readable form; schema-stable, includes tool version and the
// tolerances used. Subsets appear as masks alongside element lists.
std::string report_to_json(const AnalysisReport& report);

// Aligned text; vectors print in cardinality-then-mask order.
std::string report_to_text(const AnalysisReport& report);

}  // namespace mccp
