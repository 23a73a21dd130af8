#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mccp/model.hpp"

namespace mccp {

// One "subset: value" entry of a model spec file; elements are 1-based.
struct SubsetWeight {
  std::vector<int> elements;
  double value = 0.0;
};

// Parsed model specification. Exactly one of the three variants is present:
//   distribution - explicit list of {subset, prob}; omitted subsets are 0
//   independent  - per-element inclusion probabilities pi
//   rates        - direct generator-side input {subset, rate}, nonempty
//                  subsets only (the empty-set rate is forced by the
//                  zero-sum constraint)
struct ModelSpec {
  int n = 0;
  std::optional<std::vector<SubsetWeight>> distribution;
  std::optional<std::vector<double>> independent_pi;
  std::optional<std::vector<SubsetWeight>> rates;
};

// JSON round trip. parse rejects malformed documents with field diagnostics;
// serialize emits a canonical form (entries sorted by subset mask).
ModelSpec parse_model_spec(const std::string& json_text);
std::string serialize_model_spec(const ModelSpec& spec);

ModelSpec load_model_spec(const std::string& path);

// True when the spec carries a distribution directly (explicit list or
// independent probabilities) rather than rates.
bool spec_defines_distribution(const ModelSpec& spec);

// Converts the distribution part. Rejects specs that only carry rates.
CouponDistribution distribution_from_spec(const ModelSpec& spec);

// Converts the rates part. Rejects specs without a rates field.
RateVector rates_from_spec(const ModelSpec& spec);

}  // namespace mccp
