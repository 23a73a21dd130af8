#include "mccp/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mccp {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& msg) {
  fail(ErrorCode::InvalidSpec, "model spec: " + msg);
}

std::vector<SubsetWeight> parse_weight_list(const json& arr, const char* field,
                                            const char* value_key) {
  if (!arr.is_array() || arr.empty()) {
    bad_spec(std::string(field) + " must be a nonempty array");
  }
  std::vector<SubsetWeight> out;
  out.reserve(arr.size());
  for (const json& entry : arr) {
    if (!entry.is_object() || !entry.contains("subset") ||
        !entry.contains(value_key)) {
      bad_spec(std::string(field) + " entries need fields 'subset' and '" +
               value_key + "'");
    }
    for (const auto& [key, ignored] : entry.items()) {
      (void)ignored;
      if (key != "subset" && key != value_key) {
        bad_spec("unknown field '" + key + "' in " + field + " entry");
      }
    }
    SubsetWeight w;
    if (!entry["subset"].is_array()) bad_spec("'subset' must be a list of elements");
    for (const json& e : entry["subset"]) {
      if (!e.is_number_integer()) bad_spec("subset elements must be integers");
      w.elements.push_back(e.get<int>());
    }
    std::sort(w.elements.begin(), w.elements.end());
    if (!entry[value_key].is_number()) {
      bad_spec(std::string("'") + value_key + "' must be a number");
    }
    w.value = entry[value_key].get<double>();
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

ModelSpec parse_model_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_spec(e.what());
  }
  if (!doc.is_object()) bad_spec("top level must be an object");
  for (const auto& [key, ignored] : doc.items()) {
    (void)ignored;
    if (key != "n" && key != "distribution" && key != "independent" &&
        key != "rates") {
      bad_spec("unknown field '" + key + "'");
    }
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    bad_spec("field 'n' (ground set size) is required");
  }
  ModelSpec spec;
  spec.n = doc["n"].get<int>();
  if (spec.n < 1 || spec.n > kMaxGroundSet) {
    bad_spec("'n' must lie in [1," + std::to_string(kMaxGroundSet) + "]");
  }
  int variants = 0;
  if (doc.contains("distribution")) {
    spec.distribution = parse_weight_list(doc["distribution"], "distribution", "prob");
    ++variants;
  }
  if (doc.contains("independent")) {
    const json& ind = doc["independent"];
    if (!ind.is_object() || !ind.contains("pi") || !ind["pi"].is_array()) {
      bad_spec("'independent' must be an object with a 'pi' array");
    }
    std::vector<double> pi;
    for (const json& v : ind["pi"]) {
      if (!v.is_number()) bad_spec("'pi' entries must be numbers");
      pi.push_back(v.get<double>());
    }
    if (static_cast<int>(pi.size()) != spec.n) {
      bad_spec("'pi' needs exactly n=" + std::to_string(spec.n) + " entries");
    }
    spec.independent_pi = std::move(pi);
    ++variants;
  }
  if (doc.contains("rates")) {
    spec.rates = parse_weight_list(doc["rates"], "rates", "rate");
    ++variants;
  }
  if (variants != 1) {
    bad_spec("exactly one of 'distribution', 'independent', 'rates' required");
  }
  // Surface bad elements and duplicates early, with the offending subset.
  for (const auto& list : {spec.distribution, spec.rates}) {
    if (!list) continue;
    std::set<Subset> seen;
    for (const SubsetWeight& w : *list) {
      const Subset mask = subset_from_elements(w.elements, spec.n);
      if (!seen.insert(mask).second) {
        bad_spec("subset " + format_subset(mask) + " listed twice");
      }
    }
  }
  return spec;
}

std::string serialize_model_spec(const ModelSpec& spec) {
  json doc;
  doc["n"] = spec.n;
  auto emit = [&](const std::vector<SubsetWeight>& list, const char* field,
                  const char* value_key) {
    std::vector<SubsetWeight> sorted = list;
    std::sort(sorted.begin(), sorted.end(),
              [&](const SubsetWeight& a, const SubsetWeight& b) {
                return subset_from_elements(a.elements, spec.n) <
                       subset_from_elements(b.elements, spec.n);
              });
    json arr = json::array();
    for (const SubsetWeight& w : sorted) {
      arr.push_back({{"subset", w.elements}, {value_key, w.value}});
    }
    doc[field] = std::move(arr);
  };
  if (spec.distribution) emit(*spec.distribution, "distribution", "prob");
  if (spec.independent_pi) doc["independent"] = {{"pi", *spec.independent_pi}};
  if (spec.rates) emit(*spec.rates, "rates", "rate");
  return doc.dump(2);
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::InvalidSpec, "cannot read spec file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_spec(buf.str());
}

bool spec_defines_distribution(const ModelSpec& spec) {
  return spec.distribution.has_value() || spec.independent_pi.has_value();
}

CouponDistribution distribution_from_spec(const ModelSpec& spec) {
  if (spec.independent_pi) {
    return independent_params(IndependentSpec{*spec.independent_pi});
  }
  if (!spec.distribution) {
    fail(ErrorCode::InvalidSpec,
         "spec carries rates, not a distribution; unlisted probabilities "
         "default to 0 only within a 'distribution' block");
  }
  SubsetVector p(spec.n);
  for (const SubsetWeight& w : *spec.distribution) {
    p[subset_from_elements(w.elements, spec.n)] = w.value;
  }
  return CouponDistribution(std::move(p));
}

RateVector rates_from_spec(const ModelSpec& spec) {
  if (!spec.rates) {
    fail(ErrorCode::InvalidSpec, "spec has no 'rates' block");
  }
  SubsetVector r(spec.n);
  double total = 0.0;
  for (const SubsetWeight& w : *spec.rates) {
    const Subset mask = subset_from_elements(w.elements, spec.n);
    if (mask == 0) {
      fail(ErrorCode::InvalidSpec,
           "the empty-set rate is determined by the zero-sum constraint and "
           "must not be listed");
    }
    r[mask] = w.value;
    total += w.value;
  }
  r[0] = -total;
  return RateVector(std::move(r));
}

}  // namespace mccp
