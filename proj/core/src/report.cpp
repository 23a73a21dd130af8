#include "mccp/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mccp/star_algebra.hpp"
#include "mccp/version.hpp"

namespace mccp {

AnalysisReport analyze(const CouponDistribution& p, const AnalyzeOptions& opts) {
  AnalysisReport report;
  report.n = p.n();
  report.tolerance = opts.tolerance;
  report.tol_singular = opts.tol_singular;
  report.lambda = zeta_subsets(p.probs());
  report.avoidance = avoidance_probs(p).q;
  report.verdict = embeddability_verdict(p, opts.tolerance, opts.tol_singular);

  const bool singular =
      report.verdict.outcome == Embeddability::SingularNotEmbeddable;
  if (!singular) {
    SubsetVector mu = report.lambda;
    for (double& v : mu.values) v = std::log(v);
    report.mu = std::move(mu);
    for (int i = 1; i <= report.n; ++i) {
      for (int j = i + 1; j <= report.n; ++j) {
        const PairCondition pc = pair_condition(p, i, j);
        report.pair_conditions.push_back(
            PairConditionEntry{i, j, pc.holds, pc.margin});
      }
    }
  }
  if (report.verdict.outcome == Embeddability::Embeddable) {
    report.reconstruction_residual =
        max_abs_diff(exp_closed(report.verdict.rates->rates()), p.probs());
  }
  if (opts.correlations) {
    report.correlations = correlation_report(p);
  }
  return report;
}

int report_exit_code(const AnalysisReport& report) {
  switch (report.verdict.outcome) {
    case Embeddability::Embeddable:
      return 0;
    case Embeddability::NotEmbeddable:
      return 2;
    case Embeddability::SingularNotEmbeddable:
      return 3;
  }
  return 1;
}

namespace {

using nlohmann::json;

const char* verdict_name(Embeddability outcome) {
  switch (outcome) {
    case Embeddability::Embeddable:
      return "embeddable";
    case Embeddability::NotEmbeddable:
      return "not_embeddable";
    case Embeddability::SingularNotEmbeddable:
      return "singular_not_embeddable";
  }
  return "unknown";
}

json subset_json(Subset k) {
  return json{{"mask", k}, {"elements", elements_of(k)}};
}

json vector_json(const SubsetVector& v) {
  json arr = json::array();
  for (Subset k : subsets_by_cardinality(v.n)) {
    json entry = subset_json(k);
    entry["value"] = v[k];
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["n"] = report.n;
  doc["tolerance"] = report.tolerance;
  doc["singular_tolerance"] = report.tol_singular;
  doc["verdict"] = verdict_name(report.verdict.outcome);
  doc["spectrum_simple"] = report.verdict.spectrum_simple;
  doc["exit_code"] = report_exit_code(report);

  doc["eigenvalues"] = vector_json(report.lambda);
  doc["avoidance"] = vector_json(report.avoidance);
  doc["log_eigenvalues"] =
      report.mu ? vector_json(*report.mu) : json(nullptr);
  doc["rates"] = report.verdict.rates
                     ? vector_json(report.verdict.rates->rates())
                     : json(nullptr);

  json witnesses = json::array();
  for (Subset k : report.verdict.witnesses) {
    json w = subset_json(k);
    w["rate"] = (*report.verdict.rates)[k];
    witnesses.push_back(std::move(w));
  }
  doc["witnesses"] = std::move(witnesses);

  json boundary = json::array();
  for (Subset k : report.verdict.boundary_flags) boundary.push_back(subset_json(k));
  doc["boundary_subsets"] = std::move(boundary);

  json pairs = json::array();
  for (const PairConditionEntry& e : report.pair_conditions) {
    pairs.push_back(
        {{"i", e.i}, {"j", e.j}, {"holds", e.holds}, {"margin", e.margin}});
  }
  doc["pair_conditions"] = std::move(pairs);

  if (report.correlations) {
    json corr = json::array();
    for (const auto& [k, value] : report.correlations->correlations) {
      json entry = subset_json(k);
      entry["value"] = value;
      corr.push_back(std::move(entry));
    }
    doc["correlations"] = std::move(corr);
  } else {
    doc["correlations"] = json(nullptr);
  }

  doc["reconstruction_residual"] = report.reconstruction_residual
                                       ? json(*report.reconstruction_residual)
                                       : json(nullptr);
  return doc.dump(2);
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << "ground set size : " << report.n << '\n';
  out << "verdict         : " << verdict_name(report.verdict.outcome) << '\n';
  out << "spectrum simple : " << (report.verdict.spectrum_simple ? "yes" : "no")
      << '\n';
  out << "tolerance       : " << report.tolerance
      << "   singular tolerance: " << report.tol_singular << '\n';
  if (report.reconstruction_residual) {
    out << "reconstruction  : max |Exp(r) - p| = "
        << *report.reconstruction_residual << '\n';
  }
  if (!report.verdict.witnesses.empty()) {
    out << "witnesses (r_K < -tol):";
    for (Subset k : report.verdict.witnesses) out << ' ' << format_subset(k);
    out << '\n';
  }
  if (!report.verdict.boundary_flags.empty()) {
    out << "boundary (|r_K| <= tol):";
    for (Subset k : report.verdict.boundary_flags) out << ' ' << format_subset(k);
    out << '\n';
  }

  out << '\n'
      << std::left << std::setw(14) << "subset" << std::right << std::setw(14)
      << "lambda" << std::setw(14) << "q";
  if (report.verdict.rates) out << std::setw(16) << "r";
  out << '\n';
  for (Subset k : subsets_by_cardinality(report.lambda.n)) {
    out << std::left << std::setw(14) << format_subset(k) << std::right
        << std::setw(14) << std::setprecision(6) << report.lambda[k]
        << std::setw(14) << report.avoidance[k];
    if (report.verdict.rates) {
      out << std::setw(16) << std::setprecision(8)
          << (*report.verdict.rates)[k];
    }
    out << '\n';
  }

  if (!report.pair_conditions.empty()) {
    out << "\npair conditions (p0*pij >= pi*pj):\n";
    for (const PairConditionEntry& e : report.pair_conditions) {
      out << "  {" << e.i << ',' << e.j << "}: "
          << (e.holds ? "holds" : "fails") << "  margin " << std::setprecision(6)
          << e.margin << '\n';
    }
  }
  if (report.correlations) {
    out << "\ncorrelations C_K:\n";
    for (const auto& [k, value] : report.correlations->correlations) {
      out << "  " << std::left << std::setw(12) << format_subset(k)
          << std::right << std::setprecision(8) << value << '\n';
    }
  }
  return out.str();
}

}  // namespace mccp
