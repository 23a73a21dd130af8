#include "mccp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mccp/embedding.hpp"
#include "mccp/semigroup.hpp"
#include "mccp/sim.hpp"
#include "mccp/star_algebra.hpp"

namespace mccp {

namespace {

struct Merger {
  std::map<std::string, CheckResult> by_name;
  std::vector<std::string> order;

  void add(const std::string& name, double residual, double threshold) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      order.push_back(name);
      by_name[name] = CheckResult{name, residual, threshold,
                                  residual <= threshold, 1};
    } else {
      CheckResult& r = it->second;
      r.residual = std::max(r.residual, residual);
      r.pass = r.pass && residual <= threshold;
      ++r.instances;
    }
  }

  std::vector<CheckResult> take() const {
    std::vector<CheckResult> out;
    out.reserve(order.size());
    for (const std::string& name : order) out.push_back(by_name.at(name));
    return out;
  }
};

// Caps keeping dense-matrix work at desk scale.
int matrix_check_limit(const VerifyOptions& opts) { return opts.full ? 8 : 6; }
int series_log_limit(const VerifyOptions& opts) { return opts.full ? 7 : 6; }

void check_distribution(const CouponDistribution& p, const VerifyOptions& opts,
                        Merger& merger) {
  const int n = p.n();
  const SubsetVector lambda = zeta_subsets(p.probs());

  // Spectral map: zeta intertwines star with the pointwise product.
  {
    const SubsetVector two_step = zeta_subsets(star(p.probs(), p.probs()));
    double residual = 0.0;
    for (Subset k = 0; k < two_step.size(); ++k) {
      residual = std::max(residual,
                          std::abs(two_step[k] - lambda[k] * lambda[k]));
    }
    merger.add("spectral-map", residual, 1e-12);
  }

  // Eigenvector equation M v^K = lambda_K v^K over the fixed basis.
  if (n <= matrix_check_limit(opts)) {
    const LatticeMatrix m = cm_from_params(p);
    const std::size_t d = m.dim();
    double residual = 0.0;
    for (Subset k = 0; k < d; ++k) {
      for (Subset i = 0; i < d; ++i) {
        double acc = 0.0;
        for (Subset j = 0; j < d; ++j) {
          if (subset_of(j, k)) acc += m.at(i, j);
        }
        const double expect = subset_of(i, k) ? lambda[k] : 0.0;
        residual = std::max(residual, std::abs(acc - expect));
      }
    }
    merger.add("eigenvector-basis", residual, 1e-12);
  }

  if (p[0] <= kSingularTol) return;  // logarithm checks need a nonsingular M

  RateVector r = log_params(p);
  if (opts.inject_fault) {
    // Self-test hook: corrupt the generator parameters while preserving the
    // zero-sum constraint. Every downstream comparison must now fail.
    SubsetVector corrupted = r.rates();
    corrupted[corrupted.size() - 1] += 1e-3;
    corrupted[0] -= 1e-3;
    r = RateVector(std::move(corrupted), 1e-9);
  }

  // Vector-level round trip Exp(r) = p; independent of embeddability.
  merger.add("exp-log-roundtrip-vector",
             max_abs_diff(exp_closed(r.rates()), p.probs()), 1e-10);

  // Closed-form exponential against the star series.
  merger.add("exp-series-vs-closed",
             max_abs_diff(exp_closed(r.rates()), exp_series(r.rates())), 1e-10);

  // Partition-lattice form of the log parameters against the Moebius form.
  if (n <= 6) {
    double residual = 0.0;
    for (Subset k = 1; k < lattice_size(n); ++k) {
      residual = std::max(residual,
                          std::abs(partition_log_param(p, k) - r[k]));
    }
    merger.add("partition-identity", residual, 1e-10);
  }

  // Series logarithm of the full matrix against the combinatorial one.
  if (n <= series_log_limit(opts) && p[0] >= 0.05) {
    const DenseMatrix series_log = matlog_oracle(cm_from_params(p).to_dense());
    const DenseMatrix comb_log = cg_from_params(r).to_dense();
    merger.add("log-two-path", max_abs_diff(series_log, comb_log), 1e-7);
  }

  if (r.is_generator()) {
    // Matrix-level reconstruction e^Q = M.
    if (n <= matrix_check_limit(opts)) {
      const DenseMatrix back = exp_oracle(cg_from_params(r).to_dense());
      merger.add("exp-log-roundtrip-matrix",
                 max_abs_diff(back, cm_from_params(p).to_dense()), 1e-8);
    }
    // Semigroup law at the halfway point.
    const CouponDistribution half = semigroup_params(r, 0.5);
    merger.add("semigroup-law",
               max_abs_diff(star(half.probs(), half.probs()), p.probs()),
               1e-10);
  }
}

SubsetVector random_simplex_vector(int n, Rng& rng, double min_empty) {
  while (true) {
    SubsetVector p(n);
    double total = 0.0;
    for (Subset k = 0; k < p.size(); ++k) {
      p[k] = rng.next_exponential(1.0);
      total += p[k];
    }
    for (double& v : p.values) v /= total;
    if (p[0] >= min_empty) return p;
  }
}

SubsetVector random_zero_sum(int n, Rng& rng, double scale) {
  SubsetVector x(n);
  double total = 0.0;
  for (Subset k = 1; k < x.size(); ++k) {
    x[k] = scale * (rng.next_unit() - 0.5);
    total += x[k];
  }
  x[0] = -total;
  return x;
}

void check_algebra_laws(int n, int instances, std::uint64_t seed,
                        Merger& merger) {
  Rng rng(seed, 0xa1);
  for (int t = 0; t < instances; ++t) {
    const SubsetVector x = random_zero_sum(n, rng, 1.0);
    const SubsetVector y = random_zero_sum(n, rng, 1.0);
    const SubsetVector z = random_zero_sum(n, rng, 1.0);

    merger.add("star-commutative", max_abs_diff(star(x, y), star(y, x)), 1e-12);
    merger.add("star-associative",
               max_abs_diff(star(star(x, y), z), star(x, star(y, z))), 1e-12);
    merger.add("sum-rule",
               std::abs(star(x, y).sum() - x.sum() * y.sum()), 1e-12);
    merger.add("norm-submultiplicative",
               std::max(0.0, lattice_norm(star(x, y)) -
                                 lattice_norm(x) * lattice_norm(y)),
               1e-12);
    merger.add("exp-homomorphism",
               max_abs_diff(exp_closed(x + y),
                            star(exp_closed(x), exp_closed(y))),
               1e-10);

    // Log is the inverse of Exp near the unit.
    const double nx = lattice_norm(x);
    const SubsetVector small = (nx > 0.5 ? 0.5 / nx : 1.0) * x;
    merger.add("log-exp-identity",
               max_abs_diff(log_series(exp_closed(small)), small), 1e-9);

    // Euler products approach Exp; error ~ ||v||^2 e^||v|| / 2m.
    const SubsetVector tiny = (nx > 0.0 ? 0.04 / nx : 1.0) * x;
    merger.add("euler-limit",
               max_abs_diff(euler_limit(tiny, 1024), exp_closed(tiny)), 1e-6);
  }
}

}  // namespace

std::vector<CheckResult> verify_distribution(const CouponDistribution& p,
                                             const VerifyOptions& opts) {
  Merger merger;
  check_distribution(p, opts, merger);
  check_algebra_laws(p.n(), opts.full ? 40 : 10, 0x5eedf00d, merger);
  return merger.take();
}

std::vector<CheckResult> verify_random(int n, int count, std::uint64_t seed,
                                       const VerifyOptions& opts) {
  if (n < 1 || n > kMaxDenseGroundSet) {
    fail(ErrorCode::InvalidArgument,
         "verify_random needs 1 <= n <= " + std::to_string(kMaxDenseGroundSet));
  }
  if (count < 1) fail(ErrorCode::InvalidArgument, "need at least one instance");
  Merger merger;
  Rng rng(seed, 0);
  for (int t = 0; t < count; ++t) {
    const CouponDistribution p(random_simplex_vector(n, rng, 1e-4), 1e-9);
    check_distribution(p, opts, merger);
  }
  check_algebra_laws(n, opts.full ? 100 : 25, seed ^ 0x5eedf00d, merger);
  return merger.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

std::string format_check_line(const CheckResult& result) {
  std::ostringstream out;
  out << (result.pass ? "PASS" : "FAIL") << "  " << result.name << "  residual "
      << result.residual << "  threshold " << result.threshold << "  ("
      << result.instances << (result.instances == 1 ? " instance)" : " instances)");
  return out.str();
}

}  // namespace mccp
