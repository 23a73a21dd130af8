#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mccp/model.hpp"
#include "mccp/oracle.hpp"

namespace mccp {

// SplitMix64: a counter-based 64-bit generator (Weyl sequence through a
// finaliser). Trials get decorrelated streams by hashing the stream id into
// the starting counter, so (seed, stream) fully determines the output and
// trials can run in parallel in any order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_unit();                    // uniform on [0, 1)
  double next_exponential(double rate);  // rate > 0

 private:
  std::uint64_t state_;
};

// Monotone trajectory of the collection process. For discrete runs the
// time column holds the step index; the first entry is the initial state
// at time 0, and only state changes are recorded after that.
struct Trajectory {
  bool continuous = false;
  std::vector<double> times;
  std::vector<Subset> states;
  std::optional<double> absorption_time;  // first hit of the full set
};

// Inverse-CDF sampler over bitmask order with a precomputed cumulative
// table. Build once, draw many.
class StepSampler {
 public:
  explicit StepSampler(const CouponDistribution& p);
  Subset sample(Rng& rng) const;

 private:
  std::vector<double> cdf_;
  double total_ = 1.0;
};

// One draw of Z ~ p. Convenience wrapper; loops should use StepSampler.
Subset sample_step(const CouponDistribution& p, Rng& rng);

// X_{m+1} = X_m u Z_m for `steps` steps from x0. With early_exit (default)
// the run stops once the full set is absorbed.
Trajectory run_discrete(const CouponDistribution& p, std::size_t steps,
                        Subset x0, Rng& rng, bool early_exit = true);

// Continuous-time process on [0, horizon] from y0: one exponential clock
// per nonempty subset K with rate r_K; a ring of clock K unions K into the
// state. Requires a generator parameter. Clocks with zero rate never ring;
// rings that do not change the state are not recorded.
Trajectory run_continuous(const RateVector& r, double horizon, Subset y0,
                          Rng& rng, bool early_exit = true);

// Row-stochastic estimate of the one-step transition matrix: `trials`
// independent draws per start state. Trials may run on several threads
// (capped by COUPON_EMBED_THREADS); the result does not depend on the
// schedule.
DenseMatrix empirical_transition(const CouponDistribution& p,
                                 std::size_t trials, std::uint64_t seed);

// Empirical law of X_steps (discrete) started from the empty set.
SubsetVector empirical_discrete_marginal(const CouponDistribution& p,
                                         std::size_t steps, std::size_t trials,
                                         std::uint64_t seed);

// Empirical law of Y_t (continuous) started from the empty set.
SubsetVector empirical_continuous_marginal(const RateVector& r, double t,
                                           std::size_t trials,
                                           std::uint64_t seed);

struct CollectionTimeStats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
  std::size_t trials = 0;
};

// Empirical distribution of min{ m : X_m = S } from the empty set.
// Rejects distributions under which some element is never sampled.
CollectionTimeStats collection_time_stats(const CouponDistribution& p,
                                          std::size_t trials,
                                          std::uint64_t seed);

// CSV export: step_or_time,state_mask,state_elements (elements joined
// by '|').
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

}  // namespace mccp
