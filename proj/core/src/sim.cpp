#include "mccp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace mccp {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

unsigned thread_budget() {
  unsigned budget = std::thread::hardware_concurrency();
  if (budget == 0) budget = 1;
  if (const char* env = std::getenv("COUPON_EMBED_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < budget) {
      budget = static_cast<unsigned>(cap);
    }
  }
  return budget;
}

// Splits [0, total) into contiguous chunks, one worker thread per chunk.
// Workers only touch disjoint state; merging is the caller's business.
template <class Fn>
void parallel_chunks(std::size_t total, const Fn& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_budget(), total));
  if (workers <= 1) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed) ^ mix64(stream * kGamma + 0x6A09E667F3BCC909ull)) {}

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_exponential(double rate) {
  // 1 - u lies in (0, 1], so the log never sees zero.
  return -std::log(1.0 - next_unit()) / rate;
}

StepSampler::StepSampler(const CouponDistribution& p) {
  cdf_.resize(p.probs().size());
  double acc = 0.0;
  for (Subset k = 0; k < cdf_.size(); ++k) {
    acc += std::max(p[k], 0.0);
    cdf_[k] = acc;
  }
  total_ = acc;
}

Subset StepSampler::sample(Rng& rng) const {
  const double u = rng.next_unit() * total_;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<Subset>(
      std::min<std::ptrdiff_t>(it - cdf_.begin(),
                               static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

Subset sample_step(const CouponDistribution& p, Rng& rng) {
  return StepSampler(p).sample(rng);
}

Trajectory run_discrete(const CouponDistribution& p, std::size_t steps,
                        Subset x0, Rng& rng, bool early_exit) {
  const Subset full = full_set(p.n());
  const StepSampler sampler(p);
  Trajectory traj;
  traj.continuous = false;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  Subset x = x0;
  if (x == full) traj.absorption_time = 0.0;
  for (std::size_t m = 1; m <= steps; ++m) {
    if (x == full && early_exit) break;
    x |= sampler.sample(rng);
    traj.times.push_back(static_cast<double>(m));
    traj.states.push_back(x);
    if (x == full && !traj.absorption_time) {
      traj.absorption_time = static_cast<double>(m);
    }
  }
  return traj;
}

Trajectory run_continuous(const RateVector& r, double horizon, Subset y0,
                          Rng& rng, bool early_exit) {
  if (!r.is_generator()) {
    fail(ErrorCode::NotGenerator,
         "continuous-time simulation needs a generator parameter");
  }
  if (horizon < 0.0) {
    fail(ErrorCode::InvalidArgument, "horizon must be nonnegative");
  }
  const Subset full = full_set(r.n());
  // One clock per nonempty subset with positive rate; tolerance-level
  // negatives count as zero.
  std::vector<Subset> clock_set;
  std::vector<double> clock_cdf;
  double total = 0.0;
  for (Subset k = 1; k < r.rates().size(); ++k) {
    if (r[k] > 0.0) {
      total += r[k];
      clock_set.push_back(k);
      clock_cdf.push_back(total);
    }
  }
  Trajectory traj;
  traj.continuous = true;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  Subset y = y0;
  if (y == full) traj.absorption_time = 0.0;
  if (total <= 0.0) return traj;  // no clock ever rings
  double t = 0.0;
  while (true) {
    if (y == full && early_exit) break;
    t += rng.next_exponential(total);
    if (t > horizon) break;
    const double u = rng.next_unit() * total;
    const auto it = std::upper_bound(clock_cdf.begin(), clock_cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - clock_cdf.begin()),
        clock_set.size() - 1);
    const Subset next = y | clock_set[idx];
    if (next != y) {
      y = next;
      traj.times.push_back(t);
      traj.states.push_back(y);
      if (y == full && !traj.absorption_time) traj.absorption_time = t;
    }
  }
  return traj;
}

DenseMatrix empirical_transition(const CouponDistribution& p,
                                 std::size_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const std::size_t d = lattice_size(p.n());
  const StepSampler sampler(p);
  std::vector<std::uint64_t> counts(d * d, 0);
  std::mutex merge_mutex;
  for (Subset start = 0; start < d; ++start) {
    // Stream id = start * trials + trial, independent of threading.
    parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint64_t> local(d, 0);
      for (std::size_t trial = begin; trial < end; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(start) * trials + trial);
        ++local[start | sampler.sample(rng)];
      }
      const std::lock_guard<std::mutex> lock(merge_mutex);
      for (Subset j = 0; j < d; ++j) counts[start * d + j] += local[j];
    });
  }
  DenseMatrix out(d);
  for (std::size_t i = 0; i < d * d; ++i) {
    out.a[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  }
  return out;
}

SubsetVector empirical_discrete_marginal(const CouponDistribution& p,
                                         std::size_t steps, std::size_t trials,
                                         std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const std::size_t d = lattice_size(p.n());
  const Subset full = full_set(p.n());
  const StepSampler sampler(p);
  std::vector<std::uint64_t> counts(d, 0);
  std::mutex merge_mutex;
  parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(d, 0);
    for (std::size_t trial = begin; trial < end; ++trial) {
      Rng rng(seed, trial);
      Subset x = 0;
      for (std::size_t m = 0; m < steps && x != full; ++m) {
        x |= sampler.sample(rng);
      }
      ++local[x];
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    for (Subset k = 0; k < d; ++k) counts[k] += local[k];
  });
  SubsetVector freq(p.n());
  for (Subset k = 0; k < d; ++k) {
    freq[k] = static_cast<double>(counts[k]) / static_cast<double>(trials);
  }
  return freq;
}

SubsetVector empirical_continuous_marginal(const RateVector& r, double t,
                                           std::size_t trials,
                                           std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  if (!r.is_generator()) {
    fail(ErrorCode::NotGenerator,
         "continuous-time simulation needs a generator parameter");
  }
  const std::size_t d = lattice_size(r.n());
  std::vector<std::uint64_t> counts(d, 0);
  std::mutex merge_mutex;
  parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(d, 0);
    for (std::size_t trial = begin; trial < end; ++trial) {
      Rng rng(seed, trial);
      const Trajectory traj = run_continuous(r, t, 0, rng);
      ++local[traj.states.back()];
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    for (Subset k = 0; k < d; ++k) counts[k] += local[k];
  });
  SubsetVector freq(r.n());
  for (Subset k = 0; k < d; ++k) {
    freq[k] = static_cast<double>(counts[k]) / static_cast<double>(trials);
  }
  return freq;
}

CollectionTimeStats collection_time_stats(const CouponDistribution& p,
                                          std::size_t trials,
                                          std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  const SubsetVector inclusion = zeta_supersets(p.probs());
  std::string unreachable;
  for (int i = 1; i <= p.n(); ++i) {
    if (inclusion[singleton(i)] <= kValidationTol) {
      if (!unreachable.empty()) unreachable += ',';
      unreachable += std::to_string(i);
    }
  }
  if (!unreachable.empty()) {
    fail(ErrorCode::Unreachable,
         "elements {" + unreachable + "} are never sampled");
  }
  const Subset full = full_set(p.n());
  const StepSampler sampler(p);
  std::vector<std::uint64_t> times(trials, 0);
  parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t trial = begin; trial < end; ++trial) {
      Rng rng(seed, trial);
      Subset x = 0;
      std::uint64_t steps = 0;
      while (x != full) {
        x |= sampler.sample(rng);
        ++steps;
      }
      times[trial] = steps;
    }
  });
  CollectionTimeStats stats;
  stats.trials = trials;
  double sum = 0.0;
  for (std::uint64_t v : times) sum += static_cast<double>(v);
  stats.mean = sum / static_cast<double>(trials);
  std::sort(times.begin(), times.end());
  auto nearest_rank = [&](double q) {
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(trials)));
    return static_cast<double>(times[std::min(trials - 1, rank == 0 ? 0 : rank - 1)]);
  };
  stats.median = nearest_rank(0.5);
  stats.p95 = nearest_rank(0.95);
  return stats;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "step_or_time,state_mask,state_elements\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    if (t.continuous) {
      out << std::setprecision(17) << t.times[i];
    } else {
      out << static_cast<long long>(t.times[i]);
    }
    out << ',' << t.states[i] << ',';
    const std::vector<int> elems = elements_of(t.states[i]);
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (e) out << '|';
      out << elems[e];
    }
    out << '\n';
  }
}

}  // namespace mccp
