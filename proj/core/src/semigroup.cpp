#include "mccp/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mccp {

namespace {

// Tolerance for validating internally produced distributions: the sum
// constraint of the input rates degrades linearly with elapsed time.
double propagated_tol(double t) {
  return kValidationTol * std::max(1.0, std::abs(t)) * 4.0;
}

CouponDistribution exp_of_rates(const SubsetVector& r, double tol) {
  SubsetVector p = zeta_subsets(r);
  for (double& v : p.values) v = std::exp(v);
  mobius_subsets_inplace(p);
  return CouponDistribution(std::move(p), tol);
}

}  // namespace

PiecewiseRateSchedule::PiecewiseRateSchedule(std::vector<double> breakpoints,
                                             std::vector<RateVector> rates)
    : breakpoints_(std::move(breakpoints)), rates_(std::move(rates)) {
  if (breakpoints_.size() != rates_.size() + 1 || rates_.empty()) {
    fail(ErrorCode::InvalidSchedule,
         "schedule needs m rate vectors and m+1 breakpoints");
  }
  if (breakpoints_.front() != 0.0) {
    fail(ErrorCode::InvalidSchedule, "schedule must start at t = 0");
  }
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1])) {
      fail(ErrorCode::InvalidSchedule,
           "breakpoints must increase strictly");
    }
  }
  const int n = rates_.front().n();
  for (const RateVector& q : rates_) {
    if (q.n() != n) {
      fail(ErrorCode::InvalidSchedule, "schedule mixes ground set sizes");
    }
    if (!q.is_generator()) {
      fail(ErrorCode::NotGenerator,
           "every schedule segment must be a generator parameter");
    }
  }
}

RateVector PiecewiseRateSchedule::integrate(double t) const {
  if (t < 0.0 || t > horizon()) {
    fail(ErrorCode::InvalidArgument,
         "time " + std::to_string(t) + " outside the schedule [0," +
             std::to_string(horizon()) + "]");
  }
  SubsetVector acc(rates_.front().n());
  for (std::size_t j = 0; j < rates_.size(); ++j) {
    const double lo = breakpoints_[j];
    const double hi = std::min(breakpoints_[j + 1], t);
    if (hi <= lo) break;
    const double len = hi - lo;
    const SubsetVector& q = rates_[j].rates();
    for (Subset k = 0; k < acc.size(); ++k) acc[k] += len * q[k];
  }
  return RateVector(std::move(acc), propagated_tol(t));
}

CouponDistribution semigroup_params(const RateVector& r, double t) {
  if (!r.is_generator()) {
    fail(ErrorCode::NotGenerator,
         "semigroup evaluation needs a generator parameter");
  }
  if (t < 0.0) {
    fail(ErrorCode::InvalidArgument, "semigroup time must be nonnegative");
  }
  return exp_of_rates(t * r.rates(), propagated_tol(t));
}

CouponDistribution flow_params(const PiecewiseRateSchedule& schedule,
                               double t) {
  const RateVector rt = schedule.integrate(t);
  return exp_of_rates(rt.rates(), propagated_tol(t));
}

}  // namespace mccp
