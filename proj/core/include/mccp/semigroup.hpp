#pragma once

#include <vector>

#include "mccp/model.hpp"

namespace mccp {

// Piecewise-constant generator schedule: rates[j] applies on
// [breakpoints[j], breakpoints[j+1]); breakpoints start at 0 and increase
// strictly; every rate vector must be a generator parameter.
class PiecewiseRateSchedule {
 public:
  PiecewiseRateSchedule(std::vector<double> breakpoints,
                        std::vector<RateVector> rates);

  double horizon() const { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<RateVector>& rates() const { return rates_; }

  // Exact piecewise-linear integral of the rate parameters over [0, t].
  RateVector integrate(double t) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<RateVector> rates_;
};

// Parameter vector of e^{tQ}: p(t)_K = sum_{J <= K} (-1)^{|K-J|}
// exp(t sum_{I <= J} r_I). p(0) is the unit vector and p(1) = Exp(r).
CouponDistribution semigroup_params(const RateVector& r, double t);

// Parameter vector of the flow at time t: Exp of the integrated schedule.
CouponDistribution flow_params(const PiecewiseRateSchedule& schedule, double t);

}  // namespace mccp
