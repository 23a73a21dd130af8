#pragma once

#include "mccp/lattice.hpp"

namespace mccp {

// Tags for the three sum-constrained families of parameter vectors:
// ZeroSum parametrises the zero-row-sum matrices, UnitSum the stochastic ones.
enum class VectorTag { General, ZeroSum, UnitSum };

// A parameter vector together with its sum constraint. The tagged
// constructors validate the constraint and reject violations.
struct ModuliVector {
  SubsetVector values;
  VectorTag tag = VectorTag::General;

  static ModuliVector general(SubsetVector v);
  static ModuliVector zero_sum(SubsetVector v, double tol = kValidationTol);
  static ModuliVector unit_sum(SubsetVector v, double tol = kValidationTol);

  int n() const { return values.n; }
};

// Union convolution: (x * y)_K = sum over pairs I u J = K of x_I y_J.
// Sums multiply: sum(x*y) = sum(x) sum(y). Each output coordinate
// enumerates its 3^|K| contributing pairs exactly once via submask loops,
// in fixed order.
SubsetVector star(const SubsetVector& x, const SubsetVector& y);
ModuliVector star(const ModuliVector& x, const ModuliVector& y);

// max over K of |sum_{I <= K} x_I|; submultiplicative for star and equal to
// the spectral radius of the matrix the vector parametrises.
double lattice_norm(const SubsetVector& x);
double lattice_norm(const ModuliVector& x);

inline constexpr double kSeriesTermTol = 1e-16;
inline constexpr int kSeriesMaxTerms = 400;

// Exp(x) = sum_{k >= 0} x^{*k} / k!, truncated once the term norm drops
// below kSeriesTermTol. Zero-sum input yields a unit-sum output.
ModuliVector exp_series(const ModuliVector& x);
SubsetVector exp_series(const SubsetVector& x);

// Closed form: zeta -> elementwise exp -> Moebius, O(n 2^n). This is the
// production path; exp_series is retained as an independent route.
ModuliVector exp_closed(const ModuliVector& r);
SubsetVector exp_closed(const SubsetVector& r);

// Log(unit + x) = sum_{k >= 1} (-1)^{k-1} x^{*k} / k, convergent for
// lattice_norm(x) < 1 (checked; violations are rejected).
ModuliVector log_series(const ModuliVector& y);
SubsetVector log_series(const SubsetVector& y);

// Euler product (unit + x/m)^{*m}, evaluated by binary exponentiation.
// Converges to Exp(x) as m -> infinity with error ~ ||x||^2 e^||x|| / 2m.
ModuliVector euler_limit(const ModuliVector& x, long m);
SubsetVector euler_limit(const SubsetVector& x, long m);

}  // namespace mccp
