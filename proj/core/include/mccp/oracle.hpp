#pragma once

#include <cstddef>
#include <vector>

#include "mccp/errors.hpp"

namespace mccp {

// Plain dense matrix for the brute-force cross-check routines. Kept free of
// any lattice structure on purpose: these paths validate the combinatorial
// ones and must not share machinery with them.
struct DenseMatrix {
  std::size_t d = 0;
  std::vector<double> a;  // row-major, d*d

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : d(dim), a(dim * dim, 0.0) {}

  double at(std::size_t i, std::size_t j) const { return a[i * d + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * d + j]; }

  static DenseMatrix identity(std::size_t dim);
};

DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix operator*(double c, const DenseMatrix& x);
double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y);
double inf_norm(const DenseMatrix& x);  // max row sum of absolute values

// Standard product with fixed (ascending k) accumulation order.
DenseMatrix mat_mul(const DenseMatrix& x, const DenseMatrix& y);

// Matrix exponential by scaling and squaring: halve until the inf-norm is
// <= 0.5, sum the Taylor series to term norm < 1e-18, square back.
DenseMatrix exp_oracle(const DenseMatrix& x);

// Principal logarithm by the plain series log(1 + A) = sum (-1)^{k-1} A^k/k,
// truncated at term norm < 1e-15 or 10000 terms. The input is assumed
// triangular, so the spectral radius of A = M - 1 is checked via the
// diagonal; a bound >= 1 signals slow or no convergence, not mathematical
// non-existence.
DenseMatrix matlog_oracle(const DenseMatrix& m);

// entries >= -tol and row sums within tol of 1
bool is_markov(const DenseMatrix& m, double tol);
// off-diagonal >= -tol and row sums within tol of 0
bool is_generator(const DenseMatrix& q, double tol);

}  // namespace mccp
