#include "mccp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mccp {

namespace {

void check_same_dim(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.d != y.d) {
    fail(ErrorCode::DimensionMismatch,
         "matrix dimension mismatch: " + std::to_string(x.d) + " vs " +
             std::to_string(y.d));
  }
}

constexpr double kExpTermTol = 1e-18;
constexpr double kExpScaleThreshold = 0.5;
constexpr int kExpMaxTerms = 300;
constexpr double kLogTermTol = 1e-15;
constexpr int kLogMaxTerms = 10000;

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y);
  DenseMatrix out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y);
  DenseMatrix out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

DenseMatrix operator*(double c, const DenseMatrix& x) {
  DenseMatrix out = x;
  for (double& v : out.a) v *= c;
  return out;
}

double max_abs_diff(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y);
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    m = std::max(m, std::abs(x.a[i] - y.a[i]));
  }
  return m;
}

double inf_norm(const DenseMatrix& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.d; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < x.d; ++j) row += std::abs(x.at(i, j));
    worst = std::max(worst, row);
  }
  return worst;
}

DenseMatrix mat_mul(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y);
  const std::size_t d = x.d;
  DenseMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double xik = x.at(i, k);
      if (xik == 0.0) continue;
      const double* yrow = &y.a[k * d];
      double* orow = &out.a[i * d];
      for (std::size_t j = 0; j < d; ++j) orow[j] += xik * yrow[j];
    }
  }
  return out;
}

DenseMatrix exp_oracle(const DenseMatrix& x) {
  int squarings = 0;
  double nrm = inf_norm(x);
  if (!std::isfinite(nrm)) {
    fail(ErrorCode::InvalidArgument, "matrix exponential needs finite entries");
  }
  while (nrm > kExpScaleThreshold) {
    nrm /= 2.0;
    ++squarings;
  }
  DenseMatrix scaled = (squarings ? std::ldexp(1.0, -squarings) : 1.0) * x;

  DenseMatrix acc = DenseMatrix::identity(x.d);
  DenseMatrix term = acc;
  for (int k = 1; k <= kExpMaxTerms; ++k) {
    term = (1.0 / k) * mat_mul(term, scaled);
    acc = acc + term;
    if (inf_norm(term) < kExpTermTol) break;
    if (k == kExpMaxTerms) {
      fail(ErrorCode::NonConvergence, "matrix exponential series did not settle");
    }
  }
  for (int s = 0; s < squarings; ++s) acc = mat_mul(acc, acc);
  return acc;
}

DenseMatrix matlog_oracle(const DenseMatrix& m) {
  double rho = 0.0;
  for (std::size_t i = 0; i < m.d; ++i) {
    rho = std::max(rho, std::abs(m.at(i, i) - 1.0));
  }
  if (rho >= 1.0) {
    fail(ErrorCode::SpectralRadiusTooLarge,
         "log series needs spectral radius of M - 1 below 1; diagonal bound " +
             std::to_string(rho));
  }
  DenseMatrix a = m - DenseMatrix::identity(m.d);
  DenseMatrix acc = a;
  DenseMatrix power = a;
  for (int k = 2; k <= kLogMaxTerms; ++k) {
    power = mat_mul(power, a);
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    DenseMatrix term = (sign / k) * power;
    acc = acc + term;
    if (inf_norm(term) < kLogTermTol) return acc;
  }
  fail(ErrorCode::NonConvergence,
       "matrix log series did not settle after " +
           std::to_string(kLogMaxTerms) + " terms (diagonal bound " +
           std::to_string(rho) + ")");
}

bool is_markov(const DenseMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.d; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.d; ++j) {
      if (m.at(i, j) < -tol) return false;
      row += m.at(i, j);
    }
    if (std::abs(row - 1.0) > tol) return false;
  }
  return true;
}

bool is_generator(const DenseMatrix& q, double tol) {
  for (std::size_t i = 0; i < q.d; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < q.d; ++j) {
      if (i != j && q.at(i, j) < -tol) return false;
      row += q.at(i, j);
    }
    if (std::abs(row) > tol) return false;
  }
  return true;
}

}  // namespace mccp
