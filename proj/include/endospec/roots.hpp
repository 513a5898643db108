#pragma once

// Numeric root estimates. These never feed the exact pipeline; they exist for
// the growth-rate cross-checks and as an independent sanity oracle in tests.

#include <Eigen/Eigenvalues>
#include <complex>
#include <vector>

#include "endospec/errors.hpp"
#include "endospec/intpoly.hpp"

namespace endospec {

namespace detail {

// Coefficients as doubles, rescaled by a common power of two when they exceed
// double range; harmless for root computations.
inline std::vector<double> coeffs_as_double(const IntPoly& p) {
  unsigned max_bits = 0;
  for (const Int& c : p.coeffs()) {
    unsigned b = c == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(int_abs(c))) + 1;
    if (b > max_bits) max_bits = b;
  }
  unsigned shift = max_bits > 900 ? max_bits - 512 : 0;
  std::vector<double> out(p.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Int c = p.coeffs()[i];
    if (shift) c >>= shift;
    out[i] = c.convert_to<double>();
  }
  return out;
}

}  // namespace detail

// All complex roots of p, via the eigenvalues of its companion matrix in
// double precision.
inline std::vector<std::complex<double>> complex_roots(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1)
    throw DegreeZeroError("complex_roots: need degree >= 1");
  auto c = detail::coeffs_as_double(p);
  const std::size_t d = c.size() - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                    static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i + 1 < d; ++i)
    companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  for (std::size_t i = 0; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots;
  roots.reserve(d);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

// Cauchy bound 1 + max |c_i / c_deg|; every root modulus is below it.
inline double cauchy_bound(const IntPoly& p) {
  auto c = detail::coeffs_as_double(p);
  double m = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    m = std::max(m, std::abs(c[i] / c.back()));
  return 1.0 + m;
}

// Maximum modulus of the complex roots, capped by the Cauchy bound.
inline double max_root_modulus(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1)
    throw DegreeZeroError("max_root_modulus: need degree >= 1");
  double best = 0;
  for (const auto& z : complex_roots(p)) best = std::max(best, std::abs(z));
  return std::min(best, cauchy_bound(p));
}

}  // namespace endospec
