#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace chebyprod {

/// Dense univariate polynomial, coeffs[i] = coefficient of x^i.
/// Exact trailing zeros are trimmed on construction; the zero polynomial is
/// represented by an empty coefficient list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(double x) const;
  Polynomial derivative() const;

  /// Copy with leading coefficients below rel_eps * max|coeff| dropped.
  /// Separation oracles work on this to avoid reading cancellation noise in
  /// the top coefficient as a genuine recession direction.
  Polynomial effective(double rel_eps = 1e-13) const;

  /// Copy scaled so that max|coeff| = 1 (identity for the zero polynomial).
  Polynomial normalized() const;

 private:
  std::vector<double> coeffs_;
};

/// [lo, hi] with hi = +infinity for a ray [lo, inf).
struct Domain {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  static Domain ray(double a) { return {a, std::numeric_limits<double>::infinity()}; }
  static Domain interval(double a, double b) { return {a, b}; }
  bool is_ray() const { return hi == std::numeric_limits<double>::infinity(); }
};

/// All real roots of p in [0, inf), ascending, each root reported once
/// (clusters of near-multiple roots are merged). Throws on the zero
/// polynomial.
std::vector<double> isolate_nonnegative_roots(const Polynomial& p,
                                              double tol = 1e-10);

/// Real roots of p inside [d.lo, d.hi], ascending.
std::vector<double> roots_in_domain(const Polynomial& p, const Domain& d,
                                    double tol = 1e-10);

struct MinResult {
  bool bounded = true;
  double argmin = 0.0;  // when unbounded: a witness point with p(witness) < 0
  double value = 0.0;
};

/// Exact stationary-point minimization: min over {endpoints} union {roots of
/// p' in the domain}. On a ray whose (effective) leading coefficient is
/// negative, returns bounded = false together with a witness point where p is
/// negative. Throws on an empty domain (lo > hi).
MinResult global_min(const Polynomial& p, const Domain& d, double tol = 1e-10);

/// Closed-form minimum of a2*x^2 + a1*x + a0 over the domain. When the
/// quadratic is unbounded below on a ray, argmin is a point where the value
/// has already dropped below -1.
MinResult quadratic_min(double a2, double a1, double a0, const Domain& d);

}  // namespace chebyprod
