#include "chebyprod/poly.hpp"

#include <algorithm>
#include <cmath>

namespace chebyprod {

namespace {

double max_abs_coeff(const std::vector<double>& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::effective(double rel_eps) const {
  if (coeffs_.empty()) return {};
  const double scale = max_abs_coeff(coeffs_);
  std::vector<double> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) < rel_eps * scale) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial Polynomial::normalized() const {
  if (coeffs_.empty()) return {};
  const double scale = max_abs_coeff(coeffs_);
  std::vector<double> c = coeffs_;
  for (double& v : c) v /= scale;
  return Polynomial(std::move(c));
}

namespace {

// Remainder of a mod b, coefficients trimmed relative to the working scale.
std::vector<double> poly_remainder(std::vector<double> a, const std::vector<double>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const double lead = b.back();
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    const double factor = a[k] / lead;
    if (factor != 0.0) {
      for (int j = 0; j < db; ++j) a[k - db + j] -= factor * b[j];
    }
    a[k] = 0.0;
  }
  a.resize(db);
  const double scale = std::max(1.0, max_abs_coeff(a));
  for (double& v : a) {
    if (std::abs(v) < 1e-14 * scale) v = 0.0;
  }
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  return a;
}

// Sturm chain of a normalized polynomial. Each element is rescaled to unit
// max coefficient; positive scaling preserves the sign sequence.
std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  chain.push_back(p.normalized());
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.normalized());
  while (chain.back().degree() > 0) {
    std::vector<double> r =
        poly_remainder(chain[chain.size() - 2].coeffs(), chain.back().coeffs());
    if (r.empty()) break;
    for (double& v : r) v = -v;
    chain.emplace_back(std::move(r));
    chain.back() = chain.back().normalized();
  }
  return chain;
}

int sign_changes(const std::vector<Polynomial>& chain, double x) {
  int changes = 0;
  int prev = 0;
  for (const Polynomial& q : chain) {
    const int s = sign_of(q(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Distinct real roots in (a, b].
int count_roots(const std::vector<Polynomial>& chain, double a, double b) {
  return sign_changes(chain, a) - sign_changes(chain, b);
}

// Refine a bracket known to contain exactly one distinct root.
double refine_root(const Polynomial& p, const Polynomial& dp,
                   const std::vector<Polynomial>& chain, double a, double b,
                   double tol) {
  double fa = p(a), fb = p(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) != (fb < 0.0)) {
    for (int i = 0; i < 200 && (b - a) > 0.25 * tol * std::max(1.0, std::abs(a)); ++i) {
      const double m = 0.5 * (a + b);
      const double fm = p(m);
      if (fm == 0.0) return m;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 6; ++i) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double y = x - p(x) / d;
      if (!(y >= a && y <= b)) break;
      if (y == x) break;
      x = y;
    }
    return x;
  }
  // No sign change: even multiplicity. Split by Sturm counts.
  for (int i = 0; i < 200 && (b - a) > 0.25 * tol * std::max(1.0, std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    if (count_roots(chain, a, m) >= 1)
      b = m;
    else
      a = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> isolate_nonnegative_roots(const Polynomial& p, double tol) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no isolated roots");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  const Polynomial q = p.effective().normalized();
  if (q.degree() <= 0) return {};
  const Polynomial dq = q.derivative();

  const auto& c = q.coeffs();
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    bound = std::max(bound, std::abs(c[i] / c.back()));
  bound += 1.0;

  const std::vector<Polynomial> chain = sturm_chain(q);

  std::vector<double> roots;
  std::vector<std::pair<double, double>> stack;
  const double lo0 = -tol;
  if (count_roots(chain, lo0, bound) > 0) stack.emplace_back(lo0, bound);

  int guard = 0;
  while (!stack.empty() && ++guard < 100000) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int n = count_roots(chain, a, b);
    if (n == 0) continue;
    const double width_tol = tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    if (n == 1) {
      roots.push_back(refine_root(q, dq, chain, a, b, tol));
      continue;
    }
    if (b - a < width_tol) {
      // Cluster of near-multiple roots: report once.
      roots.push_back(0.5 * (a + b));
      continue;
    }
    const double m = 0.5 * (a + b);
    stack.emplace_back(a, m);
    stack.emplace_back(m, b);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (r < 0.0) {
      if (r < -tol) continue;
      r = 0.0;
    }
    if (!merged.empty() && r - merged.back() < 10.0 * tol * std::max(1.0, std::abs(r)))
      continue;
    merged.push_back(r);
  }
  return merged;
}

std::vector<double> roots_in_domain(const Polynomial& p, const Domain& d, double tol) {
  std::vector<double> all = isolate_nonnegative_roots(p, tol);
  std::vector<double> out;
  const double pad = tol * std::max(1.0, std::abs(d.lo));
  for (double r : all) {
    if (r < d.lo - pad) continue;
    if (!d.is_ray() && r > d.hi + tol * std::max(1.0, std::abs(d.hi))) continue;
    out.push_back(std::clamp(r, d.lo, d.hi));
  }
  return out;
}

MinResult global_min(const Polynomial& p, const Domain& d, double tol) {
  if (d.lo > d.hi) throw std::invalid_argument("empty domain");
  if (p.is_zero()) return {true, d.lo, 0.0};

  const Polynomial q = p.effective();
  if (q.degree() <= 0) return {true, d.lo, p(d.lo)};

  if (d.is_ray() && q.coeffs().back() < 0.0) {
    // Heads to -infinity along the ray; hand back a point that is already
    // negative as the witness.
    double x = std::max(1.0, d.lo);
    for (int i = 0; i < 600 && x < 1e120; ++i) {
      if (p(x) < 0.0) return {false, x, p(x)};
      x *= 2.0;
    }
    // The dropped true leading coefficient dominates after all; fall through
    // to stationary analysis of the original polynomial.
  }

  std::vector<double> candidates{d.lo};
  if (!d.is_ray()) candidates.push_back(d.hi);
  const Polynomial dp = p.derivative();
  if (!dp.is_zero() && dp.degree() >= 1) {
    for (double r : roots_in_domain(dp, d, tol)) candidates.push_back(r);
  }

  double best_x = candidates.front();
  double best_v = p(best_x);
  for (double x : candidates) {
    const double v = p(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return {true, best_x, best_v};
}

MinResult quadratic_min(double a2, double a1, double a0, const Domain& d) {
  if (d.lo > d.hi) throw std::invalid_argument("empty domain");
  const auto eval = [&](double x) { return (a2 * x + a1) * x + a0; };

  if (!d.is_ray()) {
    double best_x = d.lo, best_v = eval(d.lo);
    if (eval(d.hi) < best_v) {
      best_x = d.hi;
      best_v = eval(d.hi);
    }
    if (a2 > 0.0) {
      const double v = -a1 / (2.0 * a2);
      if (v > d.lo && v < d.hi && eval(v) < best_v) {
        best_x = v;
        best_v = eval(v);
      }
    }
    return {true, best_x, best_v};
  }

  if (a2 > 0.0) {
    const double v = std::max(d.lo, -a1 / (2.0 * a2));
    return {true, v, eval(v)};
  }
  if (a2 == 0.0 && a1 >= 0.0) return {true, d.lo, eval(d.lo)};

  // Unbounded below along the ray; walk out to a concretely negative point.
  double x = std::max(1.0, d.lo);
  if (a2 < 0.0) x = std::max(x, std::abs(a1) / (-a2));
  while (eval(x) > -1.0 && x < 1e150) x *= 2.0;
  return {false, x, eval(x)};
}

}  // namespace chebyprod
