#include "chebyprod/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebyprod/poly.hpp"

namespace chebyprod {

namespace {

constexpr double kBoundaryRelTol = 1e-12;

void check_tk(int T, int k) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (k < 1 || k > T / 2) throw std::invalid_argument("k must lie in [1, floor(T/2)]");
}

// log(T^-T) boundary compare with relative tolerance.
int compare_to_critical(int T, double gamma) {
  const double crit_log = -static_cast<double>(T) * std::log(static_cast<double>(T));
  const double g_log = std::log(gamma);
  const double tol = kBoundaryRelTol * std::max(1.0, std::abs(crit_log));
  if (g_log < crit_log - tol) return -1;
  if (g_log > crit_log + tol) return 1;
  return 0;
}

// Feasible (u, v) pairs of the two-level slice: v in [0, 1/(T-k)],
// u = (1 - (T-k)v)/k, u^k v^(T-k) = gamma. Returned as v roots.
std::vector<double> two_level_roots(int T, int k, double gamma) {
  // (1 - (T-k)v)^k * v^(T-k) - gamma * k^k = 0, expanded via binomials.
  const int tk = T - k;
  std::vector<double> c(T + 1, 0.0);
  // (1 - tk*v)^k = sum_j C(k,j) (-tk)^j v^j
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    c[j + tk] += binom * std::pow(-static_cast<double>(tk), j);
    binom = binom * (k - j) / (j + 1.0);
  }
  c[0] -= gamma * std::pow(static_cast<double>(k), k);
  const Polynomial p{std::move(c)};
  return roots_in_domain(p, Domain::interval(0.0, 1.0 / tk), 1e-13);
}

TwoLevelValue two_level_opt(int T, int k, double gamma, bool maximize) {
  check_tk(T, k);
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");

  TwoLevelValue best;
  if (gamma > 0.0 && compare_to_critical(T, gamma) > 0) return best;  // infeasible

  const int tk = T - k;
  const auto consider = [&](double v) {
    const double u = std::max(0.0, (1.0 - tk * v) / k);
    const double val = k * u * u + tk * v * v;
    if (!best.feasible || (maximize ? val > best.value : val < best.value)) {
      best = {true, val, u, v};
    }
  };

  if (gamma == 0.0) {
    // Product pinned to zero: one group sits at zero.
    consider(1.0 / tk);          // u = 0
    if (k > 0) consider(0.0);    // v = 0, u = 1/k
    return best;
  }
  for (double v : two_level_roots(T, k, gamma)) consider(v);
  if (!best.feasible && compare_to_critical(T, gamma) == 0) {
    consider(1.0 / T);  // unique feasible point at the AM-GM boundary
  }
  return best;
}

}  // namespace

TwoLevelValue f_T_k(int T, int k, double gamma) {
  return two_level_opt(T, k, gamma, /*maximize=*/false);
}

TwoLevelValue g_T_k(int T, int k, double gamma) {
  return two_level_opt(T, k, gamma, /*maximize=*/true);
}

double f_T(int T, double gamma_bar) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (!(gamma_bar >= 0.0)) throw std::invalid_argument("gamma_bar must be non-negative");
  if (gamma_bar == 0.0) return 1.0 / (T - 1);
  if (compare_to_critical(T, gamma_bar) >= 0) return 1.0 / T;
  const TwoLevelValue v = f_T_k(T, 1, gamma_bar);
  return v.feasible ? v.value : 1.0 / T;
}

GValue g_T(int T, double gamma_under) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (!(gamma_under >= 0.0)) throw std::invalid_argument("gamma_under must be non-negative");
  if (gamma_under == 0.0) return {true, 1.0};
  const int cmp = compare_to_critical(T, gamma_under);
  if (cmp > 0) return {false, 0.0};
  if (cmp == 0) return {true, 1.0 / T};
  const TwoLevelValue v = g_T_k(T, 1, gamma_under);
  if (!v.feasible) return {true, 1.0 / T};
  return {true, v.value};
}

MinProductResult min_product_given_means(int T, double m1, double m2) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw std::invalid_argument("m1, m2 must be positive");

  const double ratio = m2 / (m1 * m1);
  MinProductResult res;
  if (ratio < 1.0 - kBoundaryRelTol || ratio > T * (1.0 + kBoundaryRelTol)) return res;
  res.feasible = true;

  const double zero_cut = static_cast<double>(T) / (T - 1);
  if (ratio >= zero_cut * (1.0 - kBoundaryRelTol)) {
    // One coordinate at zero, the remaining T-1 two-level.
    res.value = 0.0;
    res.witness.assign(T, 0.0);
    if (T == 2) {
      res.witness[1] = 2.0 * m1;
    } else {
      const int Tp = T - 1;
      const double m1p = m1 * T / Tp;
      const double m2p = m2 * T / Tp;
      const double d = std::sqrt(std::max(0.0, (m2p - m1p * m1p) / (Tp - 1)));
      res.witness[1] = m1p + (Tp - 1) * d;
      for (int t = 2; t < T; ++t) res.witness[t] = std::max(0.0, m1p - d);
    }
    return res;
  }

  // Interior minimum: two-level stationary points, k at u and T-k at v.
  double best = -1.0;
  const double spread = std::max(0.0, m2 - m1 * m1);
  for (int k = 1; k < T; ++k) {
    const double d = std::sqrt(spread / (static_cast<double>(k) * (T - k)));
    for (const double sign : {1.0, -1.0}) {
      const double u = m1 + sign * (T - k) * d;
      const double v = m1 - sign * k * d;
      if (u < 0.0 || v < 0.0) continue;
      const double prod = std::pow(u, k) * std::pow(v, T - k);
      if (best < 0.0 || prod < best) {
        best = prod;
        res.witness.assign(T, v);
        for (int t = 0; t < k; ++t) res.witness[t] = u;
      }
    }
  }
  res.value = std::max(0.0, best);
  return res;
}

}  // namespace chebyprod
