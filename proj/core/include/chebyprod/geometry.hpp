#pragma once

#include <vector>

namespace chebyprod {

/// Value of a two-level subproblem: k coordinates at xi_lo, T-k at xi_hi,
/// constrained to the unit simplex slice with a pinned product.
struct TwoLevelValue {
  bool feasible = false;
  double value = 0.0;
  double xi_lo = 0.0;
  double xi_hi = 0.0;
};

/// min k*u^2 + (T-k)*v^2  s.t.  k*u + (T-k)*v = 1,  u^k v^(T-k) = gamma,
/// u, v >= 0. Infeasible when gamma > T^-T.
TwoLevelValue f_T_k(int T, int k, double gamma);

/// Same feasible set, maximized.
TwoLevelValue g_T_k(int T, int k, double gamma);

/// min ||xi||_2^2 over the simplex slice ||xi||_1 = 1 with product <= gamma_bar:
/// 1/(T-1) at gamma_bar = 0, the k=1 two-level value on (0, T^-T), 1/T beyond.
double f_T(int T, double gamma_bar);

struct GValue {
  bool finite = false;  // false: the slice with product >= gamma_under is empty
  double value = 0.0;
};

/// max ||xi||_2^2 over the simplex slice with product >= gamma_under:
/// 1 at gamma_under = 0, the k=1 two-level value on (0, T^-T), 1/T at T^-T,
/// -infinity (finite = false) beyond.
GValue g_T(int T, double gamma_under);

struct MinProductResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> witness;
};

/// min prod(xi) s.t. mean(xi) = m1, mean(xi^2) = m2, xi >= 0.
/// Feasible iff 1 <= m2/m1^2 <= T; zero iff m2/m1^2 >= T/(T-1), with a
/// witness of one zero coordinate and the rest two-level.
MinProductResult min_product_given_means(int T, double m1, double m2);

}  // namespace chebyprod
