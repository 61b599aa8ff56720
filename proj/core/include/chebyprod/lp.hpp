#pragma once

#include <limits>
#include <string>
#include <vector>

namespace chebyprod {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense linear program: minimize c^T x subject to
///   eq_rows[i] . x == eq_rhs[i]
///   ineq_rows[i] . x >= ineq_rhs[i]
///   lower[j] <= x[j] <= upper[j]   (+-inf allowed)
struct LinearProgram {
  int n = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ineq_rows;
  std::vector<double> ineq_rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  explicit LinearProgram(int n_vars = 0)
      : n(n_vars), objective(n_vars, 0.0), lower(n_vars, -kInf), upper(n_vars, kInf) {}

  void add_eq(std::vector<double> row, double rhs);
  void add_ineq(std::vector<double> row, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, Stalled };

const char* to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Stalled;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> dual_eq;    // multipliers of eq rows
  std::vector<double> dual_ineq;  // multipliers of ineq rows (>= 0 up to tol)
  double duality_gap = 0.0;       // |primal - dual| in the solved standard form
  int iterations = 0;
};

/// Two-phase primal simplex on dense tableaus. Dantzig pricing with a switch
/// to Bland's rule once a degeneracy counter trips; deterministic for
/// identical input. Iteration cap 50*(m+n) -> LpStatus::Stalled.
LpResult solve_lp(const LinearProgram& prob, double tol = 1e-9);

/// Thin wrapper supporting the one warm-start pattern the cutting-plane
/// engine needs: append an inequality row and re-solve.
class IncrementalLp {
 public:
  explicit IncrementalLp(LinearProgram prob) : prob_(std::move(prob)) {}

  void add_cut(std::vector<double> row, double rhs) {
    prob_.add_ineq(std::move(row), rhs);
  }
  LinearProgram& program() { return prob_; }
  const LinearProgram& program() const { return prob_; }

  LpResult solve(double tol = 1e-9) const { return solve_lp(prob_, tol); }

 private:
  LinearProgram prob_;
};

}  // namespace chebyprod
