#include "chebyprod/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebyprod {

void LinearProgram::add_eq(std::vector<double> row, double rhs) {
  if (static_cast<int>(row.size()) != n) throw std::invalid_argument("row dimension mismatch");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::add_ineq(std::vector<double> row, double rhs) {
  if (static_cast<int>(row.size()) != n) throw std::invalid_argument("row dimension mismatch");
  ineq_rows.push_back(std::move(row));
  ineq_rhs.push_back(rhs);
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Stalled: return "stalled";
  }
  return "?";
}

namespace {

// Standard-form problem: min c.y st A y = b, y >= 0, built from the general
// form by variable shifts/splits plus surplus and bound rows.
struct StandardForm {
  int m = 0;  // rows
  int n = 0;  // structural columns (original transforms + surplus + bound slacks)
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<bool> row_negated;  // vs the order eq rows, ineq rows, bound rows

  // Mapping back: x[j] = shift[j] + pos_col[j] - neg_col[j] contributions.
  struct VarMap {
    double shift = 0.0;
    int pos = -1;  // column with +1 weight
    int neg = -1;  // column with -1 weight
  };
  std::vector<VarMap> var_map;
  int n_eq = 0;
  int n_ineq = 0;
};

StandardForm build_standard_form(const LinearProgram& p) {
  StandardForm sf;
  sf.n_eq = static_cast<int>(p.eq_rows.size());
  sf.n_ineq = static_cast<int>(p.ineq_rows.size());
  sf.var_map.resize(p.n);

  // Column layout pass.
  int cols = 0;
  struct BoundRow {
    int col;
    double range;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < p.n; ++j) {
    const double lo = p.lower[j], hi = p.upper[j];
    if (lo > hi) {
      // Empty box: encode as an infeasible standard form below via a bound
      // row with negative range.
    }
    auto& vm = sf.var_map[j];
    if (lo > -kInf) {
      vm.shift = lo;
      vm.pos = cols++;
      if (hi < kInf) bound_rows.push_back({vm.pos, hi - lo});
    } else if (hi < kInf) {
      vm.shift = hi;
      vm.neg = cols++;
    } else {
      vm.pos = cols++;
      vm.neg = cols++;
    }
  }
  const int first_surplus = cols;
  cols += sf.n_ineq;
  const int first_bound_slack = cols;
  cols += static_cast<int>(bound_rows.size());

  sf.n = cols;
  sf.m = sf.n_eq + sf.n_ineq + static_cast<int>(bound_rows.size());
  sf.a.assign(sf.m, std::vector<double>(sf.n, 0.0));
  sf.b.assign(sf.m, 0.0);
  sf.c.assign(sf.n, 0.0);
  sf.row_negated.assign(sf.m, false);

  const auto emit_row = [&](int r, const std::vector<double>& row, double rhs) {
    double adj = rhs;
    for (int j = 0; j < p.n; ++j) {
      const double w = row[j];
      if (w == 0.0) continue;
      const auto& vm = sf.var_map[j];
      adj -= w * vm.shift;
      if (vm.pos >= 0) sf.a[r][vm.pos] += w;
      if (vm.neg >= 0) sf.a[r][vm.neg] -= w;
    }
    sf.b[r] = adj;
  };

  int r = 0;
  for (int i = 0; i < sf.n_eq; ++i, ++r) emit_row(r, p.eq_rows[i], p.eq_rhs[i]);
  for (int i = 0; i < sf.n_ineq; ++i, ++r) {
    emit_row(r, p.ineq_rows[i], p.ineq_rhs[i]);
    sf.a[r][first_surplus + i] = -1.0;
  }
  for (std::size_t i = 0; i < bound_rows.size(); ++i, ++r) {
    sf.a[r][bound_rows[i].col] = 1.0;
    sf.a[r][first_bound_slack + static_cast<int>(i)] = 1.0;
    sf.b[r] = bound_rows[i].range;
  }

  for (int j = 0; j < p.n; ++j) {
    const auto& vm = sf.var_map[j];
    if (vm.pos >= 0) sf.c[vm.pos] += p.objective[j];
    if (vm.neg >= 0) sf.c[vm.neg] -= p.objective[j];
  }

  for (int i = 0; i < sf.m; ++i) {
    if (sf.b[i] < 0.0) {
      for (double& v : sf.a[i]) v = -v;
      sf.b[i] = -sf.b[i];
      sf.row_negated[i] = true;
    }
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf, double tol)
      : m_(sf.m), n_(sf.n), tol_(tol), t_(sf.m + 1, std::vector<double>(sf.n + sf.m + 1, 0.0)) {
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      std::copy(sf.a[i].begin(), sf.a[i].end(), t_[i].begin());
      t_[i][n_ + i] = 1.0;  // artificial
      t_[i][cols()] = sf.b[i];
      basis_[i] = n_ + i;
    }
  }

  int cols() const { return n_ + m_; }

  // Phase 1: drive sum of artificials to zero.
  LpStatus phase1(int iter_cap, int& iters) {
    auto& obj = t_[m_];
    std::fill(obj.begin(), obj.end(), 0.0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j <= cols(); ++j) obj[j] -= t_[i][j];
    for (int i = 0; i < m_; ++i) obj[n_ + i] = 0.0;

    const LpStatus st = iterate(/*allow_artificial=*/false, iter_cap, iters);
    if (st != LpStatus::Optimal) return st;
    if (-t_[m_][cols()] > 1e-7 * std::max(1.0, scale_)) return LpStatus::Infeasible;

    // Pivot remaining artificials out where a structural column is usable.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int piv = -1;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(t_[i][j]) > 1e3 * tol_) {
          piv = j;
          break;
        }
      }
      if (piv >= 0) pivot(i, piv);
    }
    return LpStatus::Optimal;
  }

  LpStatus phase2(const std::vector<double>& c, int iter_cap, int& iters) {
    auto& obj = t_[m_];
    std::fill(obj.begin(), obj.end(), 0.0);
    for (int j = 0; j < n_; ++j) obj[j] = c[j];
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[i];
      const double cb = bj < n_ ? c[bj] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols(); ++j) obj[j] -= cb * t_[i][j];
    }
    return iterate(/*allow_artificial=*/false, iter_cap, iters);
  }

  double objective_value() const { return -t_[m_][cols()]; }

  std::vector<double> solution() const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = t_[i][cols()];
    return y;
  }

  // y_i = -reduced cost of artificial i (phase-2 artificial cost is zero).
  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) y[i] = -t_[m_][n_ + i];
    return y;
  }

  void set_scale(double s) { scale_ = s; }

 private:
  void pivot(int row, int col) {
    auto& pr = t_[row];
    const double pv = pr[col];
    for (double& v : pr) v /= pv;
    pr[col] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      auto& ri = t_[i];
      const double f = ri[col];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols(); ++j) ri[j] -= f * pr[j];
      ri[col] = 0.0;
    }
    basis_[row] = col;
  }

  LpStatus iterate(bool allow_artificial, int iter_cap, int& iters) {
    const int ncols = allow_artificial ? cols() : n_;
    bool bland = false;
    int degenerate_steps = 0;
    const int degeneracy_trip = 5 * (m_ + n_);
    double last_obj = objective_value();

    for (;; ++iters) {
      if (iters >= iter_cap) return LpStatus::Stalled;
      const auto& obj = t_[m_];
      int enter = -1;
      if (!bland) {
        double best = -tol_;
        for (int j = 0; j < ncols; ++j) {
          if (obj[j] < best) {
            best = obj[j];
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < ncols; ++j) {
          if (obj[j] < -tol_) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        const double a = t_[i][enter];
        if (a > tol_) {
          const double ratio = t_[i][cols()] / a;
          if (ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;

      pivot(leave, enter);

      const double now = objective_value();
      if (last_obj - now <= tol_ * std::max(1.0, std::abs(last_obj))) {
        if (++degenerate_steps >= degeneracy_trip) bland = true;
      } else {
        degenerate_steps = 0;
      }
      last_obj = now;
    }
  }

  int m_, n_;
  double tol_;
  double scale_ = 1.0;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& prob, double tol) {
  for (int j = 0; j < prob.n; ++j) {
    if (prob.lower[j] > prob.upper[j]) return {LpStatus::Infeasible};
  }

  const StandardForm sf = build_standard_form(prob);
  Tableau tab(sf, tol);
  double scale = 1.0;
  for (double v : sf.b) scale = std::max(scale, std::abs(v));
  tab.set_scale(scale);

  LpResult res;
  const int iter_cap = 50 * (sf.m + sf.n + sf.m);
  int iters = 0;

  LpStatus st = tab.phase1(iter_cap, iters);
  if (st != LpStatus::Optimal) {
    res.status = st;
    res.iterations = iters;
    return res;
  }
  st = tab.phase2(sf.c, iter_cap, iters);
  res.status = st;
  res.iterations = iters;
  if (st != LpStatus::Optimal) return res;

  const std::vector<double> y = tab.solution();
  res.x.assign(prob.n, 0.0);
  for (int j = 0; j < prob.n; ++j) {
    const auto& vm = sf.var_map[j];
    double v = vm.shift;
    if (vm.pos >= 0) v += y[vm.pos];
    if (vm.neg >= 0) v -= y[vm.neg];
    res.x[j] = v;
  }
  res.value = 0.0;
  for (int j = 0; j < prob.n; ++j) res.value += prob.objective[j] * res.x[j];

  std::vector<double> duals = tab.duals();
  double dual_obj = 0.0;
  for (int i = 0; i < sf.m; ++i) dual_obj += duals[i] * sf.b[i];
  res.duality_gap = std::abs(tab.objective_value() - dual_obj);

  res.dual_eq.resize(sf.n_eq);
  res.dual_ineq.resize(sf.n_ineq);
  for (int i = 0; i < sf.n_eq; ++i)
    res.dual_eq[i] = sf.row_negated[i] ? -duals[i] : duals[i];
  for (int i = 0; i < sf.n_ineq; ++i) {
    const int r = sf.n_eq + i;
    res.dual_ineq[i] = sf.row_negated[r] ? -duals[r] : duals[r];
  }
  return res;
}

}  // namespace chebyprod
