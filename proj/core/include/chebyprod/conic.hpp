#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace chebyprod {

/// Solver-neutral conic problem: linear objective, linear equalities and
/// inequalities, 3-dimensional second-order-cone rows t >= ||(u1,u2)||, and
/// PSD blocks whose entries are problem variables. See
/// docs/sdp_export_format.md for the text serialization.
struct ConicProblem {
  struct SparseRow {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
  };
  struct Affine {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;
  };
  struct SocBlock {
    std::string label;
    Affine t, u1, u2;  // t >= ||(u1, u2)||_2
  };
  struct PsdBlock {
    std::string label;
    int size = 0;
    // Upper triangle (i <= j), row-major: variable index of entry (i, j).
    std::vector<int> entry_var;

    int var_at(int i, int j) const;
  };

  std::vector<std::string> var_names;
  std::vector<double> objective;  // minimize
  std::vector<int> nonneg_vars;
  std::vector<SparseRow> eq;    // terms . x == rhs
  std::vector<SparseRow> ineq;  // terms . x >= rhs
  std::vector<SocBlock> soc;
  std::vector<PsdBlock> psd;

  int add_var(const std::string& name, double obj_coef = 0.0);
};

void write_conic(std::ostream& os, const ConicProblem& prob);

}  // namespace chebyprod
