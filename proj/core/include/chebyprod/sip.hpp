#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "chebyprod/lp.hpp"

namespace chebyprod {

/// Permutation-symmetric dual decision vector (alpha, beta, gamma1, gamma2).
struct DualPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  static constexpr int kDim = 4;

  double operator[](int i) const {
    switch (i) {
      case 0: return alpha;
      case 1: return beta;
      case 2: return gamma1;
      default: return gamma2;
    }
  }
  std::array<double, 4> as_array() const { return {alpha, beta, gamma1, gamma2}; }
  static DualPoint from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
};

/// Affine cut row . x >= rhs, affine in the decision for a fixed uncertainty
/// value. `family` records which constraint family produced it (-1: none).
struct Cut {
  std::array<double, 4> row{};
  double rhs = 0.0;
  int family = -1;

  double eval(const DualPoint& x) const {
    return row[0] * x.alpha + row[1] * x.beta + row[2] * x.gamma1 + row[3] * x.gamma2;
  }
};

struct SeparationResult {
  bool violated = false;
  double witness = 0.0;    // uncertainty value at which the cut was generated
  double violation = 0.0;  // rhs - row.x  (> 0 when violated)
  Cut cut;

  static SeparationResult satisfied() { return {}; }
};

/// One family of semi-infinite constraints, affine in the decision for every
/// fixed value of a scalar uncertainty parameter.
struct SemiInfiniteConstraint {
  std::string description;
  double rhs = 0.0;  // informational: the common right-hand side of the family
  std::function<SeparationResult(const DualPoint&, double feas_tol)> separate;
  std::vector<Cut> seed_cuts;
};

struct SipOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-9;  // LP tolerance of the master
  double trust_radius0 = 1e3;
  double trust_radius_cap = 1e9;
  int max_rounds = 400;
  /// Always-on linear constraints appended to every master (e.g. sign
  /// constraints implied by the constraint families in the limit).
  std::vector<Cut> master_rows;
};

struct SipResult {
  bool ok = false;
  std::string error;
  double value = 0.0;
  DualPoint point;
  int iterations = 0;      // master rounds
  double max_violation = 0.0;
  std::vector<Cut> cuts;   // accumulated cuts (seed + separated)
};

/// Kelley-style cutting planes: solve the master LP over a trust box, call
/// every separation oracle at the master optimum, append violated cuts and
/// repeat. The box is expanded tenfold whenever the optimum lands on its
/// boundary with no violated cut; the master value increases monotonically to
/// the SIP optimum from below, and feasibility of all oracles certifies
/// optimality up to feas_tol.
SipResult solve_sip(const std::array<double, 4>& objective,
                    const std::vector<SemiInfiniteConstraint>& constraints,
                    const SipOptions& opts = {});

}  // namespace chebyprod
