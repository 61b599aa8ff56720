#pragma once

#include <vector>

#include "chebyprod/distribution.hpp"
#include "chebyprod/product_bounds.hpp"

namespace chebyprod {

/// One piece of a piecewise quadratic over s: value a*s^2 + b*s + c on
/// [lo, hi] (hi may be +inf). Pieces marked infinite are vacuous-constraint
/// markers outside the effective domain and carry no coefficients.
struct QuadPiece {
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};

struct PiecewiseQuadratic {
  std::vector<QuadPiece> pieces;  // finite pieces only, ordered, covering S

  double operator()(double s) const;
};

/// The envelope pair (phi_lower, phi_upper) of min/max ||xi||_2^2 over the
/// slice ||xi||_1 = s intersected with the event, together with the effective
/// domain S = [s_lo, s_hi].
struct PhiPair {
  PiecewiseQuadratic lower;
  PiecewiseQuadratic upper;
  double s_lo = 0.0;
  double s_hi = 0.0;  // +inf allowed
};

/// Exact piecewise forms for the six supported events (min/max/sum, each
/// direction), including the T-piece staircase of the max-below row.
PhiPair table_phi(const Event& ev, int T);

/// Worst-case P(event) via the generic permutation-symmetric reduction:
/// quadratic oracles per piece, sign constraints on gamma1/T + gamma2 and
/// gamma1 + gamma2 appended directly to the master.
BoundResult generic_bound(const MomentSpec& spec, const Event& ev,
                          const BoundOptions& opts = {});

}  // namespace chebyprod
