#pragma once

#include "chebyprod/primal_oracle.hpp"
#include "chebyprod/product_bounds.hpp"

namespace chebyprod {

/// Atom grid enriched with the analytically known special atoms for the
/// query: diagonal atoms of the relaxed-bound extremal distribution, the
/// feasibility-construction atoms, the event quantile, and two-level
/// event-boundary atoms derived from a dual point's tail polynomial roots
/// and active quadratic constraints (when a hint is supplied).
GridSpec verification_grid(const BoundQuery& query, const DualPoint* hint);

struct SandwichReport {
  BoundResult dual;
  PrimalBound primal;
  double gap = 0.0;  // dual.value - primal.value (meaningful when grid feasible)
};

/// Solve the dual bound, then the seeded primal restriction, and report the
/// gap. The dual solve runs without shortcuts so both sides are exercised.
SandwichReport sandwich(const BoundQuery& query, const BoundOptions& opts = {},
                        const GridSpec* custom_grid = nullptr);

}  // namespace chebyprod
