#pragma once

#include <vector>

#include "chebyprod/distribution.hpp"
#include "chebyprod/moments.hpp"

namespace chebyprod {

/// Constructive member of the ambiguity set: one OneDistinct family and one
/// Uniform family with moments matching the spec exactly.
DiscreteSymmetricDistribution feasibility_distribution(const MomentSpec& spec);

/// Atom grid for the primal restriction. Coordinates are 0 plus n_per_coord-1
/// log-spaced values up to coord_hi (default mu + 6 sigma), extended by exact
/// injected coordinates and whole atom families.
struct GridSpec {
  int n_per_coord = 60;
  double coord_hi = 0.0;  // <= 0: auto
  std::vector<double> extra_coords;
  std::vector<AtomFamily> extra_families;  // prob fields ignored
};

struct PrimalBound {
  bool grid_feasible = false;  // false: no grid distribution matches the moments
  double value = 0.0;
  DiscreteSymmetricDistribution distribution;
};

/// Maximize the event mass over distributions supported on the gridded
/// Uniform/OneDistinct families subject to the four symmetric moment
/// equalities. The LP value is a valid lower bound on the worst-case
/// probability of the event.
PrimalBound lower_bound_lp(const MomentSpec& spec, const Event& ev,
                           const GridSpec& grid = {});

}  // namespace chebyprod
