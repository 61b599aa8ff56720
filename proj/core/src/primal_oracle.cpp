#include "chebyprod/primal_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "chebyprod/lp.hpp"

namespace chebyprod {

DiscreteSymmetricDistribution feasibility_distribution(const MomentSpec& spec) {
  ensure_structurally_valid(spec);
  const ValidationReport rep = validate(spec);
  if (!rep.feasible)
    throw InfeasibleMomentsError("ambiguity set is empty: mu^2 + rho*sigma^2 < 0");

  const double T = spec.T;
  const double mu = spec.mu, sigma = spec.sigma, rho = spec.rho;
  const double th = theta(spec);

  double p;
  if (rho > 0.0) {
    p = std::min(T * mu * mu / (T * mu * mu + th * sigma * sigma), rho * T / th);
  } else if (rho == 0.0) {
    p = T * mu * mu / (T * mu * mu + sigma * sigma);
  } else {
    p = -rho * T / (1.0 - rho);
  }

  DiscreteSymmetricDistribution dist;
  dist.T = spec.T;

  const double m1 = mu + sigma * std::sqrt((1.0 - p) * th / (p * T));
  const double m2 = m1 * m1 + (1.0 - rho) * (T - 1.0) * sigma * sigma / (p * T);
  const double spread = m2 - m1 * m1;
  const double x = m1 + std::sqrt((T - 1.0) * spread);
  const double y = std::max(0.0, m1 - std::sqrt(spread / (T - 1.0)));
  dist.families.push_back({AtomFamily::Shape::OneDistinct, x, y, p});

  if (p < 1.0) {
    const double z = std::max(0.0, mu - sigma * std::sqrt(p * th / ((1.0 - p) * T)));
    dist.families.push_back({AtomFamily::Shape::Uniform, z, 0.0, 1.0 - p});
  }
  return dist;
}

namespace {

std::vector<double> coordinate_grid(const MomentSpec& spec, const GridSpec& grid) {
  const double hi = grid.coord_hi > 0.0 ? grid.coord_hi : spec.mu + 6.0 * spec.sigma;
  const int n = std::max(2, grid.n_per_coord);
  std::vector<double> coords;
  coords.push_back(0.0);
  const double lo = hi * 1e-4;
  const double step = std::log(hi / lo) / (n - 2 > 0 ? n - 2 : 1);
  for (int i = 0; i <= n - 2; ++i) coords.push_back(lo * std::exp(step * i));
  for (double c : grid.extra_coords)
    if (c >= 0.0 && std::isfinite(c)) coords.push_back(c);
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end(),
                           [](double a, double b) {
                             return std::abs(a - b) <=
                                    1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
                           }),
               coords.end());
  return coords;
}

}  // namespace

PrimalBound lower_bound_lp(const MomentSpec& spec, const Event& ev, const GridSpec& grid) {
  ensure_slater(spec);

  std::vector<AtomFamily> families;
  const std::vector<double> coords = coordinate_grid(spec, grid);
  for (double z : coords)
    families.push_back({AtomFamily::Shape::Uniform, z, 0.0, 0.0});
  for (double x : coords)
    for (double y : coords) {
      if (x == y) continue;
      if (x == 0.0 && y == 0.0) continue;
      families.push_back({AtomFamily::Shape::OneDistinct, x, y, 0.0});
    }
  for (AtomFamily f : grid.extra_families) {
    f.prob = 0.0;
    if (f.x < 0.0 || (f.shape == AtomFamily::Shape::OneDistinct && f.y < 0.0)) continue;
    if (!std::isfinite(f.x) || !std::isfinite(f.y)) continue;
    families.push_back(f);
  }

  const int n = static_cast<int>(families.size());
  LinearProgram lp(n);
  std::vector<double> ones(n), m1(n), m2(n), cross(n);
  for (int j = 0; j < n; ++j) {
    const AtomFamily& f = families[j];
    ones[j] = 1.0;
    m1[j] = f.m1(spec.T);
    m2[j] = f.m2(spec.T);
    cross[j] = f.cross(spec.T);
    lp.lower[j] = 0.0;
    lp.objective[j] = family_in_event(f, spec.T, ev) ? -1.0 : 0.0;
  }
  lp.add_eq(std::move(ones), 1.0);
  lp.add_eq(std::move(m1), spec.mu);
  lp.add_eq(std::move(m2), spec.mu * spec.mu + spec.sigma * spec.sigma);
  lp.add_eq(std::move(cross), spec.mu * spec.mu + spec.rho * spec.sigma * spec.sigma);

  const LpResult res = solve_lp(lp, 1e-9);
  PrimalBound out;
  if (res.status == LpStatus::Infeasible) return out;  // no feasible grid distribution
  if (res.status != LpStatus::Optimal)
    throw std::runtime_error(std::string("primal grid LP failed: ") + to_string(res.status));

  out.grid_feasible = true;
  out.value = -res.value;
  out.distribution.T = spec.T;
  for (int j = 0; j < n; ++j) {
    if (res.x[j] > 1e-12) {
      AtomFamily f = families[j];
      f.prob = res.x[j];
      out.distribution.families.push_back(f);
    }
  }
  return out;
}

}  // namespace chebyprod
