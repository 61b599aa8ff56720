#include "chebyprod/verify.hpp"

#include <cmath>

#include "chebyprod/analytic.hpp"

namespace chebyprod {

namespace {

void add_quadratic_vertex_atoms(const MomentSpec& spec, const DualPoint& x,
                                double s_window, GridSpec& grid) {
  // Uniform atoms where the diagonal-ray and window constraints can be
  // active, single-coordinate atoms where the split-ray constraint can be.
  const double a2_uniform = x.gamma2 + x.gamma1 / spec.T;
  if (a2_uniform > 0.0) {
    const double s = -x.beta / (2.0 * a2_uniform);
    if (s > 0.0 && std::isfinite(s)) {
      grid.extra_families.push_back({AtomFamily::Shape::Uniform, s / spec.T, 0.0, 0.0});
    }
  }
  const double a2_split = x.gamma2 + x.gamma1;
  if (a2_split > 0.0) {
    const double s = -x.beta / (2.0 * a2_split);
    if (s > 0.0 && std::isfinite(s)) {
      grid.extra_families.push_back({AtomFamily::Shape::OneDistinct, s, 0.0, 0.0});
    }
  }
  grid.extra_families.push_back(
      {AtomFamily::Shape::Uniform, s_window / spec.T, 0.0, 0.0});
}

}  // namespace

GridSpec verification_grid(const BoundQuery& query, const DualPoint* hint) {
  const MomentSpec& spec = query.spec;
  GridSpec grid;

  const double root = nth_root(query.gamma, spec.T);
  grid.extra_families.push_back({AtomFamily::Shape::Uniform, root, 0.0, 0.0});
  grid.extra_families.push_back({AtomFamily::Shape::Uniform, spec.mu, 0.0, 0.0});
  grid.extra_families.push_back({AtomFamily::Shape::Uniform, 0.0, 0.0, 0.0});

  for (const AtomFamily& f : extremal_distribution(spec, query.gamma).families)
    grid.extra_families.push_back(f);
  for (const AtomFamily& f : feasibility_distribution(spec).families)
    grid.extra_families.push_back(f);

  if (hint != nullptr) {
    const Polynomial tail = tail_polynomial(spec, query.gamma, *hint);
    if (!tail.is_zero() && tail.degree() > 0) {
      const double y_scale = std::exp(std::log(query.gamma) / (spec.T - 1));
      for (double kappa : isolate_nonnegative_roots(tail.normalized(), 1e-12)) {
        if (kappa <= 1e-12) continue;
        const double x = std::pow(kappa, spec.T - 1);
        const double y = y_scale / kappa;
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (x > 1e9 || y > 1e9) continue;
        grid.extra_families.push_back({AtomFamily::Shape::OneDistinct, x, y, 0.0});
      }
    }
    add_quadratic_vertex_atoms(spec, *hint, spec.T * root, grid);
  }
  return grid;
}

SandwichReport sandwich(const BoundQuery& query, const BoundOptions& opts,
                        const GridSpec* custom_grid) {
  SandwichReport report;
  BoundOptions dual_opts = opts;
  dual_opts.use_shortcuts = false;
  report.dual = solve_bound(query, dual_opts);

  const GridSpec grid = custom_grid != nullptr
                            ? *custom_grid
                            : verification_grid(query, &report.dual.dual);
  const Event ev = query.side == TailSide::LeftTail ? Event::product_leq(query.gamma)
                                                    : Event::product_geq(query.gamma);
  report.primal = lower_bound_lp(query.spec, ev, grid);
  report.gap = report.dual.value - report.primal.value;
  return report;
}

}  // namespace chebyprod
