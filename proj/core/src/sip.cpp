#include "chebyprod/sip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebyprod {

namespace {

Cut normalized(Cut c) {
  double scale = std::abs(c.rhs);
  for (double v : c.row) scale = std::max(scale, std::abs(v));
  if (scale > 0.0) {
    for (double& v : c.row) v /= scale;
    c.rhs /= scale;
  }
  return c;
}

bool nearly_same(const Cut& a, const Cut& b) {
  if (std::abs(a.rhs - b.rhs) > 1e-12) return false;
  for (int i = 0; i < 4; ++i)
    if (std::abs(a.row[i] - b.row[i]) > 1e-12) return false;
  return true;
}

}  // namespace

SipResult solve_sip(const std::array<double, 4>& objective,
                    const std::vector<SemiInfiniteConstraint>& constraints,
                    const SipOptions& opts) {
  if (constraints.empty()) throw std::invalid_argument("no constraint families");

  SipResult res;
  std::vector<Cut> cuts;
  const auto add_cut = [&cuts](const Cut& raw) {
    const Cut c = normalized(raw);
    for (const Cut& e : cuts)
      if (e.family == c.family && nearly_same(e, c)) return false;
    cuts.push_back(c);
    return true;
  };

  for (const Cut& c : opts.master_rows) add_cut(c);
  for (const auto& fam : constraints)
    for (const Cut& c : fam.seed_cuts) add_cut(c);

  double radius = opts.trust_radius0;

  for (int round = 0; round < opts.max_rounds; ++round) {
    res.iterations = round + 1;

    LinearProgram master(4);
    for (int j = 0; j < 4; ++j) {
      master.objective[j] = objective[j];
      master.lower[j] = -radius;
      master.upper[j] = radius;
    }
    for (const Cut& c : cuts)
      master.add_ineq({c.row[0], c.row[1], c.row[2], c.row[3]}, c.rhs);

    const LpResult lp = solve_lp(master, opts.gap_tol);
    if (lp.status != LpStatus::Optimal) {
      res.error = std::string("master LP ") + to_string(lp.status);
      return res;
    }

    const DualPoint x{lp.x[0], lp.x[1], lp.x[2], lp.x[3]};

    double max_violation = 0.0;
    bool added = false;
    for (const auto& fam : constraints) {
      const SeparationResult sep = fam.separate(x, opts.feas_tol);
      if (!sep.violated) continue;
      // Measure the violation on the normalized cut, the same scale at which
      // the master enforces it.
      const Cut c = normalized(sep.cut);
      const double v = c.rhs - c.eval(x);
      max_violation = std::max(max_violation, v);
      if (v > opts.feas_tol) added = add_cut(c) || added;
    }

    res.value = lp.value;
    res.point = x;
    res.max_violation = max_violation;

    if (max_violation <= opts.feas_tol) {
      bool on_boundary = false;
      for (int j = 0; j < 4; ++j)
        if (std::abs(lp.x[j]) >= radius * (1.0 - 1e-7)) on_boundary = true;
      if (on_boundary) {
        radius *= 10.0;
        if (radius > opts.trust_radius_cap) {
          res.error = "trust box exceeded cap without stabilizing (unbounded master model)";
          return res;
        }
        continue;
      }
      res.ok = true;
      res.cuts = std::move(cuts);
      return res;
    }

    if (!added) {
      // Violated beyond tolerance but every proposed cut already present:
      // the master cannot make progress.
      res.error = "separation stalled: violated cut already in master";
      return res;
    }
  }

  res.error = "round cap reached before all oracles were satisfied";
  return res;
}

}  // namespace chebyprod
