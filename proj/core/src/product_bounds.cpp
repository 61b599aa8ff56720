#include "chebyprod/product_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "chebyprod/analytic.hpp"

namespace chebyprod {

namespace {

// Constraint family ids used for cut tagging.
enum Family : int { kUniformRay = 0, kSplitRay = 1, kWindow = 2, kTwoLevel = 3 };

std::array<double, 4> quad_row(double w1, double s) {
  return {1.0, s, w1 * s * s, s * s};
}

Cut quad_cut(double w1, double s, double rhs, int family) {
  return {quad_row(w1, s), rhs, family};
}

// alpha + beta*s + (gamma2 + w1*gamma1)*s^2 >= rhs  for all s in dom.
SemiInfiniteConstraint quad_family(int id, std::string desc, double w1, Domain dom,
                                   double rhs, const std::vector<double>& seed_s) {
  SemiInfiniteConstraint fam;
  fam.description = std::move(desc);
  fam.rhs = rhs;
  for (double s : seed_s) {
    if (s < dom.lo || s > dom.hi) continue;
    fam.seed_cuts.push_back(quad_cut(w1, s, rhs, id));
  }
  fam.separate = [id, w1, dom, rhs](const DualPoint& x, double) {
    double a2 = x.gamma2 + w1 * x.gamma1;
    // The master carries the implied sign rows, so a negative curvature at
    // its optimum can only be LP roundoff; walking the ray in that direction
    // would produce meaningless far-out witnesses.
    const double scale = std::max({1.0, std::abs(x.alpha), std::abs(x.beta),
                                   std::abs(x.gamma1), std::abs(x.gamma2)});
    if (a2 < 0.0 && a2 > -1e-9 * scale) a2 = 0.0;
    const MinResult m = quadratic_min(a2, x.beta, x.alpha, dom);
    SeparationResult sep;
    sep.cut = {quad_row(w1, m.argmin), rhs, id};
    sep.violation = rhs - sep.cut.eval(x);
    if (sep.violation <= 0.0) return SeparationResult::satisfied();
    sep.violated = true;
    sep.witness = m.argmin;
    return sep;
  };
  return fam;
}

Cut poly_cut(const std::map<int, AffineCoeff>& coeffs, double kappa, int family) {
  Cut c;
  c.family = family;
  double constant = 0.0;
  for (const auto& [deg, aff] : coeffs) {
    const double pw = std::pow(kappa, deg);
    for (int j = 0; j < 4; ++j) c.row[j] += aff.linear[j] * pw;
    constant += aff.constant * pw;
  }
  c.rhs = -constant;
  return c;
}

// Tail polynomial non-negative on the ray kappa >= 0.
SemiInfiniteConstraint poly_family(int id, std::string desc,
                                   std::map<int, AffineCoeff> coeffs,
                                   const std::vector<double>& seed_kappa) {
  SemiInfiniteConstraint fam;
  fam.description = std::move(desc);
  fam.rhs = 0.0;
  for (double k : seed_kappa) fam.seed_cuts.push_back(poly_cut(coeffs, k, id));
  fam.separate = [id, coeffs = std::move(coeffs)](const DualPoint& x, double) {
    int max_deg = 0;
    for (const auto& [deg, aff] : coeffs) max_deg = std::max(max_deg, deg);
    std::vector<double> c(max_deg + 1, 0.0);
    for (const auto& [deg, aff] : coeffs) c[deg] = aff.eval(x);
    const Polynomial p{std::move(c)};
    if (p.is_zero()) return SeparationResult::satisfied();

    const MinResult m = global_min(p, Domain::ray(0.0), 1e-12);
    if (m.value >= 0.0) return SeparationResult::satisfied();

    SeparationResult sep;
    sep.cut = poly_cut(coeffs, m.argmin, id);
    sep.violation = sep.cut.rhs - sep.cut.eval(x);
    if (sep.violation <= 0.0) return SeparationResult::satisfied();
    sep.violated = true;
    sep.witness = m.argmin;
    return sep;
  };
  return fam;
}

std::vector<double> scaled_grid(double center) {
  return {0.0, 0.25 * center, 0.5 * center, center, 2.0 * center, 4.0 * center};
}

BoundResult run_sip(const BoundQuery& query, const BoundOptions& opts,
                    std::vector<SemiInfiniteConstraint> families) {
  SipOptions sip = opts.sip;
  // Sign constraints implied by the ray families in the limit s -> infinity;
  // explicit rows keep early masters bounded.
  sip.master_rows.push_back({{0.0, 0.0, 1.0, static_cast<double>(query.spec.T)}, 0.0, -1});
  sip.master_rows.push_back({{0.0, 0.0, 1.0, 1.0}, 0.0, -1});
  if (opts.append_gamma1_nonneg)
    sip.master_rows.push_back({{0.0, 0.0, 1.0, 0.0}, 0.0, -1});
  for (const Cut& c : opts.warm_cuts) sip.master_rows.push_back(c);

  const SipResult r = solve_sip(dual_objective(query.spec), families, sip);
  if (!r.ok)
    throw SolverError("tail bound solve failed: " + r.error +
                      " (rounds=" + std::to_string(r.iterations) +
                      ", max_violation=" + std::to_string(r.max_violation) + ")");

  BoundResult out;
  out.raw_value = r.value;
  out.value = std::clamp(r.value, 0.0, 1.0);
  out.dual = r.point;
  out.iterations = r.iterations;
  out.max_violation = r.max_violation;
  for (const Cut& c : r.cuts)
    if (c.family == kUniformRay || c.family == kSplitRay) out.reusable_cuts.push_back(c);
  return out;
}

BoundResult shortcut_result(double value, std::string tag) {
  BoundResult out;
  out.value = value;
  out.raw_value = value;
  out.shortcut = std::move(tag);
  return out;
}

}  // namespace

std::array<double, 4> dual_objective(const MomentSpec& spec) {
  ensure_structurally_valid(spec);
  const double T = spec.T;
  const double s2 = spec.sigma * spec.sigma;
  return {1.0, T * spec.mu, T * (spec.mu * spec.mu + s2),
          T * (T * spec.mu * spec.mu + s2 + (T - 1) * spec.rho * s2)};
}

std::map<int, AffineCoeff> tail_polynomial_coeffs(const MomentSpec& spec, double gamma) {
  ensure_structurally_valid(spec);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const int T = spec.T;
  const double lg = std::log(gamma);
  const double g1p = std::exp(lg / (T - 1));        // gamma^(1/(T-1))
  const double g2p = std::exp(2.0 * lg / (T - 1));  // gamma^(2/(T-1))

  std::map<int, AffineCoeff> m;
  m[0] = {{0.0, 0.0, (T - 1) * g2p, double(T - 1) * (T - 1) * g2p}, 0.0};
  m[1] = {{0.0, (T - 1) * g1p, 0.0, 0.0}, 0.0};
  if (T == 2) {
    // Degrees 2 and T coincide; the quadratic monomial carries both parts.
    m[2] = {{1.0, 0.0, 0.0, 2.0 * (T - 1) * g1p}, -1.0};
  } else {
    m[2] = {{1.0, 0.0, 0.0, 0.0}, -1.0};
    m[T] = {{0.0, 0.0, 0.0, 2.0 * (T - 1) * g1p}, 0.0};
  }
  m[T + 1] = {{0.0, 1.0, 0.0, 0.0}, 0.0};
  m[2 * T] = {{0.0, 0.0, 1.0, 1.0}, 0.0};
  return m;
}

Polynomial tail_polynomial(const MomentSpec& spec, double gamma, const DualPoint& x) {
  const auto coeffs = tail_polynomial_coeffs(spec, gamma);
  std::vector<double> c(2 * spec.T + 1, 0.0);
  for (const auto& [deg, aff] : coeffs) c[deg] = aff.eval(x);
  return Polynomial{std::move(c)};
}

BoundResult left_bound(const BoundQuery& query, const BoundOptions& opts) {
  const MomentSpec& spec = query.spec;
  ensure_slater(spec);
  if (!(query.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");

  if (opts.use_shortcuts && absorbed(spec)) return shortcut_result(1.0, "absorption");

  const double root = nth_root(query.gamma, spec.T);
  const double s0 = spec.T * root;
  std::vector<double> seed_s = scaled_grid(s0);
  seed_s.push_back(spec.T * spec.mu);
  const double kappa_hat = std::exp(std::log(query.gamma) / (spec.T * (spec.T - 1)));

  std::vector<SemiInfiniteConstraint> fams;
  fams.push_back(quad_family(kUniformRay, "uniform-diagonal ray, level 0", 1.0 / spec.T,
                             Domain::ray(0.0), 0.0, seed_s));
  fams.push_back(quad_family(kSplitRay, "single-coordinate ray, level 1", 1.0,
                             Domain::ray(0.0), 1.0, seed_s));
  fams.push_back(quad_family(kWindow, "uniform-diagonal window, level 1", 1.0 / spec.T,
                             Domain::interval(0.0, s0), 1.0, seed_s));
  fams.push_back(poly_family(kTwoLevel, "two-level boundary polynomial",
                             tail_polynomial_coeffs(spec, query.gamma),
                             scaled_grid(kappa_hat)));
  return run_sip(query, opts, std::move(fams));
}

BoundResult right_bound(const BoundQuery& query, const BoundOptions& opts) {
  const MomentSpec& spec = query.spec;
  ensure_slater(spec);
  if (!(query.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");

  if (opts.use_shortcuts) {
    const double lg = std::log(query.gamma);
    const double lmu = spec.T * std::log(spec.mu);
    const double ltol = 1e-12 * std::max(1.0, std::abs(lmu));
    if (spec.rho >= 0.0 && lg <= lmu + ltol)
      return shortcut_result(1.0, "below-mean-certain");
    const GammaBarThreshold bar = gamma_bar_threshold(spec);
    if (bar.hypothesis_holds &&
        lg >= spec.T * std::log(bar.gamma_bar_root) - ltol) {
      const ClosedFormBound cf = relaxed_right_bound(spec, query.gamma);
      return shortcut_result(cf.value, "relaxed-closed-form");
    }
  }

  const double root = nth_root(query.gamma, spec.T);
  const double s0 = spec.T * root;
  std::vector<double> seed_s = scaled_grid(s0);
  seed_s.push_back(spec.T * spec.mu);
  const double kappa_hat = std::exp(std::log(query.gamma) / (spec.T * (spec.T - 1)));

  std::vector<SemiInfiniteConstraint> fams;
  fams.push_back(quad_family(kUniformRay, "uniform-diagonal ray, level 0", 1.0 / spec.T,
                             Domain::ray(0.0), 0.0, seed_s));
  fams.push_back(quad_family(kSplitRay, "single-coordinate ray, level 0", 1.0,
                             Domain::ray(0.0), 0.0, seed_s));
  fams.push_back(quad_family(kWindow, "uniform-diagonal tail ray, level 1", 1.0 / spec.T,
                             Domain::ray(s0), 1.0, seed_s));
  fams.push_back(poly_family(kTwoLevel, "two-level boundary polynomial",
                             tail_polynomial_coeffs(spec, query.gamma),
                             scaled_grid(kappa_hat)));
  return run_sip(query, opts, std::move(fams));
}

BoundResult solve_bound(const BoundQuery& query, const BoundOptions& opts) {
  return query.side == TailSide::LeftTail ? left_bound(query, opts)
                                          : right_bound(query, opts);
}

namespace {

using Affine = ConicProblem::Affine;

Affine affine(std::vector<std::pair<int, double>> terms, double constant = 0.0) {
  return {std::move(terms), constant};
}

}  // namespace

ConicProblem assemble_sdp(const BoundQuery& query) {
  const MomentSpec& spec = query.spec;
  ensure_slater(spec);
  if (!(query.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const int T = spec.T;
  const double root = nth_root(query.gamma, T);
  const bool left = query.side == TailSide::LeftTail;

  ConicProblem prob;
  const auto obj = dual_objective(spec);
  const int v_alpha = prob.add_var("alpha", obj[0]);
  const int v_beta = prob.add_var("beta", obj[1]);
  const int v_g1 = prob.add_var("gamma1", obj[2]);
  const int v_g2 = prob.add_var("gamma2", obj[3]);
  const int v_l1 = prob.add_var("lambda1");
  const int v_l2 = prob.add_var("lambda2");
  const int v_l3 = prob.add_var("lambda3");
  prob.nonneg_vars = {v_l1, v_l2, v_l3};

  ConicProblem::PsdBlock P{"P", T + 1, {}};
  for (int i = 0; i <= T; ++i)
    for (int j = i; j <= T; ++j)
      P.entry_var.push_back(
          prob.add_var("P_" + std::to_string(i) + "_" + std::to_string(j)));
  ConicProblem::PsdBlock Q{"Q", T, {}};
  for (int i = 0; i < T; ++i)
    for (int j = i; j < T; ++j)
      Q.entry_var.push_back(
          prob.add_var("Q_" + std::to_string(i) + "_" + std::to_string(j)));
  prob.psd.push_back(P);
  prob.psd.push_back(Q);

  // Coefficient matching for every monomial degree 0..2T:
  //   sum_{i+j=t} P_ij + sum_{i+j=t-1} Q_ij = a_t(alpha, beta, gamma1, gamma2).
  const auto coeffs = tail_polynomial_coeffs(spec, query.gamma);
  for (int t = 0; t <= 2 * T; ++t) {
    ConicProblem::SparseRow row;
    for (int i = 0; i <= T; ++i) {
      const int j = t - i;
      if (j < i || j > T) continue;
      row.terms.emplace_back(P.var_at(i, j), i == j ? 1.0 : 2.0);
    }
    for (int i = 0; i < T; ++i) {
      const int j = t - 1 - i;
      if (j < i || j >= T) continue;
      row.terms.emplace_back(Q.var_at(i, j), i == j ? 1.0 : 2.0);
    }
    AffineCoeff a;
    if (auto it = coeffs.find(t); it != coeffs.end()) a = it->second;
    const std::array<int, 4> vars{v_alpha, v_beta, v_g1, v_g2};
    for (int k = 0; k < 4; ++k)
      if (a.linear[k] != 0.0) row.terms.emplace_back(vars[k], -a.linear[k]);
    row.rhs = a.constant;
    prob.eq.push_back(std::move(row));
  }

  const double w = 1.0 / T;
  if (left) {
    prob.ineq.push_back({{{v_alpha, 1.0}}, 1.0});
    prob.ineq.push_back({{{v_g1, 1.0}, {v_g2, 1.0}}, 0.0});
    prob.ineq.push_back({{{v_g1, 1.0}, {v_g2, double(T)}}, 0.0});
    prob.soc.push_back({"s_lemma_nonneg",
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_alpha, 1.0}}),
                        affine({{v_beta, 1.0}, {v_l1, -1.0}}),
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_alpha, -1.0}})});
    prob.soc.push_back({"s_lemma_split",
                        affine({{v_g2, 1.0}, {v_g1, 1.0}, {v_alpha, 1.0}}, -1.0),
                        affine({{v_beta, 1.0}, {v_l2, -1.0}}),
                        affine({{v_g2, 1.0}, {v_g1, 1.0}, {v_alpha, -1.0}}, 1.0)});
    prob.soc.push_back({"s_lemma_window",
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_l3, 1.0}, {v_alpha, 1.0}}, -1.0),
                        affine({{v_beta, 1.0}, {v_l3, -T * root}}),
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_l3, 1.0}, {v_alpha, -1.0}}, 1.0)});
  } else {
    prob.ineq.push_back({{{v_alpha, 1.0}}, 0.0});
    prob.ineq.push_back({{{v_alpha, 1.0}, {v_l3, T * root}}, 1.0});
    prob.ineq.push_back({{{v_g1, 1.0}, {v_g2, double(T)}}, 0.0});
    prob.ineq.push_back({{{v_g1, 1.0}, {v_g2, 1.0}}, 0.0});
    prob.soc.push_back({"s_lemma_nonneg",
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_alpha, 1.0}}),
                        affine({{v_beta, 1.0}, {v_l1, -1.0}}),
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_alpha, -1.0}})});
    prob.soc.push_back({"s_lemma_split",
                        affine({{v_g2, 1.0}, {v_g1, 1.0}, {v_alpha, 1.0}}),
                        affine({{v_beta, 1.0}, {v_l2, -1.0}}),
                        affine({{v_g2, 1.0}, {v_g1, 1.0}, {v_alpha, -1.0}})});
    prob.soc.push_back({"s_lemma_tail",
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_l3, T * root}, {v_alpha, 1.0}}, -1.0),
                        affine({{v_beta, 1.0}, {v_l3, -1.0}}),
                        affine({{v_g2, 1.0}, {v_g1, w}, {v_l3, -T * root}, {v_alpha, -1.0}}, 1.0)});
  }
  return prob;
}

}  // namespace chebyprod
