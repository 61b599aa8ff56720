#include "chebyprod/generic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebyprod {

namespace {
constexpr double kInfHi = std::numeric_limits<double>::infinity();
}

double PiecewiseQuadratic::operator()(double s) const {
  for (const auto& p : pieces) {
    if (s >= p.lo && s <= p.hi) return (p.a * s + p.b) * s + p.c;
  }
  throw std::out_of_range("s outside the effective domain");
}

PhiPair table_phi(const Event& ev, int T) {
  if (T < 2) throw std::invalid_argument("T must be at least 2");
  if (!(ev.threshold > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double g = ev.threshold;
  const double Tg = T * g;
  PhiPair phi;

  const auto uniform_sq = [T](double lo, double hi) {
    return QuadPiece{lo, hi, 1.0 / T, 0.0, 0.0};  // s^2/T
  };
  const auto full_sq = [](double lo, double hi) {
    return QuadPiece{lo, hi, 1.0, 0.0, 0.0};  // s^2
  };
  // gamma^2 + (s-gamma)^2/(T-1)
  const auto pinned_min = [T, g](double lo, double hi) {
    const double w = 1.0 / (T - 1);
    return QuadPiece{lo, hi, w, -2.0 * g * w, g * g + g * g * w};
  };

  switch (ev.kind) {
    case EventKind::Min:
      if (ev.orientation == Orientation::Leq) {
        phi.s_lo = 0.0;
        phi.s_hi = kInfHi;
        phi.lower.pieces = {pinned_min(0.0, Tg), uniform_sq(Tg, kInfHi)};
        phi.upper.pieces = {full_sq(0.0, kInfHi)};
      } else {
        phi.s_lo = Tg;
        phi.s_hi = kInfHi;
        phi.lower.pieces = {uniform_sq(Tg, kInfHi)};
        // (s - Tg)^2 + 2g(s - Tg) + Tg^2 = s^2 - 2g(T-1)s + g^2 T(T-1)
        phi.upper.pieces = {
            {Tg, kInfHi, 1.0, -2.0 * g * (T - 1), g * g * T * (T - 1.0)}};
      }
      break;
    case EventKind::Max:
      if (ev.orientation == Orientation::Leq) {
        phi.s_lo = 0.0;
        phi.s_hi = Tg;
        phi.lower.pieces = {uniform_sq(0.0, Tg)};
        // Staircase: k*g^2 + (s - k*g)^2 on (k*g, (k+1)*g], s = 0 attached to
        // the first piece.
        for (int k = 0; k < T; ++k) {
          phi.upper.pieces.push_back(
              {k * g, (k + 1) * g, 1.0, -2.0 * k * g, k * g * g + double(k) * k * g * g});
        }
      } else {
        phi.s_lo = g;
        phi.s_hi = kInfHi;
        phi.lower.pieces = {pinned_min(g, Tg), uniform_sq(Tg, kInfHi)};
        phi.upper.pieces = {full_sq(g, kInfHi)};
      }
      break;
    case EventKind::Sum:
      if (ev.orientation == Orientation::Leq) {
        phi.s_lo = 0.0;
        phi.s_hi = g;
        phi.lower.pieces = {uniform_sq(0.0, g)};
        phi.upper.pieces = {full_sq(0.0, g)};
      } else {
        phi.s_lo = g;
        phi.s_hi = kInfHi;
        phi.lower.pieces = {uniform_sq(g, kInfHi)};
        phi.upper.pieces = {full_sq(g, kInfHi)};
      }
      break;
    default:
      throw std::invalid_argument("product events are handled by the tail-bound solver");
  }
  return phi;
}

namespace {

enum Family : int { kUniformRay = 0, kSplitRay = 1, kPhiLower = 2, kPhiUpper = 3 };

std::array<double, 4> phi_row(const QuadPiece& p, double s) {
  const double phi = (p.a * s + p.b) * s + p.c;
  return {1.0, s, phi, s * s};
}

// alpha + beta s + gamma2 s^2 + gamma1 phi(s) >= 1 over all pieces.
SemiInfiniteConstraint phi_family(int id, std::string desc, PiecewiseQuadratic phi,
                                  const std::vector<double>& seed_s) {
  SemiInfiniteConstraint fam;
  fam.description = std::move(desc);
  fam.rhs = 1.0;
  for (double s : seed_s) {
    for (const auto& p : phi.pieces) {
      if (s < p.lo || s > p.hi) continue;
      fam.seed_cuts.push_back({phi_row(p, s), 1.0, id});
      break;
    }
  }
  fam.separate = [id, phi = std::move(phi)](const DualPoint& x, double) {
    const double scale = std::max({1.0, std::abs(x.alpha), std::abs(x.beta),
                                   std::abs(x.gamma1), std::abs(x.gamma2)});
    SeparationResult worst;
    for (const auto& p : phi.pieces) {
      // (gamma2 + gamma1 a) s^2 + (beta + gamma1 b) s + alpha + gamma1 c >= 1
      double A = x.gamma2 + x.gamma1 * p.a;
      const double B = x.beta + x.gamma1 * p.b;
      const double C = x.alpha + x.gamma1 * p.c;
      // On ray pieces the leading coefficient is implied non-negative by the
      // master sign rows; a tiny negative value is LP roundoff.
      if (std::isinf(p.hi) && A < 0.0 && A > -1e-9 * scale) A = 0.0;
      const Domain dom = std::isinf(p.hi) ? Domain::ray(p.lo) : Domain::interval(p.lo, p.hi);
      const MinResult m = quadratic_min(A, B, C, dom);
      const Cut cut{phi_row(p, m.argmin), 1.0, id};
      const double violation = 1.0 - cut.eval(x);
      if (violation > worst.violation) {
        worst.violated = true;
        worst.violation = violation;
        worst.witness = m.argmin;
        worst.cut = cut;
      }
    }
    return worst;
  };
  return fam;
}

std::array<double, 4> quad_row(double w1, double s) {
  return {1.0, s, w1 * s * s, s * s};
}

SemiInfiniteConstraint sign_ray_family(int id, std::string desc, double w1,
                                       const std::vector<double>& seed_s) {
  SemiInfiniteConstraint fam;
  fam.description = std::move(desc);
  fam.rhs = 0.0;
  for (double s : seed_s) fam.seed_cuts.push_back({quad_row(w1, s), 0.0, id});
  fam.separate = [id, w1](const DualPoint& x, double) {
    double a2 = x.gamma2 + w1 * x.gamma1;
    const double scale = std::max({1.0, std::abs(x.alpha), std::abs(x.beta),
                                   std::abs(x.gamma1), std::abs(x.gamma2)});
    if (a2 < 0.0 && a2 > -1e-9 * scale) a2 = 0.0;
    const MinResult m = quadratic_min(a2, x.beta, x.alpha, Domain::ray(0.0));
    SeparationResult sep;
    sep.cut = {quad_row(w1, m.argmin), 0.0, id};
    sep.violation = -sep.cut.eval(x);
    if (sep.violation <= 0.0) return SeparationResult::satisfied();
    sep.violated = true;
    sep.witness = m.argmin;
    return sep;
  };
  return fam;
}

}  // namespace

BoundResult generic_bound(const MomentSpec& spec, const Event& ev,
                          const BoundOptions& opts) {
  ensure_slater(spec);
  const PhiPair phi = table_phi(ev, spec.T);
  const double g = ev.threshold;

  std::vector<double> seed_s{phi.s_lo, g, 0.5 * g, 2.0 * g, spec.T * g,
                             2.0 * spec.T * g, spec.T * spec.mu};
  for (const auto& p : phi.upper.pieces) seed_s.push_back(p.lo);
  std::vector<double> ray_seeds{0.0, g, spec.T * g, 4.0 * spec.T * g};

  std::vector<SemiInfiniteConstraint> fams;
  fams.push_back(sign_ray_family(kUniformRay, "uniform-diagonal ray, level 0",
                                 1.0 / spec.T, ray_seeds));
  fams.push_back(sign_ray_family(kSplitRay, "single-coordinate ray, level 0", 1.0,
                                 ray_seeds));
  fams.push_back(phi_family(kPhiLower, "event envelope, lower", phi.lower, seed_s));
  fams.push_back(phi_family(kPhiUpper, "event envelope, upper", phi.upper, seed_s));

  SipOptions sip = opts.sip;
  // Explicit sign constraints of the generic reduction.
  sip.master_rows.push_back({{0.0, 0.0, 1.0 / spec.T, 1.0}, 0.0, -1});
  sip.master_rows.push_back({{0.0, 0.0, 1.0, 1.0}, 0.0, -1});
  sip.master_rows.push_back({{1.0, 0.0, 0.0, 0.0}, 0.0, -1});  // alpha >= 0
  for (const Cut& c : opts.warm_cuts) sip.master_rows.push_back(c);

  const SipResult r = solve_sip(dual_objective(spec), fams, sip);
  if (!r.ok)
    throw SolverError("generic bound solve failed: " + r.error);

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

}  // namespace chebyprod
