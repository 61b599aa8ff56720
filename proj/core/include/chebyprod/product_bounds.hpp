#pragma once

#include <map>
#include <string>

#include "chebyprod/conic.hpp"
#include "chebyprod/moments.hpp"
#include "chebyprod/poly.hpp"
#include "chebyprod/sip.hpp"

namespace chebyprod {

enum class TailSide { LeftTail, RightTail };

struct BoundQuery {
  MomentSpec spec;
  double gamma = 1.0;
  TailSide side = TailSide::LeftTail;
};

struct BoundOptions {
  bool use_shortcuts = true;
  /// Extra master row gamma1 >= 0 (probes that the relaxed and exact
  /// left-sided bounds agree).
  bool append_gamma1_nonneg = false;
  /// Valid cuts carried over from a previous solve at a nearby gamma; only
  /// cuts of gamma-independent families belong here.
  std::vector<Cut> warm_cuts;
  SipOptions sip;
};

struct BoundResult {
  double value = 0.0;      // clamped to [0, 1] for reporting
  double raw_value = 0.0;  // master value as solved
  DualPoint dual;
  std::string shortcut;    // empty when the solver ran
  int iterations = 0;
  double max_violation = 0.0;
  /// Cuts from the gamma-independent constraint families, reusable as
  /// warm_cuts at a different gamma on the same side.
  std::vector<Cut> reusable_cuts;
};

class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Objective coefficients over (alpha, beta, gamma1, gamma2):
/// (1, T mu, T(mu^2+sigma^2), T[T mu^2 + sigma^2 + (T-1) rho sigma^2]).
std::array<double, 4> dual_objective(const MomentSpec& spec);

/// Affine function of the dual point: coefficient of each monomial degree of
/// the degree-2T polynomial whose non-negativity on the ray encodes the
/// two-level boundary constraint. Degrees {0, 1, 2, T, T+1, 2T}; for T = 2
/// the degree-2 entry carries the merged coefficient.
struct AffineCoeff {
  std::array<double, 4> linear{};
  double constant = 0.0;

  double eval(const DualPoint& x) const {
    return linear[0] * x.alpha + linear[1] * x.beta + linear[2] * x.gamma1 +
           linear[3] * x.gamma2 + constant;
  }
};
std::map<int, AffineCoeff> tail_polynomial_coeffs(const MomentSpec& spec, double gamma);

/// The tail polynomial instantiated at a dual point.
Polynomial tail_polynomial(const MomentSpec& spec, double gamma, const DualPoint& x);

BoundResult left_bound(const BoundQuery& query, const BoundOptions& opts = {});
BoundResult right_bound(const BoundQuery& query, const BoundOptions& opts = {});
BoundResult solve_bound(const BoundQuery& query, const BoundOptions& opts = {});

/// The explicit conic (SDP) system of the bound: second-order-cone rows for
/// the S-lemma constraints and two PSD blocks of sizes T+1 and T certifying
/// the polynomial constraint; exported for external cross-checking.
ConicProblem assemble_sdp(const BoundQuery& query);

}  // namespace chebyprod
