#include "chebyprod/moments.hpp"

namespace chebyprod {

double theta(const MomentSpec& spec) {
  return 1.0 + (spec.T - 1) * spec.rho;
}

ValidationReport validate(const MomentSpec& spec) {
  ValidationReport report;
  report.theta = theta(spec);

  if (spec.T < 2) {
    report.message = "T must be at least 2";
    return report;
  }
  if (!(spec.mu > 0.0)) {
    report.message = "mu must be positive";
    return report;
  }
  if (!(spec.sigma > 0.0)) {
    report.message = "sigma must be positive";
    return report;
  }
  if (!(spec.rho > -1.0 / (spec.T - 1)) || !(spec.rho < 1.0)) {
    report.message = "rho must lie in (-1/(T-1), 1)";
    return report;
  }

  report.structurally_valid = true;
  const double slack = spec.mu * spec.mu + spec.rho * spec.sigma * spec.sigma;
  report.feasible = slack >= 0.0;
  report.slater_strict = slack > 0.0;
  return report;
}

void ensure_structurally_valid(const MomentSpec& spec) {
  const ValidationReport report = validate(spec);
  if (!report.structurally_valid) throw StructuralError(report.message);
}

void ensure_slater(const MomentSpec& spec) {
  const ValidationReport report = validate(spec);
  if (!report.structurally_valid) throw StructuralError(report.message);
  if (!report.feasible)
    throw InfeasibleMomentsError(
        "ambiguity set is empty: mu^2 + rho*sigma^2 < 0");
  if (!report.slater_strict)
    throw InfeasibleMomentsError(
        "mu^2 + rho*sigma^2 = 0: not Slater-strict, strong duality is not "
        "guaranteed");
}

std::pair<double, double> covariance_eigenvalues(const MomentSpec& spec) {
  ensure_structurally_valid(spec);
  const double s2 = spec.sigma * spec.sigma;
  const double small = (1.0 - spec.rho) * s2;
  return {small, small + spec.T * spec.rho * s2};
}

}  // namespace chebyprod
