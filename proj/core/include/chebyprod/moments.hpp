#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chebyprod {

/// Raised when (T, mu, sigma, rho) violate the structural requirements
/// T >= 2, mu > 0, sigma > 0, -1/(T-1) < rho < 1.
class StructuralError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when the moment data admit no distribution on the non-negative
/// orthant (mu^2 + rho*sigma^2 < 0), or when a computation requires the
/// strict version of that condition and only equality holds.
class InfeasibleMomentsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Permutation-symmetric first and second moment data: T variables with
/// common mean mu, standard deviation sigma and pairwise correlation rho.
struct MomentSpec {
  int T = 2;
  double mu = 1.0;
  double sigma = 1.0;
  double rho = 0.0;
};

struct ValidationReport {
  bool structurally_valid = false;
  bool feasible = false;       // mu^2 + rho*sigma^2 >= 0
  bool slater_strict = false;  // mu^2 + rho*sigma^2 > 0
  double theta = 0.0;          // 1 + (T-1)*rho
  std::string message;         // first violated structural condition
};

/// theta = 1 + (T-1)*rho; positive whenever the spec is structurally valid.
double theta(const MomentSpec& spec);

/// Checks structural bounds first, then the non-emptiness condition
/// mu^2 + rho*sigma^2 >= 0 and its strict variant. Comparisons are exact
/// (no tolerance): the inputs are user-specified constants.
ValidationReport validate(const MomentSpec& spec);

/// Throws StructuralError unless the structural bounds hold.
void ensure_structurally_valid(const MomentSpec& spec);

/// Throws StructuralError or InfeasibleMomentsError unless the spec is
/// structurally valid and Slater-strict. Bound computations call this:
/// strong duality is only guaranteed under strictness.
void ensure_slater(const MomentSpec& spec);

/// Eigenvalues of Sigma = (1-rho)*sigma^2*I + rho*sigma^2*11^T, returned as
/// ((1-rho)*sigma^2, (1-rho)*sigma^2 + T*rho*sigma^2) with multiplicities
/// T-1 and 1.
std::pair<double, double> covariance_eigenvalues(const MomentSpec& spec);

}  // namespace chebyprod
