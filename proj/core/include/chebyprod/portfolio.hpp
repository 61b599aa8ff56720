#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chebyprod/moments.hpp"
#include "chebyprod/product_bounds.hpp"

namespace chebyprod {

/// Per-period relative price changes, one column per asset, each >= -1.
struct ReturnPanel {
  std::vector<std::string> asset_names;
  std::vector<std::vector<double>> returns;  // periods x assets

  int periods() const { return static_cast<int>(returns.size()); }
  int assets() const { return static_cast<int>(asset_names.size()); }
};

/// CSV with a header row of asset names and one row of decimal returns per
/// period. Throws std::invalid_argument on malformed input.
ReturnPanel read_returns_csv(std::istream& in);

struct MomentEstimates {
  std::vector<double> mean;
  std::vector<std::vector<double>> cov;  // unbiased sample covariance
};

MomentEstimates estimate_moments(const ReturnPanel& panel);

/// Wealth-factor moments of a fixed-mix portfolio over the horizon:
/// mu = 1 + w.mean, sigma = sqrt(w.cov.w), serially uncorrelated (rho = 0
/// unless overridden). Degenerate when the portfolio variance vanishes.
struct WealthSpec {
  bool degenerate = false;
  MomentSpec spec;
};

WealthSpec wealth_spec(const std::vector<double>& weights,
                       const MomentEstimates& moments, int horizon,
                       double rho = 0.0);

struct WvarResult {
  double wvar = 0.0;
  bool absorbed = false;       // worst-case left tail is 1 at every threshold
  bool degenerate = false;     // deterministic wealth
  double tail_at_lo = 0.0;     // left-tail bound at the final lower bracket
  double tail_at_hi = 0.0;     // ... and at the final upper bracket
  int evaluations = 0;
};

/// sup{gamma : L(gamma) <= epsilon} by bisection in log-gamma, reusing
/// gamma-independent cuts across evaluations.
WvarResult worst_case_var(const WealthSpec& ws, double epsilon,
                          double bisect_tol = 1e-6);

/// Minimize w' cov w - tau * w' mean over the unit simplex by Frank-Wolfe
/// with exact line search. Returns the iterate; sets *converged when the
/// Frank-Wolfe gap dropped below the tolerance within the iteration cap.
std::vector<double> min_quadratic_simplex(const MomentEstimates& moments,
                                          double tau, bool* converged = nullptr);

struct FrontierPoint {
  double tau = 0.0;
  std::vector<double> weights;
  double mean = 0.0;   // w' mu
  double stdev = 0.0;  // sqrt(w' cov w)
  WvarResult wvar;
  bool skipped = false;  // Frank-Wolfe did not converge
  bool best = false;     // largest WVaR among computed points
};

std::vector<FrontierPoint> frontier_sweep(const MomentEstimates& moments,
                                          int horizon, double epsilon,
                                          int n_points, double tau_max = 0.0,
                                          double rho = 0.0,
                                          double bisect_tol = 1e-6);

}  // namespace chebyprod
