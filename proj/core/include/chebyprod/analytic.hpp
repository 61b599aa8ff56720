#pragma once

#include "chebyprod/distribution.hpp"
#include "chebyprod/moments.hpp"

namespace chebyprod {

/// Which branch of a piecewise closed form fired.
enum class Regime { Certain, Markov, Tail };

const char* to_string(Regime r);

struct ClosedFormBound {
  double value = 1.0;
  Regime regime = Regime::Certain;
};

/// One-sided bound on P(xi >= gamma) from mean and variance alone; with
/// `nonnegative`, the strengthened version whose middle branch is Markov.
ClosedFormBound chebyshev_univariate(double mu, double sigma, double gamma,
                                     bool nonnegative);

/// Worst-case P(sum xi >= gamma) (Geq) or P(sum xi <= gamma) (Leq).
ClosedFormBound sum_bound(const MomentSpec& spec, double gamma, Orientation side);

/// Closed-form worst case of P(prod xi >= gamma) over the relaxed ambiguity
/// set (covariance only bounded above).
ClosedFormBound relaxed_right_bound(const MomentSpec& spec, double gamma);

/// Two diagonal atoms attaining relaxed_right_bound; the zero atom of the
/// Markov branch is kept explicitly.
DiscreteSymmetricDistribution extremal_distribution(const MomentSpec& spec, double gamma);

/// T0 = (mu^2 + sigma^2) / ((1-rho) sigma^2) + 1. For T > T0 the worst-case
/// left tail is 1 at every threshold.
double absorption_threshold(const MomentSpec& spec);
bool absorbed(const MomentSpec& spec);

struct GammaBarThreshold {
  bool hypothesis_holds = false;  // mu > sqrt((1-rho)/T) * sigma
  double gamma_bar_root = 0.0;    // gamma_bar^(1/T)
  double gamma_bar = 0.0;
};

/// Threshold above which the exact and relaxed right-sided bounds agree.
GammaBarThreshold gamma_bar_threshold(const MomentSpec& spec);

/// Closed form of the convex-event bound on P(prod xi >= gamma) over the
/// larger ambiguity set with unrestricted support.
ClosedFormBound mo_bound(const MomentSpec& spec, double gamma);

/// Bound on P(prod xi >= gamma) from moments of log(xi): the sum bound at
/// log(gamma). T = 1 reduces to the plain univariate inequality.
ClosedFormBound log_space_bound(double mu_eta, double sigma_eta, double rho_eta,
                                int T, double gamma);

/// gamma^(1/T) via exp(log(gamma)/T); safe for extreme gamma and large T.
double nth_root(double gamma, int T);

}  // namespace chebyprod
