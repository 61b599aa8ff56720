#include "chebyprod/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace chebyprod {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Certain: return "certain";
    case Regime::Markov: return "markov";
    case Regime::Tail: return "tail";
  }
  return "?";
}

double nth_root(double gamma, int T) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return std::exp(std::log(gamma) / T);
}

ClosedFormBound chebyshev_univariate(double mu, double sigma, double gamma,
                                     bool nonnegative) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (nonnegative && !(mu > 0.0))
    throw std::invalid_argument("mu must be positive for non-negative support");

  const double s2 = sigma * sigma;
  if (gamma < mu) return {1.0, Regime::Certain};
  if (nonnegative && gamma < mu + s2 / mu) return {mu / gamma, Regime::Markov};
  const double d = gamma - mu;
  return {s2 / (s2 + d * d), Regime::Tail};
}

ClosedFormBound sum_bound(const MomentSpec& spec, double gamma, Orientation side) {
  ensure_structurally_valid(spec);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double th = theta(spec);
  const double Ts2th = spec.T * spec.sigma * spec.sigma * th;
  const double Tmu = spec.T * spec.mu;
  const double d = gamma - Tmu;

  if (side == Orientation::Geq) {
    if (gamma < Tmu) return {1.0, Regime::Certain};
    if (gamma < Tmu + spec.sigma * spec.sigma * th / spec.mu)
      return {Tmu / gamma, Regime::Markov};
    return {Ts2th / (Ts2th + d * d), Regime::Tail};
  }
  if (gamma >= Tmu) return {1.0, Regime::Certain};
  return {Ts2th / (Ts2th + d * d), Regime::Tail};
}

ClosedFormBound relaxed_right_bound(const MomentSpec& spec, double gamma) {
  ensure_slater(spec);
  const double x = nth_root(gamma, spec.T);
  const double th = theta(spec);
  const double s2th = spec.sigma * spec.sigma * th;
  const double markov_edge = spec.mu + s2th / (spec.T * spec.mu);

  if (x <= spec.mu) return {1.0, Regime::Certain};
  if (x < markov_edge) return {spec.mu / x, Regime::Markov};
  const double d = spec.mu - x;
  return {s2th / (s2th + spec.T * d * d), Regime::Tail};
}

DiscreteSymmetricDistribution extremal_distribution(const MomentSpec& spec, double gamma) {
  const ClosedFormBound bound = relaxed_right_bound(spec, gamma);
  const double th = theta(spec);

  const double q = bound.value;
  const double p = 1.0 - q;
  double v;
  if (bound.regime == Regime::Tail) {
    v = q * spec.mu + spec.sigma * std::sqrt(th * q * p / spec.T);
  } else {
    v = spec.mu;
  }
  const double u = spec.mu - v;

  DiscreteSymmetricDistribution dist;
  dist.T = spec.T;
  if (p <= 0.0) {
    dist.families.push_back({AtomFamily::Shape::Uniform, v / q, 0.0, q});
    return dist;
  }
  dist.families.push_back({AtomFamily::Shape::Uniform, u / p, 0.0, p});
  dist.families.push_back({AtomFamily::Shape::Uniform, v / q, 0.0, q});
  return dist;
}

double absorption_threshold(const MomentSpec& spec) {
  ensure_structurally_valid(spec);
  const double s2 = spec.sigma * spec.sigma;
  return (spec.mu * spec.mu + s2) / ((1.0 - spec.rho) * s2) + 1.0;
}

bool absorbed(const MomentSpec& spec) {
  return spec.T > absorption_threshold(spec);
}

GammaBarThreshold gamma_bar_threshold(const MomentSpec& spec) {
  ensure_slater(spec);
  GammaBarThreshold res;
  const double w = std::sqrt((1.0 - spec.rho) / spec.T) * spec.sigma;
  if (!(spec.mu > w)) return res;
  res.hypothesis_holds = true;
  const double a = spec.mu - w;
  const double b = spec.T / (spec.sigma * spec.sigma * theta(spec));
  res.gamma_bar_root = spec.mu + (1.0 + std::sqrt(4.0 * a * b * w + 1.0)) / (2.0 * a * b);
  res.gamma_bar = std::exp(spec.T * std::log(res.gamma_bar_root));
  return res;
}

ClosedFormBound mo_bound(const MomentSpec& spec, double gamma) {
  ensure_structurally_valid(spec);
  const double x = nth_root(gamma, spec.T);
  if (x <= spec.mu) return {1.0, Regime::Certain};
  const double s2th = spec.sigma * spec.sigma * theta(spec);
  const double d = spec.mu - x;
  return {s2th / (s2th + spec.T * d * d), Regime::Tail};
}

ClosedFormBound log_space_bound(double mu_eta, double sigma_eta, double rho_eta,
                                int T, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(sigma_eta > 0.0)) throw std::invalid_argument("sigma_eta must be positive");
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  if (T > 1 && (!(rho_eta > -1.0 / (T - 1)) || !(rho_eta < 1.0)))
    throw std::invalid_argument("rho_eta must lie in (-1/(T-1), 1)");

  const double lg = std::log(gamma);
  const double mean = T * mu_eta;
  if (lg < mean) return {1.0, Regime::Certain};
  const double var = T * sigma_eta * sigma_eta * (1.0 + (T - 1) * rho_eta);
  const double d = lg - mean;
  return {var / (var + d * d), Regime::Tail};
}

}  // namespace chebyprod
