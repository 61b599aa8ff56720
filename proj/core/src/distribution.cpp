#include "chebyprod/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chebyprod {

namespace {

constexpr double kEventBoundaryRelTol = 1e-12;

// value vs threshold with weak-inequality tolerance at the boundary.
bool leq_weak(double value, double threshold) {
  const double tol = kEventBoundaryRelTol * std::max({1.0, std::abs(value), std::abs(threshold)});
  return value <= threshold + tol;
}

// Product comparison in log space; zero products short-circuit.
bool product_leq(double log_prod, bool zero, double log_gamma) {
  if (zero) return true;
  const double tol = kEventBoundaryRelTol * std::max(1.0, std::abs(log_gamma));
  return log_prod <= log_gamma + tol;
}

bool product_geq(double log_prod, bool zero, double log_gamma) {
  if (zero) return false;
  const double tol = kEventBoundaryRelTol * std::max(1.0, std::abs(log_gamma));
  return log_prod >= log_gamma - tol;
}

}  // namespace

double AtomFamily::m1(int T) const {
  if (shape == Shape::Uniform) return x;
  return (x + (T - 1) * y) / T;
}

double AtomFamily::m2(int T) const {
  if (shape == Shape::Uniform) return x * x;
  return (x * x + (T - 1) * y * y) / T;
}

double AtomFamily::cross(int T) const {
  if (shape == Shape::Uniform) return x * x;
  return (2.0 * x * y + (T - 2) * y * y) / T;
}

double DiscreteSymmetricDistribution::total_prob() const {
  double s = 0.0;
  for (const auto& f : families) s += f.prob;
  return s;
}

double DiscreteSymmetricDistribution::mean() const {
  double s = 0.0;
  for (const auto& f : families) s += f.prob * f.m1(T);
  return s;
}

double DiscreteSymmetricDistribution::second_moment() const {
  double s = 0.0;
  for (const auto& f : families) s += f.prob * f.m2(T);
  return s;
}

double DiscreteSymmetricDistribution::cross_moment() const {
  double s = 0.0;
  for (const auto& f : families) s += f.prob * f.cross(T);
  return s;
}

double DiscreteSymmetricDistribution::max_moment_residual(const MomentSpec& spec) const {
  const double m2_target = spec.mu * spec.mu + spec.sigma * spec.sigma;
  const double cross_target = spec.mu * spec.mu + spec.rho * spec.sigma * spec.sigma;
  double r = std::abs(total_prob() - 1.0);
  r = std::max(r, std::abs(mean() - spec.mu) / std::max(1.0, std::abs(spec.mu)));
  r = std::max(r, std::abs(second_moment() - m2_target) / std::max(1.0, std::abs(m2_target)));
  r = std::max(r, std::abs(cross_moment() - cross_target) / std::max(1.0, std::abs(cross_target)));
  return r;
}

bool family_in_event(const AtomFamily& fam, int T, const Event& ev) {
  double value = 0.0;
  switch (ev.kind) {
    case EventKind::Product: {
      bool zero = false;
      double log_prod = 0.0;
      if (fam.shape == AtomFamily::Shape::Uniform) {
        if (fam.x <= 0.0)
          zero = true;
        else
          log_prod = T * std::log(fam.x);
      } else {
        if (fam.x <= 0.0 || fam.y <= 0.0)
          zero = true;
        else
          log_prod = std::log(fam.x) + (T - 1) * std::log(fam.y);
      }
      const double log_gamma = std::log(ev.threshold);
      return ev.orientation == Orientation::Leq ? product_leq(log_prod, zero, log_gamma)
                                                : product_geq(log_prod, zero, log_gamma);
    }
    case EventKind::Sum:
      value = fam.shape == AtomFamily::Shape::Uniform ? T * fam.x : fam.x + (T - 1) * fam.y;
      break;
    case EventKind::Min:
      value = fam.shape == AtomFamily::Shape::Uniform ? fam.x : std::min(fam.x, fam.y);
      break;
    case EventKind::Max:
      value = fam.shape == AtomFamily::Shape::Uniform ? fam.x : std::max(fam.x, fam.y);
      break;
    default: break;
  }
  return ev.orientation == Orientation::Leq ? leq_weak(value, ev.threshold)
                                            : leq_weak(ev.threshold, value);
}

double event_probability(const DiscreteSymmetricDistribution& dist, const Event& ev) {
  double p = 0.0;
  for (const auto& f : dist.families)
    if (family_in_event(f, dist.T, ev)) p += f.prob;
  return p;
}

std::string to_json(const DiscreteSymmetricDistribution& dist) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  bool first = true;
  for (const auto& f : dist.families) {
    if (!first) os << ',';
    first = false;
    os << R"({"type":")"
       << (f.shape == AtomFamily::Shape::Uniform ? "uniform" : "one_distinct")
       << R"(","coords":[)" << f.x;
    if (f.shape == AtomFamily::Shape::OneDistinct) os << ',' << f.y;
    os << R"(],"prob":)" << f.prob << '}';
  }
  os << ']';
  return os.str();
}

}  // namespace chebyprod
