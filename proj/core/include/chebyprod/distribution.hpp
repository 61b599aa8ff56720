#pragma once

#include <string>
#include <vector>

#include "chebyprod/moments.hpp"

namespace chebyprod {

enum class EventKind { Product, Sum, Min, Max };
enum class Orientation { Leq, Geq };

/// Permutation-symmetric event on xi >= 0: functional(xi) <=/>= threshold.
struct Event {
  EventKind kind = EventKind::Product;
  Orientation orientation = Orientation::Leq;
  double threshold = 1.0;

  static Event product_leq(double g) { return {EventKind::Product, Orientation::Leq, g}; }
  static Event product_geq(double g) { return {EventKind::Product, Orientation::Geq, g}; }
  static Event sum_leq(double g) { return {EventKind::Sum, Orientation::Leq, g}; }
  static Event sum_geq(double g) { return {EventKind::Sum, Orientation::Geq, g}; }
  static Event min_leq(double g) { return {EventKind::Min, Orientation::Leq, g}; }
  static Event min_geq(double g) { return {EventKind::Min, Orientation::Geq, g}; }
  static Event max_leq(double g) { return {EventKind::Max, Orientation::Leq, g}; }
  static Event max_geq(double g) { return {EventKind::Max, Orientation::Geq, g}; }
};

/// One symmetric family of atoms.
///   Uniform:     the single atom x * 1.
///   OneDistinct: the T placements of (x, y, y, ..., y), each with prob/T.
struct AtomFamily {
  enum class Shape { Uniform, OneDistinct };
  Shape shape = Shape::Uniform;
  double x = 0.0;
  double y = 0.0;  // unused for Uniform
  double prob = 0.0;

  double m1(int T) const;  // arithmetic mean of the representative atom
  double m2(int T) const;  // quadratic mean
  /// E[xi_t xi_s] contribution per unit probability, t != s.
  double cross(int T) const;
};

struct DiscreteSymmetricDistribution {
  int T = 2;
  std::vector<AtomFamily> families;

  double total_prob() const;
  double mean() const;           // E[xi_t]
  double second_moment() const;  // E[xi_t^2]
  double cross_moment() const;   // E[xi_t xi_s], t != s
  /// Largest relative residual of the four moment conditions against spec.
  double max_moment_residual(const MomentSpec& spec) const;
};

/// Exact event probability: sum over atom families, evaluated on the
/// representative atom (permutation-symmetric events agree on every
/// placement). Product comparisons run in log space; boundary atoms within
/// relative 1e-12 of the threshold count as satisfying the weak inequality.
double event_probability(const DiscreteSymmetricDistribution& dist, const Event& ev);

/// Whether the representative atom of the family satisfies the event.
bool family_in_event(const AtomFamily& fam, int T, const Event& ev);

/// JSON list of {"type", "coords", "prob"} objects.
std::string to_json(const DiscreteSymmetricDistribution& dist);

}  // namespace chebyprod
