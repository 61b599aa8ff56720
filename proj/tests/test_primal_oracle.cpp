#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "chebyprod/analytic.hpp"
#include "chebyprod/primal_oracle.hpp"
#include "chebyprod/verify.hpp"

using namespace chebyprod;

namespace {

// Brute-force moments of the symmetrized atom set over all T! placements.
struct BruteMoments {
  double mean = 0.0, second = 0.0, cross = 0.0;
};

BruteMoments brute_force_family(const AtomFamily& fam, int T) {
  std::vector<double> atom(T, fam.y);
  if (fam.shape == AtomFamily::Shape::Uniform) {
    atom.assign(T, fam.x);
  } else {
    atom[0] = fam.x;
  }
  std::vector<int> perm(T);
  std::iota(perm.begin(), perm.end(), 0);
  BruteMoments m;
  int count = 0;
  do {
    m.mean += atom[perm[0]];
    m.second += atom[perm[0]] * atom[perm[0]];
    m.cross += atom[perm[0]] * atom[perm[1]];
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  m.mean /= count;
  m.second /= count;
  m.cross /= count;
  return m;
}

}  // namespace

TEST_SUITE("primal_oracle") {

TEST_CASE("symmetric moment formulas match permutation brute force") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int T : {2, 3, 4, 5}) {
    for (int rep = 0; rep < 6; ++rep) {
      const AtomFamily uni{AtomFamily::Shape::Uniform, u(rng), 0.0, 1.0};
      const AtomFamily od{AtomFamily::Shape::OneDistinct, u(rng), u(rng), 1.0};
      for (const AtomFamily& fam : {uni, od}) {
        const BruteMoments m = brute_force_family(fam, T);
        CHECK(fam.m1(T) == doctest::Approx(m.mean).epsilon(1e-12));
        CHECK(fam.m2(T) == doctest::Approx(m.second).epsilon(1e-12));
        CHECK(fam.cross(T) == doctest::Approx(m.cross).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("feasibility construction: rho = 0") {
  const MomentSpec spec{3, 1.0, 1.0, 0.0};
  const auto dist = feasibility_distribution(spec);
  REQUIRE(dist.families.size() == 2);
  CHECK(dist.families[0].prob == doctest::Approx(0.75));  // T mu^2/(T mu^2 + sigma^2)
  CHECK(dist.max_moment_residual(spec) < 1e-10);
}

TEST_CASE("feasibility construction: rho < 0") {
  const MomentSpec spec{3, 1.0, 1.0, -0.25};
  const auto dist = feasibility_distribution(spec);
  REQUIRE(dist.families.size() == 2);
  CHECK(dist.families[0].prob == doctest::Approx(0.6));  // -rho T/(1 - rho)
  CHECK(dist.families[1].x == doctest::Approx(0.5));     // mu - sigma sqrt(-rho)
  CHECK(dist.max_moment_residual(spec) < 1e-10);
}

TEST_CASE("feasibility construction: random feasible specs") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> mu(0.3, 2.0), sg(0.2, 1.5);
  for (int rep = 0; rep < 30; ++rep) {
    const int T = 2 + static_cast<int>(rng() % 5);
    std::uniform_real_distribution<double> rh(-0.9 / (T - 1), 0.9);
    MomentSpec spec{T, mu(rng), sg(rng), rh(rng)};
    if (!validate(spec).feasible) {
      CHECK_THROWS_AS(feasibility_distribution(spec), InfeasibleMomentsError);
      continue;
    }
    const auto dist = feasibility_distribution(spec);
    CHECK(dist.max_moment_residual(spec) < 1e-10);
    for (const auto& f : dist.families) {
      CHECK(f.x >= 0.0);
      CHECK(f.y >= 0.0);
      CHECK(f.prob >= 0.0);
    }
  }
}

TEST_CASE("event probability on simple distributions") {
  DiscreteSymmetricDistribution point;
  point.T = 4;
  point.families.push_back({AtomFamily::Shape::Uniform, 1.0, 0.0, 1.0});
  CHECK(event_probability(point, Event::product_geq(1.0)) == doctest::Approx(1.0));
  CHECK(event_probability(point, Event::product_leq(0.5)) == doctest::Approx(0.0));

  // A zero coordinate puts the whole family in every left product event.
  DiscreteSymmetricDistribution zero;
  zero.T = 3;
  zero.families.push_back({AtomFamily::Shape::OneDistinct, 0.0, 2.0, 0.4});
  zero.families.push_back({AtomFamily::Shape::Uniform, 1.0, 0.0, 0.6});
  CHECK(event_probability(zero, Event::product_leq(1e-12)) == doctest::Approx(0.4));
  CHECK(event_probability(zero, Event::min_leq(0.0)) == doctest::Approx(0.4));
  CHECK(event_probability(zero, Event::max_geq(2.0)) == doctest::Approx(0.4));
  CHECK(event_probability(zero, Event::sum_leq(3.0)) == doctest::Approx(0.6));
}

TEST_CASE("extremal distribution attains the closed form") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  const double gamma = std::pow(1.5, 4);
  const auto dist = extremal_distribution(spec, gamma);
  CHECK(event_probability(dist, Event::product_geq(gamma)) ==
        doctest::Approx(relaxed_right_bound(spec, gamma).value).epsilon(1e-12));
}

TEST_CASE("grid LP: seeded right tail closes the sandwich") {
  const MomentSpec spec{5, 1.0, 0.5, 0.0};
  const double gamma = std::pow(2.5, 5);
  REQUIRE(gamma >= gamma_bar_threshold(spec).gamma_bar);
  GridSpec grid = verification_grid({spec, gamma, TailSide::RightTail}, nullptr);
  const PrimalBound pb = lower_bound_lp(spec, Event::product_geq(gamma), grid);
  REQUIRE(pb.grid_feasible);
  const double rprime = relaxed_right_bound(spec, gamma).value;
  CHECK(pb.value >= rprime - 1e-9);
  CHECK(pb.value <= rprime + 1e-9);
  CHECK(pb.distribution.max_moment_residual(spec) < 1e-7);
}

TEST_CASE("grid LP: absorbed left tail pushes toward one") {
  const MomentSpec spec{4, 1.0, 1.0, 0.0};
  REQUIRE(absorbed(spec));
  GridSpec grid = verification_grid({spec, 0.05, TailSide::LeftTail}, nullptr);
  const PrimalBound pb = lower_bound_lp(spec, Event::product_leq(0.05), grid);
  REQUIRE(pb.grid_feasible);
  CHECK(pb.value >= 1.0 - 1e-7);
}

TEST_CASE("grid refinement never hurts") {
  const MomentSpec spec{3, 1.0, 0.5, 0.0};
  const Event ev = Event::product_leq(0.5);
  GridSpec coarse;
  coarse.n_per_coord = 20;
  GridSpec fine;
  fine.n_per_coord = 40;
  const PrimalBound a = lower_bound_lp(spec, ev, coarse);
  const PrimalBound b = lower_bound_lp(spec, ev, fine);
  REQUIRE(a.grid_feasible);
  REQUIRE(b.grid_feasible);
  CHECK(b.value >= a.value - 1e-9);
}

TEST_CASE("optimizing distribution satisfies the moment equalities") {
  const MomentSpec spec{3, 1.0, 0.5, 0.1};
  const PrimalBound pb = lower_bound_lp(spec, Event::product_leq(0.4), GridSpec{30});
  REQUIRE(pb.grid_feasible);
  CHECK(pb.distribution.max_moment_residual(spec) < 1e-7);
}

TEST_CASE("distribution JSON serialization") {
  DiscreteSymmetricDistribution dist;
  dist.T = 3;
  dist.families.push_back({AtomFamily::Shape::Uniform, 1.25, 0.0, 0.5});
  dist.families.push_back({AtomFamily::Shape::OneDistinct, 2.0, 0.5, 0.5});
  const std::string js = to_json(dist);
  CHECK(js.find("\"uniform\"") != std::string::npos);
  CHECK(js.find("\"one_distinct\"") != std::string::npos);
  CHECK(js.find("1.25") != std::string::npos);
}

}  // TEST_SUITE
