#include <doctest.h>

#include <cmath>

#include "chebyprod/analytic.hpp"

using namespace chebyprod;

namespace {

// Independent oracle for the closed-form threshold: largest root of
// q(x) = a (1 + b (mu - x)^2) - x by bisection, starting from the Markov
// edge, where q is known to be negative.
double gamma_bar_root_oracle(const MomentSpec& spec) {
  const double w = std::sqrt((1.0 - spec.rho) / spec.T) * spec.sigma;
  const double a = spec.mu - w;
  const double b = spec.T / (spec.sigma * spec.sigma * theta(spec));
  const auto q = [&](double x) { return a * (1.0 + b * (spec.mu - x) * (spec.mu - x)) - x; };

  double lo = spec.mu + spec.sigma * spec.sigma * theta(spec) / (spec.T * spec.mu);
  REQUIRE(q(lo) < 0.0);
  double hi = lo + 1.0;
  while (q(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    if (q(m) < 0.0)
      lo = m;
    else
      hi = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("analytic") {

TEST_CASE("univariate one-sided bound") {
  CHECK(chebyshev_univariate(0.0, 1.0, 1.0, false).value == doctest::Approx(0.5));
  const auto markov = chebyshev_univariate(1.0, 1.0, 1.5, true);
  CHECK(markov.value == doctest::Approx(2.0 / 3));
  CHECK(markov.regime == Regime::Markov);
  CHECK(chebyshev_univariate(1.0, 1.0, 0.5, true).value == doctest::Approx(1.0));
  // Unrestricted support never enters the Markov branch.
  CHECK(chebyshev_univariate(1.0, 1.0, 1.5, false).value ==
        doctest::Approx(1.0 / (1.0 + 0.25)));
}

TEST_CASE("sum bounds") {
  const MomentSpec spec{2, 1.0, 1.0, 0.0};
  CHECK(sum_bound(spec, 4.0, Orientation::Geq).value == doctest::Approx(1.0 / 3));
  const auto markov = sum_bound(spec, 2.5, Orientation::Geq);
  CHECK(markov.value == doctest::Approx(0.8));
  CHECK(markov.regime == Regime::Markov);
  CHECK(sum_bound(spec, 2.0, Orientation::Leq).value == doctest::Approx(1.0));
  CHECK(sum_bound(spec, 1.0, Orientation::Leq).value ==
        doctest::Approx(2.0 / (2.0 + 1.0)));
}

TEST_CASE("relaxed right-sided bound branches") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  CHECK(relaxed_right_bound(spec, 1.0).value == doctest::Approx(1.0));
  const double mid = std::pow(1.05, 4);
  const auto markov = relaxed_right_bound(spec, mid);
  CHECK(markov.value == doctest::Approx(1.0 / 1.05).epsilon(1e-12));
  CHECK(markov.regime == Regime::Markov);
  const auto tail = relaxed_right_bound(spec, std::pow(1.5, 4));
  CHECK(tail.value == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(tail.regime == Regime::Tail);
}

TEST_CASE("branch continuity at the regime boundaries") {
  const MomentSpec spec{4, 1.0, 0.5, 0.3};
  const double th = theta(spec);
  const double edge1 = std::exp(spec.T * std::log(spec.mu));
  const double edge2 =
      std::exp(spec.T * std::log(spec.mu + spec.sigma * spec.sigma * th / (spec.T * spec.mu)));
  for (double edge : {edge1, edge2}) {
    const double below = relaxed_right_bound(spec, edge * (1.0 - 1e-13)).value;
    const double at = relaxed_right_bound(spec, edge).value;
    CHECK(std::abs(below - at) <= 1e-10);
  }
  // Sum bound continuity.
  const double sum_edges[] = {spec.T * spec.mu,
                              spec.T * spec.mu + spec.sigma * spec.sigma * th / spec.mu};
  for (double edge : sum_edges) {
    const double below = sum_bound(spec, edge - 1e-12, Orientation::Geq).value;
    const double at = sum_bound(spec, edge, Orientation::Geq).value;
    CHECK(std::abs(below - at) <= 1e-9);
  }
}

TEST_CASE("extremal distribution at the tail branch") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  const double gamma = std::pow(1.5, 4);
  const auto dist = extremal_distribution(spec, gamma);
  REQUIRE(dist.families.size() == 2);
  CHECK(dist.families[1].prob == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(dist.families[1].x == doctest::Approx(1.5).epsilon(1e-12));  // v*/q* = quantile
  CHECK(dist.mean() == doctest::Approx(spec.mu).epsilon(1e-14));

  // Second-moment deficit must be PSD: m2 <= mu^2 + sigma^2 theta / T, and
  // here it is binding.
  const double m2 = dist.second_moment();
  CHECK(m2 <= spec.mu * spec.mu + spec.sigma * spec.sigma * theta(spec) / spec.T + 1e-12);
  CHECK(m2 == doctest::Approx(spec.mu * spec.mu +
                              spec.sigma * spec.sigma * theta(spec) / spec.T));
}

TEST_CASE("extremal distribution keeps the origin atom in the Markov branch") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  const double gamma = std::pow(1.05, 4);
  const auto dist = extremal_distribution(spec, gamma);
  REQUIRE(dist.families.size() == 2);
  CHECK(dist.families[0].x == doctest::Approx(0.0));  // u*/p* = 0 retained
  CHECK(dist.families[1].prob == doctest::Approx(1.0 / 1.05).epsilon(1e-12));
  CHECK(dist.total_prob() == doctest::Approx(1.0));
}

TEST_CASE("extremal distribution degenerate branch") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  const auto dist = extremal_distribution(spec, 0.9);  // gamma <= mu^T
  REQUIRE(dist.families.size() == 1);
  CHECK(dist.families[0].x == doctest::Approx(1.0));
  CHECK(dist.families[0].prob == doctest::Approx(1.0));
}

TEST_CASE("absorption threshold") {
  const MomentSpec spec{4, 1.0, 1.0, 0.0};
  CHECK(absorption_threshold(spec) == doctest::Approx(3.0));
  CHECK(absorbed({4, 1.0, 1.0, 0.0}));
  CHECK_FALSE(absorbed({3, 1.0, 1.0, 0.0}));  // strict inequality
  CHECK(absorption_threshold({2, 1.0, 0.1, 0.0}) == doctest::Approx(102.0));
}

TEST_CASE("gamma-bar threshold") {
  const MomentSpec spec{5, 1.0, 0.5, 0.0};
  const auto bar = gamma_bar_threshold(spec);
  REQUIRE(bar.hypothesis_holds);
  CHECK(bar.gamma_bar_root == doctest::Approx(gamma_bar_root_oracle(spec)).epsilon(1e-10));
  CHECK(bar.gamma_bar ==
        doctest::Approx(std::pow(bar.gamma_bar_root, spec.T)).epsilon(1e-12));
  // The threshold exceeds the Markov edge, so the tail branch formula applies.
  CHECK(bar.gamma_bar_root >
        spec.mu + spec.sigma * spec.sigma * theta(spec) / (spec.T * spec.mu));

  CHECK_FALSE(gamma_bar_threshold({4, 0.1, 1.0, 0.0}).hypothesis_holds);
}

TEST_CASE("gamma-bar root approaches mu as T grows") {
  double prev = 1e300;
  for (int T : {3, 5, 9, 17, 33, 65}) {
    const auto bar = gamma_bar_threshold({T, 1.0, 0.5, 0.0});
    REQUIRE(bar.hypothesis_holds);
    CHECK(bar.gamma_bar_root < prev);
    prev = bar.gamma_bar_root;
  }
  CHECK(prev < 1.03);
}

TEST_CASE("comparison-bound closed form and dominance") {
  const MomentSpec spec{4, 1.0, 0.5, 0.0};
  CHECK(mo_bound(spec, 0.9).value == doctest::Approx(1.0));
  CHECK(mo_bound(spec, std::pow(1.5, 4)).value == doctest::Approx(0.2).epsilon(1e-12));
  const double mid = std::pow(1.05, 4);
  CHECK(mo_bound(spec, mid).value == doctest::Approx(0.25 / 0.26).epsilon(1e-12));
  CHECK(mo_bound(spec, mid).value >= relaxed_right_bound(spec, mid).value);

  // Equality beyond the Markov edge.
  const double far = std::pow(1.2, 4);
  CHECK(mo_bound(spec, far).value ==
        doctest::Approx(relaxed_right_bound(spec, far).value).epsilon(1e-13));
}

TEST_CASE("log-space bound") {
  CHECK(log_space_bound(0.1, 0.2, 0.0, 3, std::exp(0.1)).value == doctest::Approx(1.0));
  CHECK(log_space_bound(0.0, 1.0, 0.0, 1, std::exp(1.0)).value == doctest::Approx(0.5));
  // Vanishing sum variance at rho -> -1/(T-1).
  const double tiny = log_space_bound(0.0, 1.0, -0.499999, 3, std::exp(0.5)).value;
  CHECK(tiny < 1e-4);
}

}  // TEST_SUITE
