#include <doctest.h>

#include <cmath>
#include <sstream>

#include "chebyprod/analytic.hpp"
#include "chebyprod/portfolio.hpp"

using namespace chebyprod;

namespace {

ReturnPanel parse(const std::string& csv) {
  std::istringstream is(csv);
  return read_returns_csv(is);
}

}  // namespace

TEST_SUITE("portfolio") {

TEST_CASE("returns CSV parsing") {
  const auto panel = parse("a,b\n0.1,0.2\n-0.05,0.0\n");
  CHECK(panel.assets() == 2);
  CHECK(panel.periods() == 2);
  CHECK(panel.returns[1][0] == doctest::Approx(-0.05));

  CHECK_THROWS(parse(""));
  CHECK_THROWS(parse("a,b\n0.1\n"));            // field count mismatch
  CHECK_THROWS(parse("a\n-1.5\n0.0\n"));        // below -1
  CHECK_THROWS(parse("a\nx\n0.0\n"));           // not a number
  CHECK_THROWS(parse("a\n0.1\n"));              // single period
}

TEST_CASE("moment estimation") {
  const auto panel = parse("a\n0\n0.2\n");
  const auto est = estimate_moments(panel);
  CHECK(est.mean[0] == doctest::Approx(0.1));
  CHECK(est.cov[0][0] == doctest::Approx(0.02));  // unbiased divisor 1

  // Permuting period order leaves the estimates unchanged.
  const auto est2 = estimate_moments(parse("a\n0.2\n0\n"));
  CHECK(est2.mean[0] == doctest::Approx(est.mean[0]));
  CHECK(est2.cov[0][0] == doctest::Approx(est.cov[0][0]));

  // Constant panel: zero covariance.
  const auto flat = estimate_moments(parse("a,b\n0.1,0.3\n0.1,0.3\n0.1,0.3\n"));
  CHECK(flat.cov[0][0] == doctest::Approx(0.0));
  CHECK(flat.cov[1][1] == doctest::Approx(0.0));
}

TEST_CASE("wealth spec from weights") {
  MomentEstimates est;
  est.mean = {0.05, 0.02};
  est.cov = {{0.04, 0.0}, {0.0, 0.01}};
  const auto ws = wealth_spec({1.0, 0.0}, est, 6);
  CHECK_FALSE(ws.degenerate);
  CHECK(ws.spec.T == 6);
  CHECK(ws.spec.mu == doctest::Approx(1.05));
  CHECK(ws.spec.sigma == doctest::Approx(0.2));
  CHECK(ws.spec.rho == 0.0);

  CHECK_THROWS(wealth_spec({0.5, 0.4}, est, 6));   // not on the simplex
  CHECK_THROWS(wealth_spec({1.2, -0.2}, est, 6));  // negative weight
}

TEST_CASE("perfectly hedged pair is degenerate") {
  MomentEstimates est;
  est.mean = {0.01, 0.01};
  est.cov = {{0.04, -0.04}, {-0.04, 0.04}};  // anti-correlated, equal variance
  const auto ws = wealth_spec({0.5, 0.5}, est, 4);
  CHECK(ws.degenerate);
  const auto res = worst_case_var(ws, 0.1);
  CHECK(res.degenerate);
  CHECK(res.wvar == doctest::Approx(std::pow(1.01, 4)));
}

TEST_CASE("absorbed spec reports zero worst-case value-at-risk") {
  WealthSpec ws;
  ws.spec = {4, 1.0, 1.0, 0.0};
  REQUIRE(absorbed(ws.spec));
  const auto res = worst_case_var(ws, 0.1);
  CHECK(res.absorbed);
  CHECK(res.wvar == 0.0);
}

TEST_CASE("bisection brackets the risk tolerance") {
  WealthSpec ws;
  ws.spec = {3, 1.03, 0.12, 0.0};
  REQUIRE_FALSE(absorbed(ws.spec));
  const double eps = 0.1;
  const auto res = worst_case_var(ws, eps, 1e-5);
  CHECK(res.wvar > 0.0);
  CHECK(res.tail_at_lo <= eps);
  CHECK(res.tail_at_hi >= eps);

  // Re-evaluate at the reported bracket ends.
  BoundOptions opts;
  const double below =
      left_bound({ws.spec, res.wvar * (1.0 - 3e-5), TailSide::LeftTail}, opts).value;
  const double above =
      left_bound({ws.spec, res.wvar * (1.0 + 3e-5), TailSide::LeftTail}, opts).value;
  CHECK(below <= eps + 1e-6);
  CHECK(above >= eps - 1e-6);
}

TEST_CASE("worst-case value-at-risk grows with the risk tolerance") {
  WealthSpec ws;
  ws.spec = {3, 1.02, 0.15, 0.0};
  double prev = -1.0;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    const auto res = worst_case_var(ws, eps, 1e-5);
    CHECK(res.wvar >= prev - 1e-9);
    prev = res.wvar;
  }
}

TEST_CASE("frank-wolfe endpoints of the frontier") {
  MomentEstimates est;
  est.mean = {0.08, 0.03, 0.01};
  est.cov = {{0.09, 0.01, 0.0}, {0.01, 0.02, 0.005}, {0.0, 0.005, 0.01}};

  // tau = 0: global minimum-variance portfolio; compare against a fine
  // simplex grid scan.
  const auto w0 = min_quadratic_simplex(est, 0.0);
  double best = 1e300;
  std::vector<double> best_w;
  const int N = 60;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N - i; ++j) {
      const std::vector<double> w{double(i) / N, double(j) / N, double(N - i - j) / N};
      double v = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v += w[a] * est.cov[a][b] * w[b];
      if (v < best) {
        best = v;
        best_w = w;
      }
    }
  double v0 = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v0 += w0[a] * est.cov[a][b] * w0[b];
  CHECK(v0 <= best + 1e-6);

  // Large tau: all weight on the highest-mean asset.
  const auto w_inf = min_quadratic_simplex(est, 1e6);
  CHECK(w_inf[0] == doctest::Approx(1.0).epsilon(1e-6));

  // Single asset: every tau returns weight 1.
  MomentEstimates single;
  single.mean = {0.05};
  single.cov = {{0.02}};
  for (double tau : {0.0, 1.0, 100.0}) {
    const auto w = min_quadratic_simplex(single, tau);
    CHECK(w[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("frontier sweep shape") {
  MomentEstimates est;
  est.mean = {0.06, 0.02};
  est.cov = {{0.05, 0.005}, {0.005, 0.008}};
  const auto points = frontier_sweep(est, 4, 0.15, 5, 0.0, 0.0, 1e-4);
  REQUIRE(points.size() == 5);
  int best_count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK_FALSE(points[i].skipped);
    if (points[i].best) ++best_count;
    if (i > 0) CHECK(points[i].mean >= points[i - 1].mean - 1e-9);
  }
  CHECK(best_count == 1);
}

}  // TEST_SUITE
