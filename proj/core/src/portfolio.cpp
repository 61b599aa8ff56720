#include "chebyprod/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "chebyprod/analytic.hpp"
#include "chebyprod/parallel.hpp"

namespace chebyprod {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

}  // namespace

ReturnPanel read_returns_csv(std::istream& in) {
  ReturnPanel panel;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty returns file");
  panel.asset_names = split_csv_line(line);
  if (panel.asset_names.empty() || panel.asset_names[0].empty())
    throw std::invalid_argument("missing asset-name header");

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != panel.asset_names.size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(panel.asset_names.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(f, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": not a number: \"" + f + "\"");
      }
      if (pos != f.size())
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": trailing characters in \"" + f + "\"");
      if (v < -1.0)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": relative price change below -1");
      row.push_back(v);
    }
    panel.returns.push_back(std::move(row));
  }
  if (panel.periods() < 2) throw std::invalid_argument("need at least 2 periods");
  return panel;
}

MomentEstimates estimate_moments(const ReturnPanel& panel) {
  const int P = panel.periods();
  const int n = panel.assets();
  if (P < 2) throw std::invalid_argument("need at least 2 periods");

  MomentEstimates est;
  est.mean.assign(n, 0.0);
  for (const auto& row : panel.returns)
    for (int i = 0; i < n; ++i) est.mean[i] += row[i];
  for (double& v : est.mean) v /= P;

  est.cov.assign(n, std::vector<double>(n, 0.0));
  for (const auto& row : panel.returns)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        est.cov[i][j] += (row[i] - est.mean[i]) * (row[j] - est.mean[j]);
  for (auto& r : est.cov)
    for (double& v : r) v /= (P - 1);
  return est;
}

WealthSpec wealth_spec(const std::vector<double>& weights,
                       const MomentEstimates& moments, int horizon, double rho) {
  const int n = static_cast<int>(moments.mean.size());
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("weight dimension mismatch");
  if (horizon < 2) throw std::invalid_argument("horizon must be at least 2");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw std::invalid_argument("weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");

  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += weights[i] * moments.mean[i];
  double var = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) var += weights[i] * moments.cov[i][j] * weights[j];
  var = std::max(0.0, var);

  WealthSpec ws;
  ws.spec = {horizon, 1.0 + mean, std::sqrt(var), rho};
  ws.degenerate = std::sqrt(var) < 1e-12 * std::max(1.0, std::abs(ws.spec.mu));
  return ws;
}

WvarResult worst_case_var(const WealthSpec& ws, double epsilon, double bisect_tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  WvarResult res;

  if (ws.degenerate) {
    res.degenerate = true;
    res.wvar = std::exp(ws.spec.T * std::log(ws.spec.mu));
    return res;
  }

  const MomentSpec& spec = ws.spec;
  ensure_slater(spec);
  if (absorbed(spec)) {
    res.absorbed = true;
    res.wvar = 0.0;
    return res;
  }

  std::vector<Cut> cache;
  const auto tail = [&](double log_gamma) {
    BoundOptions opts;
    opts.warm_cuts = cache;
    const BoundResult r =
        left_bound({spec, std::exp(log_gamma), TailSide::LeftTail}, opts);
    cache = r.reusable_cuts;
    ++res.evaluations;
    return r.value;
  };

  const double T = spec.T;
  double u_lo = T * std::log(std::max(spec.mu - 6.0 * spec.sigma, 1e-6 * spec.mu));
  double u_hi = T * std::log(spec.mu + 6.0 * spec.sigma);

  double tail_lo = tail(u_lo);
  while (tail_lo > epsilon) {
    u_lo -= T * std::log(4.0);
    if (u_lo < -640.0) {
      // Worst-case left tail exceeds epsilon at every representable
      // threshold; no positive wealth level is certifiable.
      res.absorbed = true;
      res.wvar = 0.0;
      return res;
    }
    tail_lo = tail(u_lo);
  }
  double tail_hi = tail(u_hi);
  while (tail_hi <= epsilon) {
    u_hi += T * std::log(4.0);
    if (u_hi > 640.0) break;
    tail_hi = tail(u_hi);
  }

  const double width_target = std::log1p(bisect_tol);
  while (u_hi - u_lo > width_target) {
    const double mid = 0.5 * (u_lo + u_hi);
    const double t = tail(mid);
    if (t <= epsilon) {
      u_lo = mid;
      tail_lo = t;
    } else {
      u_hi = mid;
      tail_hi = t;
    }
  }
  res.wvar = std::exp(0.5 * (u_lo + u_hi));
  res.tail_at_lo = tail_lo;
  res.tail_at_hi = tail_hi;
  return res;
}

std::vector<double> min_quadratic_simplex(const MomentEstimates& moments,
                                          double tau, bool* converged) {
  const int n = static_cast<int>(moments.mean.size());
  if (n < 1) throw std::invalid_argument("no assets");
  std::vector<double> w(n, 1.0 / n);
  if (converged != nullptr) *converged = true;
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }

  std::vector<double> grad(n), sw(n);
  const auto fill_grad = [&]() {
    for (int i = 0; i < n; ++i) {
      double g = -tau * moments.mean[i];
      for (int j = 0; j < n; ++j) g += 2.0 * moments.cov[i][j] * w[j];
      grad[i] = g;
    }
  };
  const auto objective = [&]() {
    double f = 0.0;
    for (int i = 0; i < n; ++i) {
      f -= tau * moments.mean[i] * w[i];
      for (int j = 0; j < n; ++j) f += w[i] * moments.cov[i][j] * w[j];
    }
    return f;
  };

  const int cap = 10000;
  for (int k = 0; k < cap; ++k) {
    fill_grad();
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (grad[i] < grad[best]) best = i;

    double gap = 0.0;  // grad . (w - e_best)
    for (int i = 0; i < n; ++i) gap += grad[i] * w[i];
    gap -= grad[best];
    if (gap < 1e-10 * std::max(1.0, std::abs(objective()))) return w;

    // Exact line search toward the vertex: direction d = e_best - w.
    double dsd = 0.0;
    for (int i = 0; i < n; ++i) {
      const double di = (i == best ? 1.0 : 0.0) - w[i];
      for (int j = 0; j < n; ++j) {
        const double dj = (j == best ? 1.0 : 0.0) - w[j];
        dsd += di * moments.cov[i][j] * dj;
      }
    }
    const double eta = dsd > 0.0 ? std::clamp(gap / (2.0 * dsd), 0.0, 1.0) : 1.0;
    for (int i = 0; i < n; ++i)
      w[i] = (1.0 - eta) * w[i] + (i == best ? eta : 0.0);
  }
  if (converged != nullptr) *converged = false;
  return w;
}

std::vector<FrontierPoint> frontier_sweep(const MomentEstimates& moments,
                                          int horizon, double epsilon,
                                          int n_points, double tau_max,
                                          double rho, double bisect_tol) {
  if (n_points < 2) throw std::invalid_argument("need at least 2 frontier points");
  const int n = static_cast<int>(moments.mean.size());

  if (tau_max <= 0.0) {
    double max_var = 0.0;
    for (int i = 0; i < n; ++i) max_var = std::max(max_var, moments.cov[i][i]);
    double spread = 0.0;
    const auto [lo, hi] = std::minmax_element(moments.mean.begin(), moments.mean.end());
    spread = *hi - *lo;
    tau_max = std::clamp(8.0 * max_var / std::max(spread, 1e-12), 1e-8, 1e12);
  }

  std::vector<FrontierPoint> points(n_points);
  parallel_for(n_points, [&](int idx) {
    FrontierPoint& pt = points[idx];
    pt.tau = tau_max * idx / (n_points - 1);
    bool converged = true;
    pt.weights = min_quadratic_simplex(moments, pt.tau, &converged);
    if (!converged) {
      pt.skipped = true;
      return;
    }
    for (int i = 0; i < n; ++i) pt.mean += pt.weights[i] * moments.mean[i];
    double var = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) var += pt.weights[i] * moments.cov[i][j] * pt.weights[j];
    pt.stdev = std::sqrt(std::max(0.0, var));
    pt.wvar = worst_case_var(wealth_spec(pt.weights, moments, horizon, rho), epsilon,
                             bisect_tol);
  });

  int best = -1;
  for (int i = 0; i < n_points; ++i) {
    if (points[i].skipped) continue;
    if (best < 0 || points[i].wvar.wvar > points[best].wvar.wvar) best = i;
  }
  if (best >= 0) points[best].best = true;
  return points;
}

}  // namespace chebyprod
