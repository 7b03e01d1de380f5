#include "polylab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "polylab/field.hpp"

namespace polylab {

namespace {

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, double,
                    boost::property<boost::edge_residual_capacity_t, double,
                                    boost::property<boost::edge_reverse_t, FlowTraits::edge_descriptor>>>>;

/// Bipartite transport network: source -> row i (row_cap[i]) -> col j for each
/// support entry (unbounded) -> sink (col_cap[j]). Returns the max flow.
double transport_flow(const RealMatrix& b, const std::vector<double>& row_cap, const std::vector<double>& col_cap) {
  const std::size_t m = b.size(), n = b.front().size();
  FlowGraph g(m + n + 2);
  const std::size_t source = m + n, sink = m + n + 1;
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto add = [&](std::size_t u, std::size_t v, double c) {
    auto e = boost::add_edge(u, v, g).first;
    auto r = boost::add_edge(v, u, g).first;
    cap[e] = c;
    cap[r] = 0.0;
    rev[e] = r;
    rev[r] = e;
  };
  const double big = std::accumulate(row_cap.begin(), row_cap.end(), 0.0) + 1.0;
  for (std::size_t i = 0; i < m; ++i) add(source, i, row_cap[i]);
  for (std::size_t j = 0; j < n; ++j) add(m + j, sink, col_cap[j]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] > 0) add(i, m + j, big);
  return boost::push_relabel_max_flow(g, source, sink);
}

void validate_nonnegative(const RealMatrix& b) {
  if (b.empty() || b.front().empty()) throw PreconditionError("empty matrix");
  const std::size_t n = b.front().size();
  for (const auto& row : b) {
    if (row.size() != n) throw PreconditionError("ragged matrix");
    bool any = false;
    for (double x : row) {
      if (!(x >= 0) || !std::isfinite(x)) throw PreconditionError("entries must be finite and nonnegative");
      any = any || x > 0;
    }
    if (!any) throw PreconditionError("zero row");
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (const auto& row : b) any = any || row[j] > 0;
    if (!any) throw PreconditionError("zero column");
  }
}

void fix_gauge(ScalingResult& s) {
  const double c = s.rho.front();
  for (auto& r : s.rho) r /= c;
  for (auto& g : s.gamma) g *= c;
}

double violation(const RealMatrix& b, const std::vector<double>& rho, const std::vector<double>& gamma,
                 const std::vector<double>& row_t, const std::vector<double>& col_t) {
  const std::size_t m = b.size(), n = gamma.size();
  std::vector<double> col(n, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = rho[i] * b[i][j] * gamma[j];
      row += a;
      col[j] += a;
    }
    worst = std::max(worst, std::abs(row - row_t[i]));
  }
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(col[j] - col_t[j]));
  return worst;
}

}  // namespace

RealMatrix apply_scaling(const RealMatrix& b, const ScalingResult& s) {
  RealMatrix out = b;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) out[i][j] = s.rho[i] * b[i][j] * s.gamma[j];
  return out;
}

bool has_nonzero_diagonal(const RealMatrix& b) {
  if (b.empty() || b.front().empty()) return false;
  const std::size_t m = b.size(), n = b.front().size();
  if (m % n != 0) return false;
  const double k = static_cast<double>(m / n);
  const double flow = transport_flow(b, std::vector<double>(m, 1.0), std::vector<double>(n, k));
  return flow > static_cast<double>(m) - 0.5;
}

ScalingResult sinkhorn_scale(const RealMatrix& b, double eps, std::size_t max_iters, bool check_diagonal) {
  validate_nonnegative(b);
  const std::size_t m = b.size(), n = b.front().size();
  if (m % n != 0) throw PreconditionError("sinkhorn_scale needs an nk x n matrix");
  if (check_diagonal && !has_nonzero_diagonal(b)) throw PreconditionError("matrix lacks a nonzero diagonal");
  const double k = static_cast<double>(m / n);
  const std::vector<double> row_t(m, 1.0), col_t(n, k);

  ScalingResult s;
  s.rho.assign(m, 1.0);
  s.gamma.assign(n, 1.0);
  s.achieved_eps = violation(b, s.rho, s.gamma, row_t, col_t);
  constexpr std::size_t kHistoryCap = 1u << 20;
  double prev = std::numeric_limits<double>::infinity();
  while (s.achieved_eps > eps && s.iterations < max_iters) {
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += b[i][j] * s.gamma[j];
      s.rho[i] = 1.0 / row;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < m; ++i) col += s.rho[i] * b[i][j];
      s.gamma[j] = k / col;
    }
    ++s.iterations;
    s.achieved_eps = violation(b, s.rho, s.gamma, row_t, col_t);
    if (s.achieved_eps > prev * (1 + 1e-9) + 1e-15) throw std::logic_error("sinkhorn violation increased");
    prev = s.achieved_eps;
    if (s.eps_history.size() < kHistoryCap) s.eps_history.push_back(s.achieved_eps);
  }
  s.converged = s.achieved_eps <= eps;
  fix_gauge(s);
  return s;
}

ScalingResult l2_scale(const ComplexMatrix& a, double eps, std::size_t max_iters) {
  RealMatrix b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& x : a[i]) b[i].push_back(std::norm(x));
  auto s = sinkhorn_scale(b, eps, max_iters);
  for (auto& r : s.rho) r = std::sqrt(r);
  for (auto& g : s.gamma) g = std::sqrt(g);
  return s;
}

// -------------------------------------------------------------- potential

ScalingPotential::ScalingPotential(RealMatrix b, std::vector<double> row_targets, std::vector<double> col_targets)
    : b_(std::move(b)) {
  validate_nonnegative(b_);
  rows_ = b_.size();
  cols_ = b_.front().size();
  if (row_targets.size() != rows_ || col_targets.size() != cols_)
    throw PreconditionError("target length does not match the matrix");
  const double rs = std::accumulate(row_targets.begin(), row_targets.end(), 0.0);
  const double cs = std::accumulate(col_targets.begin(), col_targets.end(), 0.0);
  for (double x : row_targets)
    if (!(x > 0)) throw PreconditionError("targets must be positive");
  for (double x : col_targets)
    if (!(x > 0)) throw PreconditionError("targets must be positive");
  if (std::abs(rs - cs) > 1e-9 * std::max(rs, cs)) throw PreconditionError("row and column targets differ in total");
  total_ = rs;
  v_.reserve(rows_ + cols_);
  for (double x : row_targets) v_.push_back(x / rs);
  for (double x : col_targets) v_.push_back(x / rs);
}

double ScalingPotential::value(const std::vector<double>& z) const {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (b_[i][j] > 0) top = std::max(top, std::log(b_[i][j]) + z[i] + z[rows_ + j]);
  double sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (b_[i][j] > 0) sum += std::exp(std::log(b_[i][j]) + z[i] + z[rows_ + j] - top);
  double dot = 0.0;
  for (std::size_t d = 0; d < z.size(); ++d) dot += z[d] * v_[d];
  return top + std::log(sum) - dot;
}

std::vector<double> ScalingPotential::gradient(const std::vector<double>& z) const {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (b_[i][j] > 0) top = std::max(top, std::log(b_[i][j]) + z[i] + z[rows_ + j]);
  std::vector<double> g(rows_ + cols_, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (b_[i][j] > 0) {
        const double w = std::exp(std::log(b_[i][j]) + z[i] + z[rows_ + j] - top);
        sum += w;
        g[i] += w;
        g[rows_ + j] += w;
      }
  for (std::size_t d = 0; d < g.size(); ++d) g[d] = g[d] / sum - v_[d];
  return g;
}

bool potential_feasible(const RealMatrix& b, const std::vector<double>& row_targets,
                        const std::vector<double>& col_targets) {
  const ScalingPotential pot(b, row_targets, col_targets);
  const std::size_t m = b.size(), n = b.front().size();
  const auto& v = pot.target();
  std::vector<std::size_t> row_deg(m, 0), col_deg(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] > 0) {
        ++row_deg[i];
        ++col_deg[j];
      }
  // Every support entry carries at least lambda; shrink lambda until the
  // remaining demands route or lambda becomes negligible. On the boundary of
  // the hull the shortfall is itself of order lambda, so the routing test
  // tolerates only a small fraction of lambda.
  double lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) lambda = std::min(lambda, v[i] / static_cast<double>(row_deg[i]));
  for (std::size_t j = 0; j < n; ++j) lambda = std::min(lambda, v[m + j] / static_cast<double>(col_deg[j]));
  for (int round = 0; round < 32; ++round, lambda /= 2) {
    std::vector<double> rc(m), cc(n);
    for (std::size_t i = 0; i < m; ++i) rc[i] = v[i] - lambda * static_cast<double>(row_deg[i]);
    for (std::size_t j = 0; j < n; ++j) cc[j] = v[m + j] - lambda * static_cast<double>(col_deg[j]);
    if (*std::min_element(rc.begin(), rc.end()) < 0 || *std::min_element(cc.begin(), cc.end()) < 0) continue;
    const double need = std::accumulate(rc.begin(), rc.end(), 0.0);
    if (transport_flow(b, rc, cc) >= need - 1e-4 * lambda) return true;
  }
  return false;
}

ScalingResult scale_by_potential(const RealMatrix& b, const std::vector<double>& row_targets,
                                 const std::vector<double>& col_targets, double step, double tol,
                                 std::size_t max_iters, bool check_feasible) {
  const ScalingPotential pot(b, row_targets, col_targets);
  if (!(step > 0) || !(tol > 0)) throw PreconditionError("step and tol must be positive");
  if (check_feasible && !potential_feasible(b, row_targets, col_targets))
    throw PreconditionError("target sums are not strictly inside the support hull");
  const std::size_t m = b.size(), n = b.front().size();
  std::vector<double> z(m + n, 0.0);
  ScalingResult s;
  double f = pot.value(z);
  double s_step = step;
  for (;;) {
    const auto g = pot.gradient(z);
    double gmax = 0.0, gsq = 0.0;
    for (double x : g) {
      gmax = std::max(gmax, std::abs(x));
      gsq += x * x;
    }
    if (gmax <= tol) {
      s.converged = true;
      break;
    }
    if (s.iterations >= max_iters) break;
    std::vector<double> trial(z.size());
    // The Hessian is a covariance of 0/1 vectors with two ones, so its norm is
    // at most 2 and step 1/2 always descends. Use it once the Armijo decrease
    // falls below what doubles can resolve.
    if (0.5 * s_step * gsq < 1e-13 * (1 + std::abs(f))) {
      const double safe = std::min(step, 0.5);
      for (std::size_t d = 0; d < z.size(); ++d) z[d] -= safe * g[d];
      f = pot.value(z);
      ++s.iterations;
      continue;
    }
    for (;;) {
      for (std::size_t d = 0; d < z.size(); ++d) trial[d] = z[d] - s_step * g[d];
      const double ft = pot.value(trial);
      if (ft <= f - 0.5 * s_step * gsq || s_step < 1e-18) {
        z = trial;
        f = ft;
        break;
      }
      s_step /= 2;
    }
    s_step = std::min(s_step * 2, step);
    ++s.iterations;
  }
  // Scaled matrix total * p with p_ij proportional to b_ij e^{x_i + y_j}.
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < z.size(); ++d) top = std::max(top, z[d]);
  s.rho.resize(m);
  s.gamma.resize(n);
  for (std::size_t i = 0; i < m; ++i) s.rho[i] = std::exp(z[i] - top);
  for (std::size_t j = 0; j < n; ++j) s.gamma[j] = std::exp(z[m + j] - top);
  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) mass += s.rho[i] * b[i][j] * s.gamma[j];
  for (auto& r : s.rho) r *= pot.total() / mass;
  fix_gauge(s);
  s.achieved_eps = violation(b, s.rho, s.gamma, row_targets, col_targets);
  return s;
}

}  // namespace polylab
