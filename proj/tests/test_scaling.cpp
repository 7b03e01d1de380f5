#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "polylab/field.hpp"
#include "polylab/scaling.hpp"

using namespace polylab;

namespace {

std::vector<double> row_sums(const RealMatrix& m) {
  std::vector<double> out;
  for (const auto& r : m) out.push_back(std::accumulate(r.begin(), r.end(), 0.0));
  return out;
}

std::vector<double> col_sums(const RealMatrix& m) {
  std::vector<double> out(m.front().size(), 0.0);
  for (const auto& r : m)
    for (std::size_t j = 0; j < r.size(); ++j) out[j] += r[j];
  return out;
}

}  // namespace

TEST_CASE("all-ones matrix scales in one sweep") {
  const RealMatrix ones{{1, 1}, {1, 1}};
  const auto s = sinkhorn_scale(ones, 1e-12);
  CHECK(s.converged);
  CHECK(s.iterations == 1);
  CHECK(s.achieved_eps == 0.0);
  for (const auto& row : apply_scaling(ones, s))
    for (double x : row) CHECK(x == doctest::Approx(0.5));
}

TEST_CASE("triangular matrix approaches but never reaches doubly stochastic") {
  const RealMatrix tri{{1, 1}, {0, 1}};
  const auto s = sinkhorn_scale(tri, 1e-6);
  CHECK(s.converged);
  CHECK(s.achieved_eps <= 1e-6);
  const auto a = apply_scaling(tri, s);
  CHECK(a[0][1] > 0.0);
  CHECK(a[0][1] <= 2e-6);
  for (double r : row_sums(a)) CHECK(r == doctest::Approx(1.0).epsilon(1e-5));
  for (double c : col_sums(a)) CHECK(c == doctest::Approx(1.0).epsilon(1e-5));
  for (std::size_t i = 1; i < s.eps_history.size(); ++i) CHECK(s.eps_history[i] <= s.eps_history[i - 1] * (1 + 1e-9));
  for (double x : s.rho) CHECK(x > 0.0);
  for (double x : s.gamma) CHECK(x > 0.0);
  CHECK(s.rho[0] == 1.0);
}

TEST_CASE("block diagonal nk x n") {
  const RealMatrix b{{1, 1}, {1, 1}, {1, 1}, {1, 1}};
  CHECK(has_nonzero_diagonal(b));
  const auto s = sinkhorn_scale(b, 1e-10);
  CHECK(s.converged);
  const auto a = apply_scaling(b, s);
  for (double c : col_sums(a)) CHECK(c == doctest::Approx(2.0));
  for (double r : row_sums(a)) CHECK(r == doctest::Approx(1.0));
}

TEST_CASE("non-zero diagonal detection") {
  CHECK(has_nonzero_diagonal({{1, 0}, {0, 1}}));
  CHECK_FALSE(has_nonzero_diagonal({{1, 1}, {0, 0}}));
  CHECK_FALSE(has_nonzero_diagonal({{1, 0}, {1, 0}}));
  CHECK(has_nonzero_diagonal({{1, 0}, {0, 1}, {1, 0}, {0, 1}}));
  CHECK_FALSE(has_nonzero_diagonal({{1, 0}, {1, 0}, {1, 0}, {0, 1}}));
  CHECK_THROWS_AS(sinkhorn_scale({{1, 0}, {1, 0}}, 1e-6), PreconditionError);
  CHECK_THROWS_AS(sinkhorn_scale({{1, -1}, {1, 1}}, 1e-6), PreconditionError);
}

TEST_CASE("random positive matrices") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng() % 3, k = 1 + rng() % 2;
    RealMatrix b(n * k, std::vector<double>(n));
    for (auto& r : b)
      for (auto& x : r) x = u(rng);
    const auto s = sinkhorn_scale(b, 1e-10);
    CHECK(s.converged);
    const auto a = apply_scaling(b, s);
    for (double r : row_sums(a)) CHECK(std::abs(r - 1.0) <= 1e-9);
    for (double c : col_sums(a)) CHECK(std::abs(c - static_cast<double>(k)) <= 1e-9);
    for (std::size_t i = 1; i < s.eps_history.size(); ++i)
      CHECK(s.eps_history[i] <= s.eps_history[i - 1] * (1 + 1e-9));
  }
}

TEST_CASE("l2 scaling") {
  const double c = std::cos(0.3), sn = std::sin(0.3);
  const ComplexMatrix rot{{c, sn}, {-sn, c}};
  const auto r = l2_scale(rot, 1e-12);
  for (double x : r.rho) CHECK(x == doctest::Approx(1.0));
  for (double x : r.gamma) CHECK(x == doctest::Approx(1.0));

  const ComplexMatrix tri{{1, 1}, {0, 1}};
  const auto l2 = l2_scale(tri, 1e-6);
  const auto sk = sinkhorn_scale({{1, 1}, {0, 1}}, 1e-6);
  REQUIRE(l2.rho.size() == sk.rho.size());
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(l2.rho[i] == doctest::Approx(std::sqrt(sk.rho[i])));
    CHECK(l2.gamma[i] == doctest::Approx(std::sqrt(sk.gamma[i])));
  }
  const ComplexMatrix z{{{1, 2}, {0.5, -1}}, {{0, 1}, {2, 2}}, {{1, 1}, {0, 3}}, {{2, 0}, {1, 1}}};
  const double eps = 1e-8;
  const auto s = l2_scale(z, eps);
  for (std::size_t i = 0; i < z.size(); ++i) {
    double norm2 = 0;
    for (std::size_t j = 0; j < 2; ++j) norm2 += std::norm(s.rho[i] * z[i][j] * s.gamma[j]);
    CHECK(std::sqrt(norm2) <= std::sqrt(1 + eps) + 1e-12);
  }
}

TEST_CASE("potential descent agrees with sinkhorn") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::vector<RealMatrix> cases{{{1, 1}, {1, 1}}};
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 2 + rng() % 3, k = 1 + rng() % 2;
    RealMatrix b(n * k, std::vector<double>(n));
    for (auto& r : b)
      for (auto& x : r) x = u(rng);
    cases.push_back(b);
  }
  for (const auto& b : cases) {
    const double k = static_cast<double>(b.size()) / static_cast<double>(b.front().size());
    const std::vector<double> rows(b.size(), 1.0), cols(b.front().size(), k);
    const auto p = scale_by_potential(b, rows, cols, 1.0, 1e-12);
    CHECK(p.converged);
    const auto s = sinkhorn_scale(b, 1e-13);
    const auto ap = apply_scaling(b, p), as = apply_scaling(b, s);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b[i].size(); ++j) CHECK(std::abs(ap[i][j] - as[i][j]) <= 1e-6);
  }
}

TEST_CASE("potential gradient") {
  const RealMatrix b{{1, 2, 0.5}, {0.3, 1, 1}, {2, 0.1, 1}};
  const ScalingPotential f(b, {1, 1, 1}, {1, 1, 1});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> z(f.dimension());
    for (auto& x : z) x = u(rng);
    const auto g = f.gradient(z);
    const double d = 1e-5;
    for (std::size_t i = 0; i < z.size(); ++i) {
      auto zp = z, zm = z;
      zp[i] += d;
      zm[i] -= d;
      CHECK(std::abs(g[i] - (f.value(zp) - f.value(zm)) / (2 * d)) <= 1e-6);
    }
  }
  // at the optimum the scaled marginals equal the normalized targets
  const auto res = scale_by_potential(b, {1, 1, 1}, {1, 1, 1}, 1.0, 1e-12);
  CHECK(res.converged);
  const auto a = apply_scaling(b, res);
  for (double r : row_sums(a)) CHECK(r == doctest::Approx(1.0).epsilon(1e-8));
  for (double c : col_sums(a)) CHECK(c == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("infeasible potential targets") {
  const RealMatrix tri{{1, 1}, {0, 1}};
  CHECK_FALSE(potential_feasible(tri, {1, 1}, {1, 1}));
  CHECK(potential_feasible(tri, {1, 1}, {0.5, 1.5}));
  CHECK(potential_feasible({{1, 1}, {1, 1}}, {1, 1}, {1, 1}));
  CHECK_THROWS_AS(scale_by_potential(tri, {1, 1}, {1, 1}), PreconditionError);
}
