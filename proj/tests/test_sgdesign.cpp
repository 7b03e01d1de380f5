#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "polylab/sgdesign.hpp"

using namespace polylab;

namespace {

Configuration pg1_3() { return Configuration::finite(FieldSpec::prime(3), {{1, 0}, {0, 1}, {1, 1}, {1, 2}}); }

Configuration affine(std::initializer_list<std::pair<std::int64_t, std::int64_t>> pts) {
  std::vector<std::vector<Rational>> v;
  for (auto [x, y] : pts) v.push_back({Rational(x), Rational(y)});
  return Configuration::rational(v);
}

std::vector<Triple> sum_zero_by_hand(std::size_t r) {
  std::vector<Triple> out;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c)
        if (a != b && b != c && a != c && (a + b + c) % r == 0) out.push_back({a, b, c});
  return out;
}

RationalMatrix identity(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

TEST_CASE("SG checks") {
  CHECK(check_sg(pg1_3(), 1).holds);
  CHECK(pg1_3().special_lines().size() == 1);
  const auto tri = check_sg(affine({{0, 0}, {1, 0}, {0, 1}}), Rational(1, 2));
  CHECK_FALSE(tri.holds);
  REQUIRE(tri.failing);
  CHECK(*tri.failing == 0);
  CHECK(check_sg(affine({{0, 0}, {1, 1}, {2, 2}, {5, 5}}), 1).holds);
  CHECK_THROWS_AS(Configuration::finite(FieldSpec::prime(3), {{1, 0}, {2, 0}}), PreconditionError);
  CHECK_THROWS_AS(Configuration::finite(FieldSpec::prime(3), {{0, 0}, {1, 0}}), PreconditionError);
  CHECK_THROWS_AS(affine({{0, 0}, {0, 0}}), PreconditionError);
}

TEST_CASE("ordinary lines") {
  std::vector<Point2> grid;
  for (std::int64_t y = 1; y <= 3; ++y)
    for (std::int64_t x = 1; x <= 3; ++x) grid.push_back({Rational(x), Rational(y)});
  CHECK(ordinary_lines(grid).size() == 12);
  std::vector<Point2> line{{0, 0}, {1, 1}, {2, 2}};
  CHECK(ordinary_lines(line).empty());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    std::set<Point2> s;
    while (s.size() < 6) s.insert({Rational(static_cast<std::int64_t>(rng() % 4)), Rational(static_cast<std::int64_t>(rng() % 4))});
    std::vector<Point2> pts(s.begin(), s.end());
    bool collinear = true;
    for (std::size_t i = 2; i < pts.size(); ++i) collinear &= Line2::through(pts[0], pts[1]).contains(pts[i]);
    if (!collinear) CHECK_FALSE(ordinary_lines(pts).empty());
  }
}

TEST_CASE("sum-zero triple systems") {
  CHECK(triple_system(4, TripleKind::sum_zero).size() == 6);
  CHECK(triple_system(5, TripleKind::sum_zero).size() == 12);
  for (std::size_t r = 3; r <= 30; ++r) {
    CAPTURE(r);
    auto t = triple_system(r, TripleKind::sum_zero);
    auto want = sum_zero_by_hand(r);
    std::sort(t.begin(), t.end());
    std::sort(want.begin(), want.end());
    CHECK(t == want);
    const auto st = triple_stats(t, r);
    CHECK(st.max_per_pair <= 6);
    CHECK(st.distinct_entries);
    if (std::gcd(r, std::size_t{3}) == 1) CHECK(st.count == (r - 1) * (r - 2));
  }
}

TEST_CASE("Latin triple systems") {
  for (std::size_t r = 3; r <= 30; ++r) {
    CAPTURE(r);
    const auto sq = idempotent_latin_square(r);
    for (std::size_t i = 0; i < r; ++i) {
      CHECK(sq[i][i] == i);
      std::vector<int> row(r, 0), col(r, 0);
      for (std::size_t j = 0; j < r; ++j) {
        ++row[sq[i][j]];
        ++col[sq[j][i]];
      }
      CHECK(std::all_of(row.begin(), row.end(), [](int c) { return c == 1; }));
      CHECK(std::all_of(col.begin(), col.end(), [](int c) { return c == 1; }));
    }
    const auto st = triple_stats(triple_system(r), r);
    CHECK(st.count == r * (r - 1));
    CHECK(st.min_per_element == 3 * (r - 1));
    CHECK(st.max_per_element == 3 * (r - 1));
    CHECK(st.max_per_pair <= 6);
    CHECK(st.distinct_entries);
  }
  CHECK_THROWS_AS(triple_system(2), PreconditionError);
}

TEST_CASE("design matrix from PG(1, 3)") {
  const auto res = design_from_config(pg1_3());
  CHECK(res.annihilates);
  CHECK(res.config_rank == 2);
  CHECK(res.rank <= 4 - 2);
  CHECK(Rational(res.rank) >= res.bound);
  CHECK(res.bound == rank_lower_bound(res.params.q, res.params.k, res.params.t, 4));
  for (const auto& s : res.matrix.row_supports()) CHECK(s.size() == 3);
  CHECK(res.matrix.params() == res.params);
  CHECK(res.matrix.is_design(res.params));
  CHECK(exact_rank(res.matrix) == res.rank);
}

TEST_CASE("design matrix from collinear rational points") {
  const auto c = affine({{0, 0}, {1, 2}, {2, 4}, {3, 6}, {7, 14}});
  const auto res = design_from_config(c);
  CHECK(res.annihilates);
  CHECK(res.config_rank == 2);
  CHECK(res.rank + res.config_rank <= 5);
  CHECK(Rational(res.rank) >= res.bound);
  for (const auto& s : res.matrix.row_supports()) CHECK(s.size() == 3);
  // check A V = 0 independently with the homogenizing 1
  for (const auto& row : res.matrix.rational_rows)
    for (std::size_t coord = 0; coord < 3; ++coord) {
      Rational sum = 0;
      for (const auto& [j, v] : row) sum += v * (coord == 0 ? Rational(1) : c.rational_points()[j][coord - 1]);
      CHECK(sum == 0);
    }
  CHECK_THROWS_AS(design_from_config(affine({{0, 0}, {1, 0}, {0, 1}})), PreconditionError);
}

TEST_CASE("rank lower bound") {
  CHECK(rank_lower_bound(3, 3, 0, 10) == 10);
  CHECK(rank_lower_bound(1, 5, 0, 7) == 7);
  for (std::size_t k0 : {1u, 2u, 5u})
    CHECK(rank_lower_bound(3, 3 * k0, 6, 20) == Rational(20) - Rational(60, k0) * Rational(60, k0));
  CHECK_THROWS_AS(rank_lower_bound(3, 0, 6, 4), PreconditionError);
}

TEST_CASE("exact rank") {
  CHECK(exact_rank(identity(5)) == 5);
  CHECK(exact_rank(RationalMatrix(4, std::vector<Rational>(6, 1))) == 1);
  GaussMatrix g{{{1, 1}, {0, 1}}, {{2, 0}, {1, 1}}};  // second row = (1 - i) * first row
  CHECK(exact_rank(g) == 1);
  CHECK(exact_rank(FieldSpec::prime(3), {{1, 2}, {2, 1}}) == 1);
  CHECK(exact_rank(FieldSpec::prime(5), {{1, 2}, {2, 1}}) == 2);
}

TEST_CASE("diagonal dominance bound") {
  CHECK(diag_rank_bound(identity(4), 1, 0) == 4);
  RationalMatrix ij(3, std::vector<Rational>(3, 1));
  for (std::size_t i = 0; i < 3; ++i) ij[i][i] = 2;
  CHECK(diag_rank_bound(ij, 2, 1) == Rational(12, 7));
  CHECK(exact_rank(ij) == 3);
  // L I + l (J - I) with n (l / L)^2 < 1
  const std::size_t n = 6;
  RationalMatrix m(n, std::vector<Rational>(n, Rational(1, 3)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  CHECK(diag_rank_bound(m, 1, Rational(1, 3)) > Rational(n, 2));
  CHECK_THROWS_AS(diag_rank_bound(m, 1, 2), PreconditionError);
  CHECK_THROWS_AS(diag_rank_bound(m, 2, Rational(1, 3)), PreconditionError);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t size = 2 + rng() % 5;
    RationalMatrix a(size, std::vector<Rational>(size));
    for (std::size_t i = 0; i < size; ++i) {
      a[i][i] = Rational(static_cast<std::int64_t>(4 + rng() % 4)) * (rng() % 2 ? 1 : -1);
      for (std::size_t j = i + 1; j < size; ++j)
        a[i][j] = a[j][i] = Rational(static_cast<std::int64_t>(rng() % 9) - 4, 2);
    }
    const auto bound = diag_rank_bound(a, 4, 2);
    CHECK(Rational(exact_rank(a)) >= bound);
  }
  GaussMatrix h{{{3, 0}, {1, 1}}, {{1, -1}, {3, 0}}};
  CHECK(diag_rank_bound(h, 3, 2) == Rational(2) / (1 + 2 * Rational(4, 9)));
  CHECK(exact_rank(h) == 2);
}

TEST_CASE("configuration json round trip") {
  const auto c = pg1_3();
  const auto back = Configuration::from_json(c.to_json());
  CHECK(back.vectors() == c.vectors());
  const auto r = affine({{0, 0}, {1, 2}, {2, 4}});
  CHECK(Configuration::from_json(r.to_json()).rational_points() == r.rational_points());
}
