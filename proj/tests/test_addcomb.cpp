#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "polylab/addcomb.hpp"
#include "polylab/kernels.hpp"

using namespace polylab;

namespace {

AbelianSet ints(std::vector<std::int64_t> v) { return AbelianSet(Group::integers(), std::move(v)); }
AbelianSet fp(std::int64_t p, std::vector<std::int64_t> v) { return AbelianSet(Group::fp(p), std::move(v)); }

AbelianSet random_set(const Group& g, std::int64_t range, std::mt19937_64& rng) {
  std::vector<std::int64_t> v;
  const auto size = 1 + rng() % 6;
  for (std::size_t i = 0; i < size; ++i) v.push_back(static_cast<std::int64_t>(rng() % range));
  return AbelianSet(g, v);
}

std::uint64_t quadruples_by_hand(const AbelianSet& a, const AbelianSet& b) {
  std::uint64_t q = 0;
  const auto& g = a.group();
  for (auto x : a.elements())
    for (auto y : b.elements())
      for (auto x2 : a.elements())
        for (auto y2 : b.elements()) q += g.add(x, y) == g.add(x2, y2);
  return q;
}

}  // namespace

TEST_CASE("set arithmetic examples") {
  CHECK(sumset(ints({0, 1, 2}), ints({0, 1, 2})) == ints({0, 1, 2, 3, 4}));
  CHECK(productset(ints({1, 2, 4}), ints({1, 2, 4})) == ints({1, 2, 4, 8, 16}));
  CHECK(dilate(2, fp(5, {1, 3})) == fp(5, {1, 2}));
  CHECK(difference(fp(5, {0, 1}), fp(5, {1})) == fp(5, {0, 4}));
  CHECK(iterated_sum(ints({0, 1}), 3) == ints({0, 1, 2, 3}));
  CHECK_THROWS_AS(sumset(ints({1}), fp(5, {1})), PreconditionError);
  CHECK_THROWS_AS(productset(AbelianSet(Group::fp_vec(3, 2), {1}), AbelianSet(Group::fp_vec(3, 2), {1})),
                  PreconditionError);
  CHECK_THROWS_AS(AbelianSet(Group::fp(5), {7}), PreconditionError);
}

TEST_CASE("energy examples") {
  const auto a = ints({0, 1, 2});
  CHECK(quadruple_count(a, a) == 19);
  CHECK(energy(a, a) == Rational(81, 19));
  CHECK(Rational(19) >= Rational(81, 5));
  CHECK(quadruple_count(ints({5}), ints({7})) == 1);
  CHECK(energy(ints({5}), ints({7})) == 1);
  CHECK_THROWS_AS(energy(ints({}), a), PreconditionError);
}

TEST_CASE("energy sandwich and Cauchy-Schwarz") {
  std::mt19937_64 rng(1);
  for (const auto& g : {Group::integers(), Group::fp(7), Group::fp_vec(3, 2)}) {
    const std::int64_t range = g.finite() ? g.order() : 20;
    for (int t = 0; t < 200; ++t) {
      const auto a = random_set(g, range, rng), b = random_set(g, range, rng);
      const auto q = quadruple_count(a, b);
      CHECK(q == quadruples_by_hand(a, b));
      const auto e = energy(a, b);
      const auto s = sumset(a, b).size();
      CHECK(e >= Rational(std::max(a.size(), b.size())));
      CHECK(e <= Rational(s));
    }
  }
}

TEST_CASE("Ruzsa triangle inequality") {
  std::mt19937_64 rng(2);
  for (const auto& g : {Group::integers(), Group::fp(11)}) {
    const std::int64_t range = g.finite() ? g.order() : 30;
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_set(g, range, rng), b = random_set(g, range, rng), c = random_set(g, range, rng);
      CHECK(a.size() * difference(b, c).size() <= difference(a, b).size() * difference(a, c).size());
    }
  }
}

TEST_CASE("good lambda") {
  const auto r = find_good_lambda(fp(7, {1, 2}));
  CHECK(r.size == 4);
  CHECK(sumset(fp(7, {1, 2}), dilate(r.lambda, fp(7, {1, 2}))).size() == 4);
  CHECK(r.meets_bound);
  std::vector<std::int64_t> all(7);
  std::iota(all.begin(), all.end(), 0);
  CHECK(find_good_lambda(fp(7, all)).size == 7);
  CHECK(find_good_lambda(fp(7, {3})).size == 1);
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(p));
    for (int t = 0; t < 100; ++t) {
      const auto a = random_set(Group::fp(p), p, rng);
      const auto lam = find_good_lambda(a);
      CHECK(lam.meets_bound);
      CHECK(2 * lam.size >= std::min<std::size_t>(a.size() * a.size(), static_cast<std::size_t>(p)));
    }
  }
}

TEST_CASE("stabilizer") {
  const auto interval = fp(31, {0, 1, 2, 3});
  const auto s = stab(interval, 2);
  CHECK(s.contains(1));
  CHECK(s.contains(30));
  CHECK(stab(interval, Rational(1, 2)).empty());
  CHECK(sumset(interval, interval).size() == 7);
}

TEST_CASE("growth set") {
  const auto g = growth_set(fp(7, {1, 2}));
  CHECK(g.size() == 7);
  CHECK(growth_bound_holds(fp(7, {1, 2}), g));
  CHECK(growth_set(fp(5, {0})) == fp(5, {0}));
  CHECK(growth_set(fp(5, {0, 1, 2, 3, 4})).size() == 5);
}

TEST_CASE("sum-product statistics") {
  const auto s = sum_product_stats(ints({1, 2, 3, 4}));
  CHECK(s.sum == 7);
  CHECK(s.product == 9);
  CHECK(s.max == 9);
  const auto one = sum_product_stats(ints({1}));
  CHECK(one.sum == 1);
  CHECK(one.product == 1);
  CHECK(one.product_difference == 1);
  const auto geo = sum_product_stats(ints({1, 2, 4, 8}));
  CHECK(geo.product == 7);
  CHECK(geo.sum == 10);
}

TEST_CASE("Ruzsa covering") {
  const auto sub = AbelianSet(Group::fp_vec(3, 2), {0, 1, 2});  // the line spanned by e1
  const auto c = ruzsa_cover(sub);
  CHECK(c.b_list.size() == 1);
  CHECK(c.covered);
  CHECK(c.disjoint);
  const auto small = ruzsa_cover(AbelianSet(Group::fp_vec(3, 2), {0, 1}));
  CHECK(small.covered);
  CHECK(small.disjoint);
  CHECK(small.span_size == 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_set(Group::fp_vec(3, 3), 27, rng);
    const auto cov = ruzsa_cover(a);
    CHECK(cov.covered);
    CHECK(cov.disjoint);
  }
}

TEST_CASE("BSG on an arithmetic progression") {
  std::vector<std::int64_t> ap(10);
  std::iota(ap.begin(), ap.end(), 0);
  const auto a = ints(ap);
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) all.emplace_back(i, j);
  const auto r = bsg_extract(a, a, all, 2);
  CHECK(2 * r.a_prime.size() >= 10);
  CHECK(2 * r.b_prime.size() >= 10);
  CHECK(sumset(r.a_prime, r.b_prime).size() <= 4 * r.a_prime.size());
  CHECK(r.report.sum_size == sumset(r.a_prime, r.b_prime).size());
  CHECK(bsg_extract(a, a, all, 2, Rational(1, 4), Exec::serial).a_prime == r.a_prime);
}

TEST_CASE("BSG degenerate and planted cases") {
  std::vector<std::int64_t> ap(10);
  std::iota(ap.begin(), ap.end(), 0);
  const auto a = ints(ap);
  const auto single = bsg_extract(a, a, {{0, 0}}, 2);
  CHECK_FALSE(single.report.note.empty());

  std::mt19937_64 rng(4);
  auto v = ap;
  for (int i = 0; i < 10; ++i) v.push_back(1'000'000 + static_cast<std::int64_t>(rng() % 1'000'000'000));
  const auto mixed = ints(v);
  REQUIRE(mixed.size() == 20);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) edges.emplace_back(i, j);
  const auto r = bsg_extract(mixed, mixed, edges, 2);
  for (auto x : r.a_prime.elements()) CHECK(x < 10);
  for (auto x : r.b_prime.elements()) CHECK(x < 10);
  CHECK_THROWS_AS(bsg_extract(a, a, {}, 2), PreconditionError);
}

TEST_CASE("bad-pair kernel serial and parallel agree") {
  std::mt19937_64 rng(5);
  const std::size_t n = 40;
  std::vector<std::vector<std::uint8_t>> bad(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) bad[i][j] = bad[j][i] = rng() % 3 == 0;
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (auto& l : nbrs)
    for (std::uint32_t v = 0; v < n; ++v)
      if (rng() % 2) l.push_back(v);
  const auto s = kernels::bad_pairs_per_vertex_serial(nbrs, bad);
  CHECK(s == kernels::bad_pairs_per_vertex_omp(nbrs, bad));
  std::uint64_t by_hand = 0;
  for (std::size_t x = 0; x < nbrs[0].size(); ++x)
    for (std::size_t y = x + 1; y < nbrs[0].size(); ++y) by_hand += bad[nbrs[0][x]][nbrs[0][y]];
  CHECK(s[0] == by_hand);
}

TEST_CASE("json round trip") {
  for (const auto& s : {ints({-3, 5}), fp(7, {1, 6}), AbelianSet(Group::z3_vec(2), {0, 4, 8})})
    CHECK(AbelianSet::from_json(s.to_json()) == s);
}
