#include <doctest.h>

#include <random>

#include "polylab/kernels.hpp"
#include "polylab/poly.hpp"

using namespace polylab;

namespace {

MultiPoly make(const FieldSpec& f, std::size_t n, std::initializer_list<std::pair<Exponents, Code>> terms) {
  MultiPoly p(f, n);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

MultiPoly random_poly(const FieldSpec& f, std::size_t n, std::uint32_t d, std::mt19937_64& rng) {
  MultiPoly p(f, n);
  std::uniform_int_distribution<Code> coef(0, static_cast<Code>(f.order() - 1));
  for (const auto& e : monomials_up_to(n, d)) p.add_term(e, coef(rng));
  return p;
}

std::uint64_t naive_zeros(const MultiPoly& f) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < f.n_vars(); ++i) total *= f.spec().order();
  std::uint64_t z = 0;
  for (std::uint64_t i = 0; i < total; ++i) z += f.evaluate(point_at(f.spec().order(), f.n_vars(), i)) == 0;
  return z;
}

}  // namespace

TEST_CASE("evaluate") {
  const auto f3 = FieldSpec::prime(3), f5 = FieldSpec::prime(5);
  CHECK(make(f3, 2, {{{1, 1}, 1}}).evaluate(Point{2, 2}) == 1);
  CHECK(MultiPoly(f3, 2).evaluate(Point{1, 2}) == 0);
  CHECK(make(f5, 2, {{{2, 0}, 1}, {{0, 2}, 1}}).evaluate(Point{1, 2}) == 0);
  // 0^0 = 1
  CHECK(MultiPoly::constant(f5, 2, 3).evaluate(Point{0, 0}) == 3);
  CHECK_THROWS(make(f5, 2, {{{1, 0}, 1}}).evaluate(Point{1}));
}

TEST_CASE("count_zeros examples") {
  const auto f3 = FieldSpec::prime(3);
  CHECK(count_zeros(make(f3, 2, {{{1, 1}, 1}})) == 5);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto f = FieldSpec::builtin(q);
    for (std::size_t n = 1; n <= 3; ++n) {
      std::uint64_t qn1 = 1;
      for (std::size_t i = 1; i < n; ++i) qn1 *= q;
      CHECK(count_zeros(MultiPoly::variable(f, n, 0)) == qn1);
    }
    CHECK(count_zeros(MultiPoly::constant(f, 2, 1)) == 0);
  }
  CHECK_THROWS_AS(count_zeros(MultiPoly(f3, 2)), PreconditionError);
  CHECK_THROWS_AS(count_zeros(MultiPoly::variable(FieldSpec::prime(101), 3, 0), 1000), CapExceeded);
}

TEST_CASE("Schwartz-Zippel on random polynomials") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto f = FieldSpec::builtin(q);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 30; ++trial) {
        const auto d = static_cast<std::uint32_t>(rng() % q);
        auto p = random_poly(f, n, d, rng);
        if (p.is_zero()) continue;
        std::uint64_t qn1 = 1;
        for (std::size_t i = 1; i < n; ++i) qn1 *= q;
        const auto z = count_zeros(p);
        CHECK(z == naive_zeros(p));
        CHECK(z <= static_cast<std::uint64_t>(p.degree()) * qn1);
      }
  }
}

TEST_CASE("count_zeros serial and parallel agree") {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {3, 5, 8, 9}) {
    const auto f = FieldSpec::builtin(q);
    for (int trial = 0; trial < 10; ++trial) {
      auto p = random_poly(f, 3, static_cast<std::uint32_t>(rng() % q), rng);
      if (p.is_zero()) continue;
      CHECK(count_zeros(p, kDefaultEnumerationCap, Exec::serial) == count_zeros(p, kDefaultEnumerationCap, Exec::parallel));
      const auto c = kernels::CompiledPoly::from(p);
      CHECK(kernels::count_zeros_serial(c) == kernels::count_zeros_omp(c));
    }
  }
}

TEST_CASE("vanishing_poly examples") {
  const auto f5 = FieldSpec::prime(5), f3 = FieldSpec::prime(3);
  const std::vector<Point> two{{0, 0}, {1, 1}};
  const auto g = vanishing_poly(f5, 2, two, 1);
  REQUIRE(g);
  CHECK(g->degree() == 1);
  CHECK(g->coefficient({0, 0}) == 0);
  CHECK(g->coefficient({1, 0}) == f5.neg(g->coefficient({0, 1})));
  CHECK(g->coefficient({1, 0}) != 0);

  std::vector<Point> plane;
  for (Code x = 0; x < 3; ++x)
    for (Code y = 0; y < 3; ++y) plane.push_back({x, y});
  CHECK_FALSE(vanishing_poly(f3, 2, plane, 2));
  const auto monos = monomials_up_to(2, 2);
  CHECK(monos.size() == 6);
  CHECK(kernels::rank_mod_p_serial(evaluation_matrix(f3, plane, monos), 3) == 6);

  const auto one = vanishing_poly(f3, 2, std::vector<Point>{}, 0);
  REQUIRE(one);
  CHECK(*one == MultiPoly::constant(f3, 2, 1));
}

TEST_CASE("vanishing_poly exists below the monomial count") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {3, 4, 5, 7}) {
    const auto f = FieldSpec::builtin(q);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::uint32_t d = 0; d <= 3; ++d) {
        const auto limit = binomial(n + d, n);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= q;
        const auto count = std::min<std::uint64_t>(limit - 1, total);
        std::vector<Point> pts;
        for (std::uint64_t i = 0; i < count; ++i) pts.push_back(point_at(q, n, rng() % total));
        const auto g = vanishing_poly(f, n, pts, static_cast<int>(d));
        REQUIRE(g);
        CHECK_FALSE(g->is_zero());
        CHECK(g->degree() <= static_cast<int>(d));
        for (const auto& p : pts) CHECK(g->evaluate(p) == 0);
      }
  }
}

TEST_CASE("restrict_to_line examples") {
  const auto f5 = FieldSpec::prime(5), f3 = FieldSpec::prime(3);
  const auto h = restrict_to_line(make(f5, 2, {{{2, 0}, 1}, {{0, 2}, 1}}), Point{0, 0}, Point{1, 1});
  CHECK(h == UniPoly(f5, {0, 0, 2}));
  const auto h2 = restrict_to_line(make(f3, 2, {{{1, 1}, 1}}), Point{1, 1}, Point{1, 0});
  CHECK(h2 == UniPoly(f3, {1, 1}));
  CHECK_THROWS_AS(restrict_to_line(make(f3, 2, {{{1, 1}, 1}}), Point{1, 1}, Point{0, 0}), PreconditionError);
}

TEST_CASE("restriction, gradient and degree agree") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {3, 5, 7, 9}) {
    const auto f = FieldSpec::builtin(q);
    std::uniform_int_distribution<Code> el(0, static_cast<Code>(q - 1));
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + rng() % 3;
      const auto p = random_poly(f, n, static_cast<std::uint32_t>(rng() % q), rng);
      Point a(n), b(n);
      for (auto& x : a) x = el(rng);
      do {
        for (auto& x : b) x = el(rng);
      } while (std::all_of(b.begin(), b.end(), [](Code c) { return c == 0; }));
      const auto h = restrict_to_line(p, a, b);
      CHECK(h.degree() <= p.degree());
      CHECK(h.coeff(0) == p.evaluate(a));
      const auto grad = gradient(p);
      Code dir = 0;
      for (std::size_t i = 0; i < n; ++i) dir = f.add(dir, f.mul(grad[i].evaluate(a), b[i]));
      CHECK(h.coeff(1) == dir);
      for (Code t = 0; t < q; ++t) {
        Point x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = f.add(a[i], f.mul(t, b[i]));
        CHECK(h.evaluate(t) == p.evaluate(x));
      }
      if (!p.is_zero() && p.top_part().evaluate(b) != 0) CHECK(h.degree() == p.degree());
    }
  }
}

TEST_CASE("gradient examples") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto f = FieldSpec::prime(p);
    Exponents e{p};
    for (const auto& d : gradient(make(f, 1, {{e, 1}}))) CHECK(d.is_zero());
  }
  const auto f5 = FieldSpec::prime(5);
  const auto g = gradient(make(f5, 3, {{{1, 1, 1}, 1}}));
  REQUIRE(g.size() == 3);
  CHECK(g[0] == make(f5, 3, {{{0, 1, 1}, 1}}));
  CHECK(g[1] == make(f5, 3, {{{1, 0, 1}, 1}}));
  CHECK(g[2] == make(f5, 3, {{{1, 1, 0}, 1}}));
  for (const auto& d : gradient(MultiPoly::constant(f5, 2, 4))) CHECK(d.is_zero());
}

TEST_CASE("homogenize") {
  const auto f5 = FieldSpec::prime(5);
  CHECK(homogenize(make(f5, 1, {{{1}, 1}, {{0}, 1}})) == make(f5, 2, {{{0, 1}, 1}, {{1, 0}, 1}}));
  CHECK(homogenize(make(f5, 2, {{{2, 0}, 1}, {{0, 1}, 1}})) == make(f5, 3, {{{0, 2, 0}, 1}, {{1, 0, 1}, 1}}));
  CHECK_THROWS_AS(homogenize(MultiPoly(f5, 2)), PreconditionError);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_poly(f5, 2, 1 + static_cast<std::uint32_t>(rng() % 4), rng);
    if (p.is_zero()) continue;
    const auto h = homogenize(p);
    for (const auto& [e, c] : h.terms()) {
      std::uint32_t deg = 0;
      for (auto x : e) deg += x;
      CHECK(deg == static_cast<std::uint32_t>(p.degree()));
    }
    for (Code x = 0; x < 5; ++x)
      for (Code y = 0; y < 5; ++y) {
        CHECK(h.evaluate(Point{1, x, y}) == p.evaluate(Point{x, y}));
        CHECK(h.evaluate(Point{0, x, y}) == p.top_part().evaluate(Point{x, y}));
      }
  }
}

TEST_CASE("univariate interpolation") {
  std::mt19937_64 rng(13);
  for (std::uint64_t q : {5, 7, 8}) {
    const auto f = FieldSpec::builtin(q);
    std::vector<Code> xs, ys;
    for (Code x = 0; x < q; ++x) {
      xs.push_back(x);
      ys.push_back(static_cast<Code>(rng() % q));
    }
    const auto u = UniPoly::interpolate(f, xs, ys);
    CHECK(u.degree() < static_cast<int>(q));
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(u.evaluate(xs[i]) == ys[i]);
    const std::span<const Code> sx(xs.data() + 1, q - 1), sy(ys.data() + 1, q - 1);
    CHECK(lagrange_evaluate(f, sx, sy, 0) == UniPoly::interpolate(f, sx, sy).evaluate(0));
  }
}

TEST_CASE("text and json forms round trip") {
  const auto f7 = FieldSpec::prime(7);
  const auto p = MultiPoly::parse(f7, 2, "3*x0^2*x1 + 4");
  CHECK(p == make(f7, 2, {{{2, 1}, 3}, {{0, 0}, 4}}));
  CHECK(MultiPoly::parse(f7, 2, p.to_text()) == p);
  CHECK(MultiPoly::from_json(f7, 2, p.to_json()) == p);
  CHECK(MultiPoly::from_json(f7, 2, nlohmann::json::parse(R"([{"e": [2, 1], "c": 3}])")) ==
        make(f7, 2, {{{2, 1}, 3}}));
  CHECK_THROWS(MultiPoly::parse(f7, 2, "x5"));
}

TEST_CASE("monomials and point indexing") {
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(3, 4).size() == binomial(7, 3));
  for (std::uint64_t i = 0; i < 125; ++i) CHECK(point_index(5, point_at(5, 3, i)) == i);
  CHECK(point_at(5, 2, 7) == Point{1, 2});
}
