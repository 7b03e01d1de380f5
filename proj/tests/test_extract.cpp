#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "polylab/extract.hpp"
#include "polylab/kernels.hpp"

using namespace polylab;

namespace {

std::vector<Z3Vector> z3_all(unsigned n) {
  std::vector<Z3Vector> out;
  const unsigned size = n == 1 ? 3 : 9;
  for (unsigned a = 0; a < size; ++a) {
    Z3Vector v(n);
    unsigned x = a;
    for (unsigned i = 0; i < n; ++i, x /= 3) v[i] = static_cast<std::uint8_t>(x % 3);
    out.push_back(v);
  }
  return out;
}

double bias_by_hand(const std::vector<Z3Vector>& a, const std::vector<Z3Vector>& b) {
  const std::complex<double> w = std::polar(1.0, 2 * M_PI / 3);
  std::complex<double> s = 0;
  for (const auto& x : a)
    for (const auto& y : b) {
      unsigned ip = 0;
      for (std::size_t i = 0; i < x.size(); ++i) ip += x[i] * y[i];
      s += std::pow(w, static_cast<int>(ip % 3));
    }
  return std::abs(s) / static_cast<double>(a.size() * b.size());
}

}  // namespace

TEST_CASE("min_entropy") {
  CHECK(min_entropy(Distribution::uniform(Distribution::index_domain(8))) == doctest::Approx(3.0));
  CHECK(min_entropy(Distribution::exact(Distribution::index_domain(3), {1, 0, 0})) == doctest::Approx(0.0));
  CHECK(min_entropy(Distribution::uniform(Distribution::index_domain(3))) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("distributions validate their probabilities") {
  CHECK_THROWS(Distribution::exact(Distribution::index_domain(2), {Rational(1, 2), Rational(1, 3)}));
  CHECK_THROWS(Distribution::exact(Distribution::index_domain(2), {Rational(3, 2), Rational(-1, 2)}));
  CHECK_THROWS(Distribution::floating(Distribution::index_domain(2), {0.5, 0.6}));
  const auto d = Distribution::exact(Distribution::index_domain(3), {Rational(1, 3), Rational(1, 6), Rational(1, 2)});
  const auto back = Distribution::from_json(d.to_json());
  CHECK(back.exact_probs() == d.exact_probs());
  CHECK(back.domain() == d.domain());
}

TEST_CASE("statistical distance") {
  const auto dom = Distribution::index_domain(2);
  const auto half = Distribution::uniform(dom);
  const auto mass = Distribution::exact(dom, {1, 0});
  const auto other = Distribution::exact(dom, {0, 1});
  CHECK(statistical_distance(half, half) == 0.0);
  CHECK(statistical_distance(mass, other) == doctest::Approx(1.0));
  CHECK(statistical_distance_exact(half, mass) == Rational(1, 2));
  CHECK_THROWS(statistical_distance(half, Distribution::uniform(Distribution::index_domain(3))));

  std::mt19937_64 rng(1);
  auto random_dist = [&] {
    std::vector<Rational> p(5);
    std::int64_t total = 0;
    std::vector<std::int64_t> w(5);
    for (auto& x : w) total += (x = static_cast<std::int64_t>(rng() % 10) + 1);
    for (std::size_t i = 0; i < 5; ++i) p[i] = Rational(w[i], total);
    return Distribution::exact(Distribution::index_domain(5), p);
  };
  for (int t = 0; t < 200; ++t) {
    const auto a = random_dist(), b = random_dist(), c = random_dist();
    CHECK(statistical_distance_exact(a, c) <= statistical_distance_exact(a, b) + statistical_distance_exact(b, c));
    CHECK(statistical_distance_exact(a, b) == statistical_distance_exact(b, a));
  }
}

TEST_CASE("closeness to min-entropy") {
  CHECK(closeness_to_min_entropy_exact(Distribution::uniform(Distribution::index_domain(8)), 3) == 0);
  CHECK(closeness_to_min_entropy_exact(Distribution::exact(Distribution::index_domain(4), {1, 0, 0, 0}), 1) ==
        Rational(1, 2));
  CHECK(closeness_to_min_entropy(Distribution::uniform(Distribution::index_domain(2)), 2.0) == 1.0);

  // brute force: min over a grid of the simplex of TV(P, Q) with max Q <= 2^-k
  std::mt19937_64 rng(2);
  const int steps = 24;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> w(4);
    std::int64_t total = 0;
    for (auto& x : w) total += (x = static_cast<std::int64_t>(rng() % 12));
    if (total == 0) continue;
    std::vector<double> p(4);
    std::vector<Rational> pr(4);
    for (int i = 0; i < 4; ++i) {
      pr[i] = Rational(w[i], total);
      p[i] = static_cast<double>(w[i]) / static_cast<double>(total);
    }
    const auto d = Distribution::exact(Distribution::index_domain(4), pr);
    for (unsigned k : {1u, 2u}) {
      const double cap = std::ldexp(1.0, -static_cast<int>(k));
      double best = 1.0;
      for (int a = 0; a <= steps; ++a)
        for (int b = 0; a + b <= steps; ++b)
          for (int c = 0; a + b + c <= steps; ++c) {
            const double q[4] = {a / double(steps), b / double(steps), c / double(steps),
                                 (steps - a - b - c) / double(steps)};
            if (*std::max_element(q, q + 4) > cap + 1e-12) continue;
            double tv = 0;
            for (int i = 0; i < 4; ++i) tv += std::abs(p[i] - q[i]);
            best = std::min(best, tv / 2);
          }
      const double exact = to_double(closeness_to_min_entropy_exact(d, k));
      CHECK(exact <= best + 1e-12);
      CHECK(best <= exact + 4.0 / steps);
    }
    // smaller k never needs a larger epsilon
    CHECK(closeness_to_min_entropy_exact(d, 1) <= closeness_to_min_entropy_exact(d, 2));
  }
}

TEST_CASE("merger with the identity adversary, q = 3, n = 1") {
  const auto f = FieldSpec::prime(3);
  const auto dom = Distribution::field_domain(f, 1);
  const AdversaryMap id{{0, 1, 2}};
  const auto z = merger_distribution(f, 1, Distribution::uniform(dom), id);
  std::vector<int> count(3, 0);
  for (Code x = 0; x < 3; ++x)
    for (Code a = 0; a < 3; ++a)
      for (Code b = 0; b < 3; ++b) ++count[f.add(f.mul(a, x), f.mul(b, x))];
  for (std::size_t i = 0; i < 3; ++i) CHECK(z.exact_prob(i) == Rational(count[i], 27));
}

TEST_CASE("Nikodym attack on the merger") {
  const auto w = build_kakeya(5, 2);
  const auto nik = nikodym_from_kakeya(w);
  const auto f = FieldSpec::prime(5);
  const auto src = Distribution::uniform(Distribution::field_domain(f, 2));
  const auto adv = nikodym_adversary(w);
  const auto z = merger_distribution(f, 2, src, adv);
  CHECK(probability_of(z, nik.points) >= Rational(4, 5));
  CHECK(merger_distribution(f, 2, src, adv, kDefaultEnumerationCap, Exec::serial).exact_probs() == z.exact_probs());
  CHECK(kernels::merger_counts_serial(f, 2, adv.table) == kernels::merger_counts_omp(f, 2, adv.table));
}

TEST_CASE("point-mass sources give at most q^2 outputs") {
  std::mt19937_64 rng(4);
  for (std::uint32_t q : {3u, 5u}) {
    const auto f = FieldSpec::prime(q);
    const auto dom = Distribution::field_domain(f, 3);
    for (int trial = 0; trial < 10; ++trial) {
      AdversaryMap adv;
      for (std::size_t i = 0; i < dom.size(); ++i) adv.table.push_back(static_cast<std::uint32_t>(rng() % dom.size()));
      std::vector<Rational> p(dom.size(), 0);
      p[rng() % dom.size()] = 1;
      const auto z = merger_distribution(f, 3, Distribution::exact(dom, p), adv);
      CHECK(z.support_size() <= q * q);
    }
  }
}

TEST_CASE("BIW growth") {
  const auto f16 = FieldSpec::builtin(16);
  std::vector<Code> sub;
  for (Code x = 0; x < 16; ++x)
    if (f16.pow(x, 4) == x) sub.push_back(x);
  REQUIRE(sub.size() == 4);
  CHECK(biw_growth(f16, sub, sub, sub).size == 4);
  CHECK(biw_growth(FieldSpec::prime(7), {1, 2}, {1, 2}, {1, 2}).size == 5);
  std::mt19937_64 rng(6);
  const auto f13 = FieldSpec::prime(13);
  for (int t = 0; t < 50; ++t) {
    std::vector<Code> a, b, c;
    for (Code x = 0; x < 13; ++x) {
      if (rng() % 3 == 0) a.push_back(x);
      if (rng() % 3 == 0) b.push_back(x);
      if (rng() % 3 == 0) c.push_back(x);
    }
    if (a.empty() || b.empty() || c.empty()) continue;
    CHECK(biw_growth(f13, a, b, c).size >= a.size());
  }
  CHECK_THROWS(biw_growth(f13, {}, {1}, {1}));
}

TEST_CASE("bias examples") {
  const auto z3 = z3_all(1);
  CHECK(bias(z3, z3).value == doctest::Approx(1.0 / 3));
  CHECK(bias({{0}}, {{0}}).value == doctest::Approx(1.0));
  CHECK(bias({{1}}, z3).value == doctest::Approx(0.0));
  CHECK(bias({{1}}, z3).sum.norm() == 0);
  CHECK_THROWS(bias({}, z3));
}

TEST_CASE("bias bound on random subsets of Z_3^2") {
  std::mt19937_64 rng(8);
  const auto all = z3_all(2);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Z3Vector> a, b;
    const unsigned ma = 1 + static_cast<unsigned>(rng() % 511), mb = 1 + static_cast<unsigned>(rng() % 511);
    for (unsigned i = 0; i < 9; ++i) {
      if (ma >> i & 1u) a.push_back(all[i]);
      if (mb >> i & 1u) b.push_back(all[i]);
    }
    const auto r = bias(a, b);
    CHECK(r.value == doctest::Approx(bias_by_hand(a, b)).epsilon(1e-9));
    CHECK(r.within_bound);
    CHECK(r.value <= std::sqrt(9.0 / static_cast<double>(a.size() * b.size())) + 1e-12);
  }
}

TEST_CASE("bias sweep serial and parallel agree") {
  const auto s = kernels::bias_sweep_serial(1);
  CHECK(s == kernels::bias_sweep_omp(1));
  CHECK(s.pairs == 49);
  CHECK(s.violations == 0);
}

TEST_CASE("four-sum bias") {
  const auto one = foursum_bias_check({{0}}, {{0}});
  CHECK(one.lhs == doctest::Approx(1.0));
  CHECK(one.rhs == doctest::Approx(1.0));
  CHECK(one.holds);
  const auto zero = foursum_bias_check({{1}}, z3_all(1));
  CHECK(zero.lhs == doctest::Approx(0.0));
  CHECK(zero.rhs >= 0.0);
  std::mt19937_64 rng(10);
  auto all = z3_all(2);
  for (int t = 0; t < 200; ++t) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Z3Vector> a(all.begin(), all.begin() + 3);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Z3Vector> b(all.begin(), all.begin() + 3);
    CHECK(foursum_bias_check(a, b).holds);
  }
}

TEST_CASE("Bourgain source") {
  const auto s1 = bourgain_source(1);
  CHECK(std::set<Z3Vector>(s1.begin(), s1.end()) == std::set<Z3Vector>{{0, 0}, {1, 1}, {2, 1}});
  const auto s2 = bourgain_source(2);
  CHECK(s2.size() == 9);
  CHECK(std::set<Z3Vector>(s2.begin(), s2.end()).size() == 9);
  for (const auto& v : s2) CHECK(v.size() == 4);
  CHECK(bourgain_source(3).size() == 27);
}
