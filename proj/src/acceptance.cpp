#include "polylab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include "polylab/addcomb.hpp"
#include "polylab/extract.hpp"
#include "polylab/incidence.hpp"
#include "polylab/kakeya.hpp"
#include "polylab/lcc.hpp"
#include "polylab/poly.hpp"
#include "polylab/rng.hpp"
#include "polylab/scaling.hpp"
#include "polylab/sgdesign.hpp"

namespace polylab {

namespace {

using Rng = std::mt19937_64;

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

std::int64_t uniform_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// All k-subsets of {0..p-1}, k in [1, max_size], in lexicographic order.
std::vector<std::vector<std::int64_t>> small_subsets(std::int64_t p, std::size_t max_size) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t)> rec = [&](std::int64_t start) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_size) return;
    for (std::int64_t x = start; x < p; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Z3Vector> z3_subset(unsigned mask, unsigned n) {
  std::vector<Z3Vector> out;
  const unsigned size = n == 1 ? 3 : 9;
  for (unsigned a = 0; a < size; ++a)
    if (mask >> a & 1u) {
      Z3Vector v(n);
      unsigned x = a;
      for (unsigned i = 0; i < n; ++i, x /= 3) v[i] = static_cast<std::uint8_t>(x % 3);
      out.push_back(v);
    }
  return out;
}

// ---------------------------------------------------------------- kakeya

bool kakeya_size(std::uint64_t, RunReport& r, std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u})
    for (std::size_t n : {2u, 3u}) {
      const auto w = build_kakeya(q, n);
      const std::string tag = "kakeya.size.q" + std::to_string(q) + ".n" + std::to_string(n);
      ok &= r.check(tag + ".verified", verify_kakeya(w));
      // |K| <= q^n / 2^(n-1) + 2 q^(n-1)
      const Rational bound = Rational(BigInt(ipow(q, n)), BigInt(ipow(2, n - 1))) + 2 * Rational(BigInt(ipow(q, n - 1)));
      const Rational size = Rational(BigInt(w.points.size()));
      ok &= r.check(tag + ".bound", size <= bound, Tagged::of(size), Tagged::of(bound), "<=");
      os << "q=" << q << ",n=" << n << ":|K|=" << w.points.size() << " ";
    }
  detail = os.str();
  return ok;
}

bool kakeya_certificate(std::uint64_t, RunReport& r, std::string& detail) {
  bool ok = true;
  std::size_t checked = 0;
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u})
    for (std::size_t n : {2u, 3u}) {
      const auto w = build_kakeya(q, n);
      const auto cert = certify_lower_bound(FieldSpec::prime(q), n, w.points);
      const std::string tag = "kakeya.certificate.q" + std::to_string(q) + ".n" + std::to_string(n);
      const auto monos = binomial(n + q - 1, n);
      ok &= r.check(tag + ".rank", cert.rank == monos, Tagged::of_u(cert.rank), Tagged::of_u(monos), "==");
      ok &= r.check(tag + ".factorial", meets_factorial_bound(monos, q, n), Tagged::of_u(monos),
                    Tagged::of(Rational(BigInt(ipow(q, n)), BigInt(n == 2 ? 2 : 6))), ">=");
      ++checked;
    }
  detail = std::to_string(checked) + " (q, n) pairs";
  return ok;
}

// ------------------------------------------------------------------ poly

bool schwartz_zippel(std::uint64_t seed, RunReport& r, std::string& detail) {
  auto rng = make_stream(seed, "acceptance.schwartz_zippel");
  const std::uint32_t qs[] = {2, 3, 4, 5, 7};
  std::uint64_t violations = 0, tested = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint32_t q = qs[uniform_below(rng, 5)];
    const std::size_t n = 1 + uniform_below(rng, 3);
    const auto d = static_cast<std::uint32_t>(uniform_below(rng, q));
    const auto spec = FieldSpec::builtin(q);
    MultiPoly f(spec, n);
    const auto monos = monomials_up_to(n, d);
    for (const auto& mono : monos)
      if (uniform_below(rng, 2)) f.add_term(mono, static_cast<Code>(1 + uniform_below(rng, q - 1)));
    if (f.is_zero()) f.add_term(monos.front(), 1);
    const auto deg = static_cast<std::uint64_t>(f.degree());
    const auto zeros = count_zeros(f);
    const auto bound = deg * ipow(q, n - 1);
    if (zeros > bound) ++violations;
    if (bound > 0) worst = std::max(worst, static_cast<double>(zeros) / static_cast<double>(bound));
    ++tested;
  }
  detail = std::to_string(tested) + " polynomials, worst zeros/bound " + std::to_string(worst);
  r.set_output("schwartz_zippel.worst_ratio", Tagged::of_float(worst));
  return r.check("poly.schwartz_zippel.violations", violations == 0, Tagged::of_u(violations), Tagged::of(0), "==");
}

// --------------------------------------------------------------- extract

bool merger_attack(std::uint64_t, RunReport& r, std::string& detail) {
  const auto spec = FieldSpec::prime(5);
  const auto w = build_kakeya(5, 2);
  const auto nik = nikodym_from_kakeya(w);
  const auto adv = nikodym_adversary(w);
  const auto source = Distribution::uniform(Distribution::field_domain(spec, 2));
  const auto z = merger_distribution(spec, 2, source, adv);
  const Rational pr = probability_of(z, nik.points);
  detail = "Pr[Z in M] = " + format_rational(pr) + ", |M| = " + std::to_string(nik.points.size());
  bool ok = r.check("extract.merger.nikodym_verified", verify_nikodym(nik));
  ok &= r.check("extract.merger.attack", pr >= Rational(4, 5), Tagged::of(pr), Tagged::of(Rational(4, 5)), ">=");
  return ok;
}

bool bias_bound(std::uint64_t, RunReport& r, std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (unsigned n : {1u, 2u}) {
    const auto sweep = bias_sweep(n);
    const std::uint64_t subsets = (n == 1 ? 7u : 511u);
    const std::string tag = "extract.bias.n" + std::to_string(n);
    ok &= r.check(tag + ".pairs", sweep.pairs == subsets * subsets, Tagged::of_u(sweep.pairs),
                  Tagged::of_u(subsets * subsets), "==");
    ok &= r.check(tag + ".violations", sweep.violations == 0, Tagged::of_u(sweep.violations), Tagged::of(0), "==");
    r.set_output(tag + ".worst_ratio", Tagged::of_float(sweep.worst_ratio));
    os << "n=" << n << ": " << sweep.pairs << " pairs, worst " << sweep.worst_ratio << " ";
  }
  detail = os.str();
  return ok;
}

bool foursum(std::uint64_t seed, RunReport& r, std::string& detail) {
  auto rng = make_stream(seed, "acceptance.foursum");
  std::uint64_t failures = 0;
  double slack = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const auto a = z3_subset(static_cast<unsigned>(1 + uniform_below(rng, 511)), 2);
    const auto b = z3_subset(static_cast<unsigned>(1 + uniform_below(rng, 511)), 2);
    const auto rep = foursum_bias_check(a, b);
    if (!rep.holds) ++failures;
    slack = std::min(slack, rep.rhs - rep.lhs);
  }
  detail = "1000 pairs, min rhs - lhs " + std::to_string(slack);
  return r.check("extract.foursum.violations", failures == 0, Tagged::of_u(failures), Tagged::of(0), "==");
}

// ------------------------------------------------------------------- lcc

bool lcc_decoding(std::uint64_t seed, RunReport& r, std::string& detail) {
  const auto spec = FieldSpec::prime(5);
  const RMCode code(spec, 2, 3);
  auto rng = make_stream(seed, "acceptance.lcc.codeword");
  MultiPoly f(spec, 2);
  for (const auto& mono : code.monomials()) f.add_term(mono, static_cast<Code>(uniform_below(rng, 5)));
  const auto word = code.encode(f);

  bool ok = true;
  const auto zero = zero_error_enumeration(code, word);
  ok &= r.check("lcc.decoding.zero_errors.total", zero.total == 25 * 6, Tagged::of_u(zero.total), Tagged::of(150),
                "==");
  ok &= r.check("lcc.decoding.zero_errors.rate", zero.rate() == 1, Tagged::of(zero.rate()), Tagged::of(1), "==");
  const auto one = single_error_enumeration(code, word);
  ok &= r.check("lcc.decoding.one_error.rate", one.rate() >= Rational(5, 6), Tagged::of(one.rate()),
                Tagged::of(Rational(5, 6)), ">=");
  const auto mc = decode_trials(code, word, 100000, 1, seed);
  const double gap = std::abs(to_double(mc.rate()) - to_double(one.rate()));
  ok &= r.check("lcc.decoding.one_error.monte_carlo", gap <= 0.01, Tagged::of_float(gap), Tagged::of_float(0.01),
                "<=");
  r.set_output("lcc.one_error.exact_rate", Tagged::of(one.rate()));
  r.set_output("lcc.one_error.monte_carlo_rate", Tagged::of(mc.rate()));
  detail = "exact " + format_rational(one.rate()) + ", sampled " + std::to_string(to_double(mc.rate()));
  return ok;
}

// --------------------------------------------------------------- addcomb

bool energy_and_growth(std::uint64_t, RunReport& r, std::string& detail) {
  std::uint64_t pairs = 0, energy_fail = 0;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    const auto g = Group::fp(p);
    std::vector<AbelianSet> sets;
    for (auto& s : small_subsets(p, 4)) sets.emplace_back(g, std::move(s));
    for (const auto& a : sets)
      for (const auto& b : sets) {
        const std::uint64_t na = a.size(), nb = b.size();
        const std::uint64_t top = na * na * nb * nb;
        const std::uint64_t q = quadruple_count(a, b);
        const std::uint64_t s = sumset(a, b).size();
        // max(|A|,|B|) <= |A|^2|B|^2 / Q <= |A + B|
        if (!(std::max(na, nb) * q <= top && top <= q * s)) ++energy_fail;
        ++pairs;
      }
  }
  bool ok = r.check("addcomb.energy.violations", energy_fail == 0, Tagged::of_u(energy_fail), Tagged::of(0), "==");
  r.set_output("addcomb.energy.pairs", Tagged::of_u(pairs));

  std::uint64_t sets_checked = 0, good_fail = 0, growth_fail = 0;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    const auto g = Group::fp(p);
    for (auto& elems : small_subsets(p, 5)) {
      const AbelianSet a(g, std::move(elems));
      if (!find_good_lambda(a).meets_bound) ++good_fail;
      if (!growth_bound_holds(a, growth_set(a))) ++growth_fail;
      ++sets_checked;
    }
  }
  ok &= r.check("addcomb.onegood.violations", good_fail == 0, Tagged::of_u(good_fail), Tagged::of(0), "==");
  ok &= r.check("addcomb.growth.violations", growth_fail == 0, Tagged::of_u(growth_fail), Tagged::of(0), "==");
  detail = std::to_string(pairs) + " energy pairs, " + std::to_string(sets_checked) + " sets for the growth lemmas";
  return ok;
}

bool ruzsa_triangle(std::uint64_t seed, RunReport& r, std::string& detail) {
  auto rng = make_stream(seed, "acceptance.ruzsa_triangle");
  const std::int64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  std::uint64_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    Group g = Group::integers();
    std::int64_t lo = -40, hi = 40;
    if (t % 2) {
      g = Group::fp(primes[uniform_below(rng, 11)]);
      lo = 0;
      hi = g.p - 1;
    }
    auto draw = [&] {
      std::vector<std::int64_t> v(1 + uniform_below(rng, 8));
      for (auto& x : v) x = uniform_in(rng, lo, hi);
      return AbelianSet(g, v);
    };
    const auto a = draw(), b = draw(), c = draw();
    const BigInt lhs = BigInt(a.size()) * difference(b, c).size();
    const BigInt rhs = BigInt(difference(a, b).size()) * difference(a, c).size();
    if (lhs > rhs) ++failures;
  }
  detail = "1000 triples over Z and F_p";
  return r.check("addcomb.ruzsa_triangle.violations", failures == 0, Tagged::of_u(failures), Tagged::of(0), "==");
}

bool bsg_constructive(std::uint64_t, RunReport& r, std::string& detail) {
  const std::size_t n = 64;
  struct Instance {
    std::int64_t step, a0, b0;
  };
  const Instance instances[] = {{1, 0, 0}, {3, 5, -7}, {7, 1, 100}};
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) edges.emplace_back(i, j);
  bool ok = true;
  std::ostringstream os;
  for (const auto& inst : instances) {
    std::vector<std::int64_t> av, bv;
    for (std::size_t i = 0; i < n; ++i) {
      av.push_back(inst.a0 + inst.step * static_cast<std::int64_t>(i));
      bv.push_back(inst.b0 + inst.step * static_cast<std::int64_t>(i));
    }
    const AbelianSet a(Group::integers(), av), b(Group::integers(), bv);
    const auto res = bsg_extract(a, b, edges, Rational(2));
    const std::string tag = "addcomb.bsg.step" + std::to_string(inst.step) + ".a" + std::to_string(inst.a0);
    const auto& rep = res.report;
    ok &= r.check(tag + ".a_prime", rep.a_prime * 8 >= n, Tagged::of_u(rep.a_prime), Tagged::of(8), ">=");
    ok &= r.check(tag + ".b_prime", rep.b_prime * 8 >= n, Tagged::of_u(rep.b_prime), Tagged::of(8), ">=");
    ok &= r.check(tag + ".sumset", rep.sum_size <= 8 * rep.a_prime, Tagged::of_u(rep.sum_size),
                  Tagged::of_u(8 * rep.a_prime), "<=");
    r.set_output(tag + ".size_exponent", Tagged::of_float(rep.size_exponent));
    r.set_output(tag + ".sum_exponent", Tagged::of_float(rep.sum_exponent));
    os << "|A'|=" << rep.a_prime << ",|B'|=" << rep.b_prime << ",|A'+B'|=" << rep.sum_size << " ";
  }
  detail = os.str();
  return ok;
}

// ------------------------------------------------------------- incidence

bool incidence_counts(std::uint64_t seed, RunReport& r, std::string& detail) {
  bool ok = true;
  for (std::int64_t m : {2, 3, 4}) {
    const auto g = st_grid(m);
    const auto inc = count_incidences(g.points, g.lines);
    const auto want = ipow(static_cast<std::uint64_t>(m), 4);
    const std::string tag = "incidence.st_grid.m" + std::to_string(m);
    ok &= r.check(tag + ".incidences", inc == want, Tagged::of_u(inc), Tagged::of_u(want), "==");
    ok &= r.check(tag + ".cauchy_schwarz", cs_bounds(inc, g.points.size(), g.lines.size()).both());
  }
  const auto grid = integer_grid(3, 3);
  const auto spanned = spanned_lines(grid);
  const auto rich = rich_lines(grid, 3);
  ok &= r.check("incidence.grid3.rich_lines", rich.size() == 8, Tagged::of_u(rich.size()), Tagged::of(8), "==");
  ok &= r.check("incidence.grid3.spanned_lines", spanned.size() == 20, Tagged::of_u(spanned.size()), Tagged::of(20),
                "==");
  std::vector<Line2> lines;
  for (const auto& s : spanned) lines.push_back(s.line);
  ok &= r.check("incidence.grid3.cauchy_schwarz",
                cs_bounds(count_incidences(grid, lines), grid.size(), lines.size()).both());

  auto rng = make_stream(seed, "acceptance.incidence");
  std::uint64_t cs_fail = 0;
  for (int t = 0; t < 200; ++t) {
    std::set<Point2> pts;
    const std::size_t n = 3 + uniform_below(rng, 10);
    while (pts.size() < n) pts.insert({Rational(uniform_in(rng, -3, 3)), Rational(uniform_in(rng, -3, 3))});
    const std::vector<Point2> p(pts.begin(), pts.end());
    std::vector<Line2> l;
    for (const auto& s : spanned_lines(p))
      if (uniform_below(rng, 2)) l.push_back(s.line);
    if (!cs_bounds(count_incidences(p, l), p.size(), l.size()).both()) ++cs_fail;
  }
  ok &= r.check("incidence.random.cauchy_schwarz", cs_fail == 0, Tagged::of_u(cs_fail), Tagged::of(0), "==");
  detail = "ST grids M=2..4, 3x3 grid, 200 random instances";
  return ok;
}

bool joints(std::uint64_t, RunReport& r, std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (std::int64_t n : {2, 3}) {
    const auto lines = joints_grid(n);
    const auto rep = count_joints(lines);
    const auto want = ipow(static_cast<std::uint64_t>(n), 3);
    const std::string tag = "incidence.joints.n" + std::to_string(n);
    ok &= r.check(tag + ".count", rep.count() == want, Tagged::of_u(rep.count()), Tagged::of_u(want), "==");
    // count <= |L|^(3/2)  <=>  count^2 <= |L|^3
    const std::uint64_t l3 = ipow(lines.size(), 3);
    ok &= r.check(tag + ".bound", rep.count() * rep.count() <= l3, Tagged::of_u(rep.count() * rep.count()),
                  Tagged::of_u(l3), "<=");
    os << "N=" << n << ": " << rep.count() << " joints on " << lines.size() << " lines ";
  }
  detail = os.str();
  return ok;
}

bool distances(std::uint64_t seed, RunReport& r, std::string& detail) {
  auto rng = make_stream(seed, "acceptance.distances");
  std::uint64_t fail = 0, fail_nd = 0;
  Rational tightest = 1000;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 7);
    std::set<Point2> pts;
    while (pts.size() < n)
      pts.insert({Rational(uniform_in(rng, -6, 6), uniform_in(rng, 1, 3)),
                  Rational(uniform_in(rng, -6, 6), uniform_in(rng, 1, 3))});
    const auto st = distance_stats({pts.begin(), pts.end()});
    if (!st.bound_holds) ++fail;
    if (!st.nondegenerate_holds) ++fail_nd;
    tightest = std::min(tightest, Rational(st.distinct_with_zero) - st.lower_bound);
  }
  bool ok = r.check("incidence.distances.violations", fail == 0, Tagged::of_u(fail), Tagged::of(0), "==");
  ok &= r.check("incidence.distances.nondegenerate_violations", fail_nd == 0, Tagged::of_u(fail_nd), Tagged::of(0),
                "==");
  detail = "1000 sets, smallest margin " + format_rational(tightest);
  return ok;
}

// -------------------------------------------------------------- sgdesign

std::vector<std::vector<Code>> projective_vectors(std::uint32_t p, std::size_t dim) {
  std::vector<std::vector<Code>> out;
  const auto total = ipow(p, dim);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    auto v = point_at(p, dim, idx);
    const auto first = std::find_if(v.begin(), v.end(), [](Code x) { return x != 0; });
    if (*first == 1) out.push_back(v);
  }
  return out;
}

std::vector<std::pair<std::string, Configuration>> sg_corpus() {
  std::vector<std::pair<std::string, Configuration>> out;
  out.emplace_back("PG(1,3)", Configuration::finite(FieldSpec::prime(3), projective_vectors(3, 2)));
  out.emplace_back("PG(2,2)", Configuration::finite(FieldSpec::prime(2), projective_vectors(2, 3)));
  out.emplace_back("PG(2,3)", Configuration::finite(FieldSpec::prime(3), projective_vectors(3, 3)));
  {
    std::vector<std::vector<Code>> ag;
    for (Code x = 0; x < 3; ++x)
      for (Code y = 0; y < 3; ++y) ag.push_back({1, x, y});
    out.emplace_back("AG(2,3)", Configuration::finite(FieldSpec::prime(3), ag));
  }
  out.emplace_back("PG(1,5)", Configuration::finite(FieldSpec::prime(5), projective_vectors(5, 2)));
  out.emplace_back("PG(2,5)", Configuration::finite(FieldSpec::prime(5), projective_vectors(5, 3)));
  auto rational_of = [](const std::vector<Point2>& pts) {
    std::vector<std::vector<Rational>> v;
    for (const auto& p : pts) v.push_back({p[0], p[1]});
    return Configuration::rational(v);
  };
  {
    std::vector<std::vector<Rational>> line;
    for (int t = 0; t < 5; ++t) line.push_back({Rational(t), Rational(2 * t)});
    out.emplace_back("collinear-5", Configuration::rational(line));
  }
  out.emplace_back("grid-3x3", rational_of(integer_grid(3, 3)));
  out.emplace_back("grid-4x4", rational_of(integer_grid(4, 4)));
  {
    // vertices, side midpoints and centroid of a triangle
    std::vector<std::vector<Rational>> tri{{0, 0}, {6, 0}, {0, 6}, {3, 0}, {0, 3}, {3, 3}, {2, 2}};
    out.emplace_back("triangle-medians", Configuration::rational(tri));
  }
  {
    std::vector<std::vector<Rational>> line3;
    for (int t = -3; t <= 3; ++t) line3.push_back({Rational(t), Rational(2 * t), Rational(-t, 2)});
    out.emplace_back("collinear-7-space", Configuration::rational(line3));
  }
  return out;
}

bool design_rank(std::uint64_t seed, RunReport& r, std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, config] : sg_corpus()) {
    const auto cover = check_sg(config, 0).coverage;
    const std::size_t n = config.size();
    const Rational delta(BigInt(*std::min_element(cover.begin(), cover.end())), BigInt(n));
    const auto res = design_from_config(config, delta);
    const std::string tag = "sgdesign.rank." + name;
    ok &= r.check(tag + ".annihilates", res.annihilates);
    ok &= r.check(tag + ".rank_bound", Rational(res.rank) >= res.bound, Tagged::of_u(res.rank), Tagged::of(res.bound),
                  ">=");
    ok &= r.check(tag + ".rank_vs_dimension", res.rank + res.config_rank <= n,
                  Tagged::of_u(res.rank + res.config_rank), Tagged::of_u(n), "<=");
    ok &= r.check(tag + ".row_support", res.params.q == 3, Tagged::of_u(res.params.q), Tagged::of(3), "==");
    ok &= r.check(tag + ".pair_cap", res.params.t <= 6, Tagged::of_u(res.params.t), Tagged::of(6), "<=");
    // columns carry at least 3(floor(delta n) - 1) triples
    const auto need = 3 * (static_cast<std::size_t>(BigInt(delta * n).convert_to<std::int64_t>()) - 1);
    ok &= r.check(tag + ".column_support", res.params.k >= need, Tagged::of_u(res.params.k), Tagged::of_u(need), ">=");
    os << name << ":rank " << res.rank << " ";
  }

  auto rng = make_stream(seed, "acceptance.diag_rank");
  std::uint64_t fail = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 5);
    const Rational large(uniform_in(rng, 2, 6));
    const Rational small = large * Rational(uniform_in(rng, 0, 11), 12);
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = (uniform_below(rng, 2) ? 1 : -1) * (large + Rational(uniform_in(rng, 0, 4), 2));
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = small * Rational(uniform_in(rng, -4, 4), 4);
    }
    const Rational bound = diag_rank_bound(m, large, small);
    if (Rational(exact_rank(m)) < bound) ++fail;
  }
  ok &= r.check("sgdesign.diag_rank.violations", fail == 0, Tagged::of_u(fail), Tagged::of(0), "==");
  detail = os.str() + "; 1000 diagonal-dominant matrices";
  return ok;
}

bool sinkhorn(std::uint64_t seed, RunReport& r, std::string& detail) {
  bool ok = true;
  const RealMatrix tri{{1, 1}, {0, 1}};
  const auto s = sinkhorn_scale(tri, 1e-6);
  const auto scaled = apply_scaling(tri, s);
  ok &= r.check("sgdesign.sinkhorn.upper_triangular.eps", s.achieved_eps <= 1e-6, Tagged::of_float(s.achieved_eps),
                Tagged::of_float(1e-6), "<=");
  // rows and columns within eps of 1 force the off-diagonal entry below 2 eps
  ok &= r.check("sgdesign.sinkhorn.upper_triangular.offdiag", scaled[0][1] <= 2e-6, Tagged::of_float(scaled[0][1]),
                Tagged::of_float(2e-6), "<=");
  r.set_output("sinkhorn.upper_triangular.iterations", Tagged::of_u(s.iterations));

  auto rng = make_stream(seed, "acceptance.scaling");
  std::uniform_real_distribution<double> entry(0.1, 2.0), coord(-1.0, 1.0);
  const std::pair<std::size_t, std::size_t> shapes[] = {{2, 2}, {3, 3}, {4, 4}, {5, 5}, {4, 2},
                                                        {6, 3}, {6, 2}, {3, 3}, {8, 4}, {2, 1}};
  double worst_entry = 0.0, worst_grad = 0.0;
  bool converged = true;
  for (const auto& [m, n] : shapes) {
    RealMatrix b(m, std::vector<double>(n));
    for (auto& row : b)
      for (auto& x : row) x = entry(rng);
    const auto sk = sinkhorn_scale(b, 1e-13);
    const double k = static_cast<double>(m / n);
    const auto pot = scale_by_potential(b, std::vector<double>(m, 1.0), std::vector<double>(n, k), 1.0, 1e-12);
    converged = converged && sk.converged && pot.converged;
    const auto a1 = apply_scaling(b, sk), a2 = apply_scaling(b, pot);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) worst_entry = std::max(worst_entry, std::abs(a1[i][j] - a2[i][j]));

    const ScalingPotential f(b, std::vector<double>(m, 1.0), std::vector<double>(n, k));
    std::vector<double> z(m + n);
    for (auto& x : z) x = coord(rng);
    const auto g = f.gradient(z);
    for (std::size_t d = 0; d < z.size(); ++d) {
      auto zp = z, zm = z;
      zp[d] += 1e-5;
      zm[d] -= 1e-5;
      worst_grad = std::max(worst_grad, std::abs((f.value(zp) - f.value(zm)) / 2e-5 - g[d]));
    }
  }
  ok &= r.check("sgdesign.potential.converged", converged);
  ok &= r.check("sgdesign.potential.agreement", worst_entry <= 1e-6, Tagged::of_float(worst_entry),
                Tagged::of_float(1e-6), "<=");
  ok &= r.check("sgdesign.potential.gradient", worst_grad <= 1e-6, Tagged::of_float(worst_grad),
                Tagged::of_float(1e-6), "<=");
  std::ostringstream os;
  os << "triangular: " << s.iterations << " sweeps; entry gap " << worst_entry << "; gradient gap " << worst_grad;
  detail = os.str();
  return ok;
}

using Runner = bool (*)(std::uint64_t, RunReport&, std::string&);

struct Criterion {
  CriterionInfo info;
  Runner run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {{1, "kakeya.size", "Kakeya construction size", 5000}, kakeya_size},
      {{2, "kakeya.certificate", "Kakeya lower-bound certificate", 30000}, kakeya_certificate},
      {{3, "poly.schwartz_zippel", "Zero counts of random polynomials", 30000}, schwartz_zippel},
      {{4, "extract.merger", "Merger attack from a Nikodym set", 1000}, merger_attack},
      {{5, "extract.bias", "Exhaustive bias bound over Z_3^2", 60000}, bias_bound},
      {{6, "extract.foursum", "Four-sum bias comparison", 60000}, foursum},
      {{7, "lcc.decoding", "Reed-Muller local decoding", 30000}, lcc_decoding},
      {{8, "addcomb.energy", "Energy bounds and growth lemmas", 120000}, energy_and_growth},
      {{9, "addcomb.ruzsa", "Ruzsa triangle inequality", 10000}, ruzsa_triangle},
      {{10, "addcomb.bsg", "Constructive BSG on progressions", 10000}, bsg_constructive},
      {{11, "incidence.lines", "Point-line incidences", 5000}, incidence_counts},
      {{12, "incidence.joints", "Joints on the cube grid", 5000}, joints},
      {{13, "incidence.distances", "Distinct distances against Q(P)", 60000}, distances},
      {{14, "sgdesign.rank", "Design-matrix rank bounds", 60000}, design_rank},
      {{15, "sgdesign.scaling", "Sinkhorn and potential scaling", 30000}, sinkhorn},
  };
  return all;
}

bool selected(const CriterionInfo& info, std::string_view filter) {
  if (filter.empty()) return true;
  if (std::to_string(info.id) == filter) return true;
  return info.key.find(filter) != std::string::npos;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> v;
    for (const auto& c : criteria()) v.push_back(c.info);
    return v;
  }();
  return infos;
}

bool AcceptanceRun::ok() const {
  for (const auto& r : results)
    if (!r.passed || !r.within_budget) return false;
  return true;
}

AcceptanceRun run_acceptance(std::uint64_t seed, std::string_view filter, std::ostream* log) {
  AcceptanceRun run{RunReport("suite acceptance", seed), {}};
  run.report.add_input("filter", filter);
  for (const auto& c : criteria()) {
    if (!selected(c.info, filter)) continue;
    CriterionResult res;
    res.info = c.info;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      res.passed = c.run(seed, run.report, res.detail);
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
      run.report.check(c.info.key + ".completed", false);
    }
    res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    res.within_budget = res.elapsed_ms <= c.info.budget_ms;
    run.report.set_output("criterion." + (c.info.id < 10 ? "0" + std::to_string(c.info.id) : std::to_string(c.info.id)) +
                              "." + c.info.key,
                          nlohmann::json(res.passed ? "pass" : "fail"));
    if (log) {
      *log << (res.passed && res.within_budget ? "PASS" : "FAIL") << "  [" << c.info.id << "] " << c.info.key << "  "
           << c.info.title << "  (" << static_cast<long long>(res.elapsed_ms) << " ms / budget "
           << static_cast<long long>(c.info.budget_ms) << " ms)";
      if (!res.within_budget) *log << "  over budget";
      *log << "\n      " << res.detail << "\n";
    }
    run.results.push_back(std::move(res));
  }
  return run;
}

}  // namespace polylab
