#include "polylab/kakeya.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polylab/kernels.hpp"
#include "polylab/lcc.hpp"
#include "polylab/linalg.hpp"
#include "polylab/rational.hpp"

namespace polylab {

namespace {

std::uint64_t space_size(std::uint64_t q, std::size_t n, std::uint64_t cap) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < n; ++i) {
    s *= q;
    if (s > cap) throw CapExceeded("q^n exceeds enumeration cap");
  }
  return s;
}

FieldSpec odd_prime_field(std::uint32_t q) {
  if (q % 2 == 0 || !is_prime(q))
    throw PreconditionError("the quadratic construction needs an odd prime q");
  return FieldSpec::prime(q);
}

bool line_inside(const FieldSpec& spec, const std::set<Point>& pts, const Point& base, const Point& dir) {
  Point z(base.size());
  for (Code t = 0; t < spec.order(); ++t) {
    for (std::size_t k = 0; k < base.size(); ++k) z[k] = spec.add(base[k], spec.mul(t, dir[k]));
    if (!pts.count(z)) return false;
  }
  return true;
}

void check_points(const FieldSpec& spec, std::size_t n, const std::vector<Point>& pts) {
  for (const auto& p : pts) {
    if (p.size() != n) throw PreconditionError("point arity mismatch");
    for (auto c : p)
      if (c >= spec.order()) throw PreconditionError("coordinate out of range");
  }
}

}  // namespace

std::vector<Point> kakeya_core(std::uint32_t q, std::size_t n) {
  if (n < 2) throw PreconditionError("dimension must be at least 2");
  const auto spec = odd_prime_field(q);
  const Code quarter = spec.inv(spec.from_int(4));
  const std::uint64_t slices = space_size(q, n - 1, kDefaultEnumerationCap);
  std::set<Point> out;
  for (std::uint64_t vi = 0; vi < slices; ++vi) {
    const Point v = point_at(q, n - 1, vi);
    for (Code t = 0; t < q; ++t) {
      Point p(n);
      for (std::size_t i = 0; i + 1 < n; ++i)
        p[i] = spec.add(spec.mul(spec.mul(v[i], v[i]), quarter), spec.mul(v[i], t));
      p[n - 1] = t;
      out.insert(std::move(p));
    }
  }
  return {out.begin(), out.end()};
}

KakeyaWitness build_kakeya(std::uint32_t q, std::size_t n, std::uint64_t cap) {
  const auto spec = odd_prime_field(q);
  space_size(q, n, cap);
  const Code quarter = spec.inv(spec.from_int(4));
  std::set<Point> pts;
  for (auto& p : kakeya_core(q, n)) pts.insert(std::move(p));

  KakeyaWitness w{spec, n, {}, {}};
  for (const auto& dir : projective_directions(spec, n)) {
    Point base(n, 0);
    if (dir[n - 1] != 0) {
      // scale to last coordinate 1: the core line with v = b
      const Code s = spec.inv(dir[n - 1]);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Code b = spec.mul(dir[i], s);
        base[i] = spec.mul(spec.mul(b, b), quarter);
      }
    } else {
      for (Code t = 0; t < q; ++t) {
        Point z(n);
        for (std::size_t k = 0; k < n; ++k) z[k] = spec.mul(t, dir[k]);
        pts.insert(std::move(z));
      }
    }
    w.base_of.emplace(dir, std::move(base));
  }
  w.points.assign(pts.begin(), pts.end());
  return w;
}

bool verify_kakeya(const KakeyaWitness& w, std::uint64_t cap) {
  space_size(w.spec.order(), w.n, cap);
  check_points(w.spec, w.n, w.points);
  const std::set<Point> pts(w.points.begin(), w.points.end());
  for (const auto& dir : projective_directions(w.spec, w.n)) {
    auto it = w.base_of.find(dir);
    if (it == w.base_of.end() || it->second.size() != w.n) return false;
    if (!line_inside(w.spec, pts, it->second, dir)) return false;
  }
  return true;
}

std::optional<KakeyaWitness> find_kakeya_witness(const FieldSpec& spec, std::size_t n, std::vector<Point> points,
                                                 std::uint64_t cap) {
  space_size(spec.order(), n, cap);
  check_points(spec, n, points);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::set<Point> pts(points.begin(), points.end());
  KakeyaWitness w{spec, n, points, {}};
  for (const auto& dir : projective_directions(spec, n)) {
    auto hit = std::find_if(points.begin(), points.end(),
                            [&](const Point& y) { return line_inside(spec, pts, y, dir); });
    if (hit == points.end()) return std::nullopt;
    w.base_of.emplace(dir, *hit);
  }
  return w;
}

NikodymWitness nikodym_from_kakeya(const KakeyaWitness& w, std::uint64_t cap) {
  if (!verify_kakeya(w, cap)) throw PreconditionError("not a valid Kakeya witness");
  const auto& spec = w.spec;
  std::set<Point> m;
  for (const auto& x : w.points)
    for (Code t = 0; t < spec.order(); ++t) {
      Point z(w.n);
      for (std::size_t k = 0; k < w.n; ++k) z[k] = spec.mul(t, x[k]);
      m.insert(std::move(z));
    }
  NikodymWitness out{spec, w.n, {m.begin(), m.end()}, {}};
  // For z outside M the Kakeya line y + s z gives z + u y = u (y + z/u) in M.
  const std::uint64_t total = space_size(spec.order(), w.n, cap);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Point z = point_at(spec.order(), w.n, idx);
    if (m.count(z)) continue;
    out.line_of.emplace(z, w.base_of.at(canonical_direction(spec, z)));
  }
  return out;
}

bool verify_nikodym(const NikodymWitness& w, std::uint64_t cap) {
  const auto& spec = w.spec;
  const std::uint64_t total = space_size(spec.order(), w.n, cap);
  check_points(spec, w.n, w.points);
  const std::set<Point> pts(w.points.begin(), w.points.end());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Point z = point_at(spec.order(), w.n, idx);
    if (pts.count(z)) continue;
    auto it = w.line_of.find(z);
    if (it == w.line_of.end()) return false;
    const Point& x = it->second;
    if (x.size() != w.n || std::all_of(x.begin(), x.end(), [](Code c) { return c == 0; })) return false;
    Point y(w.n);
    for (Code t = 1; t < spec.order(); ++t) {
      for (std::size_t k = 0; k < w.n; ++k) y[k] = spec.add(z[k], spec.mul(t, x[k]));
      if (!pts.count(y)) return false;
    }
  }
  return true;
}

LowerBoundCertificate certify_lower_bound(const FieldSpec& spec, std::size_t n, const std::vector<Point>& points,
                                          Exec exec) {
  if (!find_kakeya_witness(spec, n, points)) throw PreconditionError("point set is not a Kakeya set");
  const auto q = static_cast<std::uint32_t>(spec.order());
  const auto monos = monomials_up_to(n, q - 1);
  auto rows = evaluation_matrix(spec, points, monos);
  LowerBoundCertificate cert;
  cert.monomial_count = monos.size();
  if (spec.is_prime_field()) {
    cert.rank = exec == Exec::serial ? kernels::rank_mod_p_serial(std::move(rows), q)
                                     : kernels::rank_mod_p_omp(std::move(rows), q);
  } else {
    cert.rank = matrix_rank(FiniteField{spec}, std::move(rows));
  }
  if (cert.rank != cert.monomial_count)
    throw std::logic_error("evaluation matrix on a Kakeya set lost column rank");
  cert.implied_lower_bound = cert.monomial_count;
  return cert;
}

bool meets_factorial_bound(std::uint64_t count, std::uint64_t q, std::size_t n) {
  BigInt lhs = count, rhs = 1;
  for (std::size_t i = 2; i <= n; ++i) lhs *= i;
  for (std::size_t i = 0; i < n; ++i) rhs *= q;
  return lhs >= rhs;
}

namespace {

std::string key_of(const Point& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  return os.str();
}

Point point_of_key(const std::string& s) {
  Point p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) p.push_back(static_cast<Code>(std::stoul(part)));
  return p;
}

}  // namespace

nlohmann::json to_json(const KakeyaWitness& w) {
  nlohmann::json base = nlohmann::json::object();
  for (const auto& [d, y] : w.base_of) base[key_of(d)] = y;
  return {{"q", w.spec.order()}, {"n", w.n}, {"points", w.points}, {"base_of", base}};
}

KakeyaWitness kakeya_from_json(const nlohmann::json& j) {
  const auto q = j.at("q").get<std::uint32_t>();
  KakeyaWitness w{FieldSpec::prime(q), j.at("n").get<std::size_t>(), j.at("points").get<std::vector<Point>>(), {}};
  std::sort(w.points.begin(), w.points.end());
  w.points.erase(std::unique(w.points.begin(), w.points.end()), w.points.end());
  check_points(w.spec, w.n, w.points);
  if (j.contains("base_of"))
    for (const auto& [k, v] : j.at("base_of").items()) {
      Point d = point_of_key(k);
      if (d.size() != w.n) throw PreconditionError("direction arity mismatch");
      w.base_of.emplace(canonical_direction(w.spec, d), v.get<Point>());
    }
  return w;
}

}  // namespace polylab
