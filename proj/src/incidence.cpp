#include "polylab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "polylab/linalg.hpp"

namespace polylab {

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw PreconditionError("expected an integer or a rational string");
}

std::size_t points_on_from_pairs(std::size_t pairs) {
  // k (k - 1) / 2 = pairs
  std::size_t k = 2;
  while (k * (k - 1) / 2 < pairs) ++k;
  return k;
}

}  // namespace

// ---------------------------------------------------------------- lines

Line2 Line2::make(Rational a, Rational b, Rational c) {
  if (a == 0 && b == 0) throw PreconditionError("line needs (a, b) != 0");
  const Rational s = a != 0 ? a : b;
  return {a / s, b / s, c / s};
}

Line2 Line2::through(const Point2& p, const Point2& q) {
  if (p == q) throw PreconditionError("line through a repeated point");
  const Rational a = q[1] - p[1];
  const Rational b = p[0] - q[0];
  return make(a, b, -(a * p[0] + b * p[1]));
}

bool operator<(const Line2& x, const Line2& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

Line3 Line3::make(const Point3& base, const Point3& dir) {
  std::size_t k = 0;
  while (k < 3 && dir[k] == 0) ++k;
  if (k == 3) throw PreconditionError("line needs a nonzero direction");
  Line3 l;
  for (std::size_t i = 0; i < 3; ++i) l.dir[i] = dir[i] / dir[k];
  const Rational shift = base[k];
  for (std::size_t i = 0; i < 3; ++i) l.base[i] = base[i] - shift * l.dir[i];
  return l;
}

bool Line3::contains(const Point3& p) const {
  std::size_t k = 0;
  while (dir[k] == 0) ++k;
  const Rational t = p[k] - base[k];
  for (std::size_t i = 0; i < 3; ++i)
    if (base[i] + t * dir[i] != p[i]) return false;
  return true;
}

bool operator<(const Line3& x, const Line3& y) {
  if (x.dir != y.dir) return x.dir < y.dir;
  return x.base < y.base;
}

// ------------------------------------------------------------ incidences

std::uint64_t count_incidences(const std::vector<Point2>& points, const std::vector<Line2>& lines) {
  std::uint64_t count = 0;
  for (const auto& l : lines)
    for (const auto& p : points)
      if (l.contains(p)) ++count;
  return count;
}

CsCheck cs_bounds(std::uint64_t incidences, std::uint64_t n_points, std::uint64_t n_lines) {
  // I <= 2(X sqrt(Y) + Y)  <=>  I <= 2Y or (I - 2Y)^2 <= 4 X^2 Y
  auto holds = [&](std::uint64_t x, std::uint64_t y) {
    const BigInt i = incidences;
    const BigInt two_y = BigInt(2) * y;
    if (i <= two_y) return true;
    const BigInt excess = i - two_y;
    return excess * excess <= BigInt(4) * x * x * y;
  };
  return {holds(n_points, n_lines), holds(n_lines, n_points)};
}

std::vector<SpannedLine> spanned_lines(const std::vector<Point2>& points) {
  std::map<Line2, std::size_t> pairs;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw PreconditionError("repeated point");
      ++pairs[Line2::through(points[i], points[j])];
    }
  std::vector<SpannedLine> out;
  out.reserve(pairs.size());
  for (const auto& [line, c] : pairs) out.push_back({line, points_on_from_pairs(c)});
  return out;
}

std::vector<Line2> rich_lines(const std::vector<Point2>& points, std::size_t k) {
  if (k < 2) throw PreconditionError("rich_lines needs k >= 2");
  std::vector<Line2> out;
  for (const auto& s : spanned_lines(points))
    if (s.points >= k) out.push_back(s.line);
  return out;
}

BeckStats beck_stats(const std::vector<Point2>& points) {
  BeckStats st;
  const auto spanned = spanned_lines(points);
  st.lines_spanned = spanned.size();
  st.max_collinear = points.empty() ? 0 : 1;
  for (const auto& s : spanned) st.max_collinear = std::max(st.max_collinear, s.points);
  if (!points.empty()) {
    const double n = static_cast<double>(points.size());
    st.collinear_ratio = static_cast<double>(st.max_collinear) / n;
    st.lines_ratio = static_cast<double>(st.lines_spanned) / (n * n);
  }
  return st;
}

std::vector<Point2> integer_grid(std::int64_t cols, std::int64_t rows) {
  if (cols < 1 || rows < 1) throw PreconditionError("grid sides must be positive");
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(cols * rows));
  for (std::int64_t y = 1; y <= rows; ++y)
    for (std::int64_t x = 1; x <= cols; ++x) out.push_back({Rational(x), Rational(y)});
  return out;
}

StGrid st_grid(std::int64_t m) {
  if (m < 1 || m > 64) throw PreconditionError("st_grid needs 1 <= M <= 64");
  StGrid g;
  g.points = integer_grid(m, 2 * m * m);
  for (std::int64_t a = 1; a <= m; ++a)
    for (std::int64_t b = 1; b <= m * m; ++b) g.lines.push_back(Line2::make(a, -1, b));
  return g;
}

// ---------------------------------------------------------------- joints

std::vector<Line3> joints_grid(std::int64_t n) {
  if (n < 1 || n > 64) throw PreconditionError("joints_grid needs 1 <= N <= 64");
  std::vector<Line3> out;
  for (std::size_t axis = 0; axis < 3; ++axis)
    for (std::int64_t u = 1; u <= n; ++u)
      for (std::int64_t v = 1; v <= n; ++v) {
        Point3 base{0, 0, 0}, dir{0, 0, 0};
        dir[axis] = 1;
        base[(axis + 1) % 3] = u;
        base[(axis + 2) % 3] = v;
        out.push_back(Line3::make(base, dir));
      }
  return out;
}

JointsReport count_joints(const std::vector<Line3>& lines) {
  const RationalField f;
  std::map<Point3, std::set<std::size_t>> through;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& l1 = lines[i];
      const auto& l2 = lines[j];
      if (l1 == l2) continue;
      Matrix<RationalField> a(3);
      std::vector<Rational> rhs(3);
      for (std::size_t k = 0; k < 3; ++k) {
        a[k] = {l1.dir[k], -l2.dir[k]};
        rhs[k] = l2.base[k] - l1.base[k];
      }
      const auto sol = solve(f, a, rhs, 2);
      if (!sol) continue;
      Point3 p;
      for (std::size_t k = 0; k < 3; ++k) p[k] = l1.base[k] + (*sol)[0] * l1.dir[k];
      through[p].insert(i);
      through[p].insert(j);
    }
  JointsReport rep;
  for (const auto& [p, idx] : through) {
    if (idx.size() < 3) continue;
    Matrix<RationalField> dirs;
    for (auto i : idx) dirs.push_back({lines[i].dir.begin(), lines[i].dir.end()});
    if (matrix_rank(f, dirs) == 3) rep.joints.push_back(p);
  }
  return rep;
}

// ------------------------------------------------------------- distances

Rational squared_distance(const Point2& p, const Point2& q) {
  const Rational dx = p[0] - q[0];
  const Rational dy = p[1] - q[1];
  return dx * dx + dy * dy;
}

DistanceStats distance_stats(const std::vector<Point2>& points, std::size_t cap) {
  if (points.size() > cap) throw CapExceeded("distance_stats: too many points");
  if (points.empty()) throw PreconditionError("distance_stats needs points");
  std::map<Rational, std::uint64_t> mult;
  for (const auto& a : points)
    for (const auto& b : points) ++mult[squared_distance(a, b)];
  DistanceStats st;
  for (const auto& [r, c] : mult) {
    st.q_all += c * c;
    if (r != 0) {
      st.q_nondegenerate += c * c;
      ++st.distinct_nonzero;
    }
    if (r == 1) st.unit_pairs = c;
  }
  st.distinct_with_zero = mult.size();
  const BigInt n = points.size();
  st.lower_bound = Rational(n * n * n * n, BigInt(st.q_all));
  if (st.q_nondegenerate > 0) {
    const BigInt off = n * n - n;
    st.nondegenerate_bound = Rational(off * off, BigInt(st.q_nondegenerate));
  }
  st.bound_holds = Rational(st.distinct_with_zero) >= st.lower_bound;
  st.nondegenerate_holds = Rational(st.distinct_nonzero) >= st.nondegenerate_bound;
  return st;
}

ElekesSharirReport elekes_sharir_lines(const std::vector<Point2>& points, double tolerance) {
  const std::size_t n = points.size();
  if (n > 32) throw CapExceeded("elekes_sharir_lines: at most 32 points");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j]) throw PreconditionError("repeated point");

  ElekesSharirReport rep;
  rep.tolerance = tolerance;
  std::vector<std::array<double, 2>> pd(n);
  for (std::size_t i = 0; i < n; ++i) pd[i] = {to_double(points[i][0]), to_double(points[i][1])};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      FloatLine3 l;
      l.from = a;
      l.to = c;
      l.base = {(pd[a][0] + pd[c][0]) / 2, (pd[a][1] + pd[c][1]) / 2, 0.0};
      const double dx = pd[c][0] - pd[a][0];
      const double dy = pd[c][1] - pd[a][1];
      l.dir = {-dy, dx, 1.0};
      rep.lines.push_back(l);
    }

  auto cross = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return std::array<double, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  };
  auto dot = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  };
  for (const auto& l1 : rep.lines)
    for (const auto& l2 : rep.lines) {
      if (l1.from == l2.from) continue;
      const std::array<double, 3> w{l2.base[0] - l1.base[0], l2.base[1] - l1.base[1], l2.base[2] - l1.base[2]};
      const auto nrm = cross(l1.dir, l2.dir);
      const double nn = std::sqrt(dot(nrm, nrm));
      double scale = 1.0;
      for (int k = 0; k < 3; ++k) scale = std::max({scale, std::abs(l1.base[k]), std::abs(l2.base[k])});
      double dist;
      if (nn <= 1e-12 * std::sqrt(dot(l1.dir, l1.dir) * dot(l2.dir, l2.dir))) {
        const auto c = cross(w, l1.dir);
        dist = std::sqrt(dot(c, c) / dot(l1.dir, l1.dir));
      } else {
        dist = std::abs(dot(w, nrm)) / nn;
      }
      if (dist <= tolerance * scale) ++rep.approx_intersections;
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const Rational dab = squared_distance(points[a], points[b]);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (squared_distance(points[c], points[d]) != dab) continue;
          const bool translation = points[c][0] - points[a][0] == points[d][0] - points[b][0] &&
                                   points[c][1] - points[a][1] == points[d][1] - points[b][1];
          if (translation)
            ++rep.translations;
          else
            ++rep.exact_rotations;
        }
    }
  return rep;
}

// ------------------------------------------------------ projective plane

namespace {

std::array<Code, 3> normalize3(const FieldSpec& spec, std::array<Code, 3> v) {
  std::size_t k = 0;
  while (k < 3 && v[k] == 0) ++k;
  if (k == 3) throw PreconditionError("zero homogeneous vector");
  const Code s = spec.inv(v[k]);
  for (auto& x : v) x = spec.mul(x, s);
  return v;
}

std::array<Code, 3> cross3(const FieldSpec& f, const std::array<Code, 3>& u, const std::array<Code, 3>& v) {
  return {f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])), f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
          f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]))};
}

Code dot3(const FieldSpec& f, const std::array<Code, 3>& u, const std::array<Code, 3>& v) {
  return f.add(f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1])), f.mul(u[2], v[2]));
}

}  // namespace

ProjPoint ProjPoint::make(const FieldSpec& spec, std::array<Code, 3> v) { return {normalize3(spec, v)}; }

LineFp LineFp::make(const FieldSpec& spec, Code a, Code b, Code c) {
  if (a == 0 && b == 0) throw PreconditionError("line needs (a, b) != 0");
  const Code s = spec.inv(a != 0 ? a : b);
  return {spec.mul(a, s), spec.mul(b, s), spec.mul(c, s)};
}

LineFp LineFp::through(const FieldSpec& spec, std::array<Code, 2> p, std::array<Code, 2> q) {
  if (p == q) throw PreconditionError("line through a repeated point");
  const Code a = spec.sub(q[1], p[1]);
  const Code b = spec.sub(p[0], q[0]);
  return make(spec, a, b, spec.neg(spec.add(spec.mul(a, p[0]), spec.mul(b, p[1]))));
}

bool LineFp::contains(const FieldSpec& spec, std::array<Code, 2> p) const {
  return spec.add(spec.add(spec.mul(a, p[0]), spec.mul(b, p[1])), c) == 0;
}

std::uint64_t count_incidences_fp(const FieldSpec& spec, const std::vector<std::array<Code, 2>>& points,
                                  const std::vector<LineFp>& lines) {
  std::uint64_t count = 0;
  for (const auto& l : lines)
    for (const auto& p : points)
      if (l.contains(spec, p)) ++count;
  return count;
}

ProjPoint embed(const FieldSpec& spec, std::array<Code, 2> p) { return ProjPoint::make(spec, {1, p[0], p[1]}); }

ProjPoint infinity_of(const FieldSpec& spec, const LineFp& line) {
  return ProjPoint::make(spec, {0, spec.neg(line.b), line.a});
}

ProjLine ProjLine::make(const FieldSpec& spec, std::array<Code, 3> v) { return {normalize3(spec, v)}; }

bool ProjLine::contains(const FieldSpec& spec, const ProjPoint& p) const { return dot3(spec, l, p.x) == 0; }

ProjMap ProjMap::identity(const FieldSpec& spec) {
  ProjMap m{spec, {}};
  for (std::size_t i = 0; i < 3; ++i) m.m[i][i] = 1;
  return m;
}

ProjMap ProjMap::make(const FieldSpec& spec, std::array<std::array<Code, 3>, 3> m) {
  const auto c = cross3(spec, m[1], m[2]);
  if (dot3(spec, m[0], c) == 0) throw PreconditionError("singular projective map");
  return {spec, m};
}

ProjMap ProjMap::inverse() const {
  const auto& f = spec;
  // rows of the inverse transpose are cross products of rows, over det
  const auto c0 = cross3(f, m[1], m[2]);
  const auto c1 = cross3(f, m[2], m[0]);
  const auto c2 = cross3(f, m[0], m[1]);
  const Code det_inv = f.inv(dot3(f, m[0], c0));
  ProjMap out{spec, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    out.m[i][0] = f.mul(c0[i], det_inv);
    out.m[i][1] = f.mul(c1[i], det_inv);
    out.m[i][2] = f.mul(c2[i], det_inv);
  }
  return out;
}

ProjPoint ProjMap::apply(const ProjPoint& p) const {
  std::array<Code, 3> y{};
  for (std::size_t i = 0; i < 3; ++i) y[i] = dot3(spec, m[i], p.x);
  return ProjPoint::make(spec, y);
}

ProjLine ProjMap::apply(const ProjLine& l) const {
  const ProjMap inv = inverse();
  std::array<Code, 3> out{};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) out[j] = spec.add(out[j], spec.mul(l.l[i], inv.m[i][j]));
  return ProjLine::make(spec, out);
}

ProjMap send_to_infinity(const FieldSpec& spec, const ProjPoint& p0, const ProjPoint& p1) {
  if (p0 == p1) throw PreconditionError("send_to_infinity needs distinct points");
  const auto join = cross3(spec, p0.x, p1.x);
  for (const auto& p2 : projective_points(spec)) {
    if (dot3(spec, join, p2.x) == 0) continue;
    std::array<std::array<Code, 3>, 3> cols{};
    for (std::size_t i = 0; i < 3; ++i) cols[i] = {p2.x[i], p0.x[i], p1.x[i]};
    return ProjMap::make(spec, cols).inverse();
  }
  throw std::logic_error("no point off a line");
}

std::vector<ProjPoint> projective_points(const FieldSpec& spec) {
  const auto q = static_cast<Code>(spec.order());
  if (q > 256) throw CapExceeded("projective_points: field too large");
  std::vector<ProjPoint> out;
  for (Code x = 0; x < q; ++x)
    for (Code y = 0; y < q; ++y) out.push_back({{1, x, y}});
  for (Code y = 0; y < q; ++y) out.push_back({{0, 1, y}});
  out.push_back({{0, 0, 1}});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjLine> projective_lines(const FieldSpec& spec) {
  std::vector<ProjLine> out;
  for (const auto& p : projective_points(spec)) out.push_back({p.x});
  return out;
}

// ------------------------------------------------------------------ json

nlohmann::json to_json(const Point2& p) { return {format_rational(p[0]), format_rational(p[1])}; }

Point2 point2_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw PreconditionError("point must be a pair");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

nlohmann::json to_json(const Line2& l) {
  return {{"a", format_rational(l.a)}, {"b", format_rational(l.b)}, {"c", format_rational(l.c)}};
}

Line2 line2_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
    throw PreconditionError("line must be {a, b, c}");
  return Line2::make(rational_from_json(j["a"]), rational_from_json(j["b"]), rational_from_json(j["c"]));
}

}  // namespace polylab
