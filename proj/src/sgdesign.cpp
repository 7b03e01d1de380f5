#include "polylab/sgdesign.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace polylab {

namespace {

template <class F>
using Vec = std::vector<typename F::value_type>;

template <class F>
std::vector<std::vector<std::size_t>> special_groups(const F& f, const std::vector<Vec<F>>& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<char>> done(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (done[i][j]) continue;
      std::vector<std::size_t> members{i, j};
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (matrix_rank(f, Matrix<F>{w[i], w[j], w[k]}) < 3) members.push_back(k);
      }
      std::sort(members.begin(), members.end());
      for (auto a : members)
        for (auto b : members) done[a][b] = 1;
      if (members.size() >= 3) out.push_back(std::move(members));
    }
  return out;
}

/// Coefficients c with c0 w_a + c1 w_b + c2 w_c = 0.
template <class F>
Vec<F> dependency(const F& f, const Vec<F>& a, const Vec<F>& b, const Vec<F>& c) {
  Matrix<F> m(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) m[r] = {a[r], b[r], c[r]};
  auto x = null_vector(f, std::move(m), 3);
  if (!x) throw std::logic_error("collinear triple without a dependency");
  return *x;
}

template <class F>
bool rows_annihilate(const F& f, const std::vector<std::vector<std::pair<std::size_t, typename F::value_type>>>& rows,
                     const std::vector<Vec<F>>& w) {
  for (const auto& row : rows) {
    Vec<F> acc(w.front().size(), f.zero());
    for (const auto& [col, v] : row)
      for (std::size_t d = 0; d < acc.size(); ++d) acc[d] = f.add(acc[d], f.mul(v, w[col][d]));
    for (const auto& x : acc)
      if (!f.is_zero(x)) return false;
  }
  return true;
}

std::vector<Vec<RationalField>> homogeneous(const std::vector<std::vector<Rational>>& pts) {
  std::vector<Vec<RationalField>> w;
  w.reserve(pts.size());
  for (const auto& p : pts) {
    Vec<RationalField> v{Rational(1)};
    v.insert(v.end(), p.begin(), p.end());
    w.push_back(std::move(v));
  }
  return w;
}

template <class F>
void check_rank_cap(const Matrix<F>& m) {
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  if (m.size() * cols > kRankCap) throw CapExceeded("exact_rank: matrix too large");
  for (const auto& row : m)
    if (row.size() != cols) throw PreconditionError("ragged matrix");
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw PreconditionError("expected an integer or a rational string");
}

}  // namespace

// -------------------------------------------------------- configuration

Configuration Configuration::rational(std::vector<std::vector<Rational>> points) {
  if (points.empty()) throw PreconditionError("empty configuration");
  Configuration c;
  c.dim_ = points.front().size();
  if (c.dim_ == 0) throw PreconditionError("points need at least one coordinate");
  for (const auto& p : points)
    if (p.size() != c.dim_) throw PreconditionError("points of mixed dimension");
  std::set<std::vector<Rational>> seen(points.begin(), points.end());
  if (seen.size() != points.size()) throw PreconditionError("repeated point");
  c.rational_ = std::move(points);
  return c;
}

Configuration Configuration::finite(FieldSpec spec, std::vector<std::vector<Code>> vectors) {
  if (vectors.empty()) throw PreconditionError("empty configuration");
  Configuration c;
  c.dim_ = vectors.front().size();
  if (c.dim_ == 0) throw PreconditionError("vectors need at least one coordinate");
  const FiniteField f{spec};
  for (const auto& v : vectors) {
    if (v.size() != c.dim_) throw PreconditionError("vectors of mixed dimension");
    for (auto x : v)
      if (x >= spec.order()) throw PreconditionError("coordinate outside the field");
    if (std::all_of(v.begin(), v.end(), [](Code x) { return x == 0; }))
      throw PreconditionError("improper configuration: zero vector");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (matrix_rank(f, Matrix<FiniteField>{vectors[i], vectors[j]}) < 2)
        throw PreconditionError("improper configuration: proportional vectors " + std::to_string(i) + ", " +
                                std::to_string(j));
  c.spec_ = std::move(spec);
  c.vectors_ = std::move(vectors);
  return c;
}

std::size_t Configuration::size() const { return is_rational() ? rational_.size() : vectors_.size(); }

std::size_t Configuration::homogeneous_rank() const {
  if (is_rational()) return matrix_rank(RationalField{}, homogeneous(rational_));
  return matrix_rank(FiniteField{*spec_}, vectors_);
}

std::vector<std::vector<std::size_t>> Configuration::special_lines() const {
  if (is_rational()) return special_groups(RationalField{}, homogeneous(rational_));
  return special_groups(FiniteField{*spec_}, vectors_);
}

nlohmann::json Configuration::to_json() const {
  nlohmann::json j;
  if (is_rational()) {
    j["field"] = "Q";
    auto pts = nlohmann::json::array();
    for (const auto& p : rational_) {
      auto row = nlohmann::json::array();
      for (const auto& x : p) row.push_back(format_rational(x));
      pts.push_back(row);
    }
    j["points"] = pts;
  } else {
    j["field"] = polylab::to_json(*spec_);
    j["vectors"] = vectors_;
  }
  return j;
}

Configuration Configuration::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("field")) throw PreconditionError("configuration needs a field");
  const auto& field = j["field"];
  if (field.is_string()) {
    if (field.get<std::string>() != "Q") throw PreconditionError("unknown field tag");
    std::vector<std::vector<Rational>> pts;
    for (const auto& p : j.at("points")) {
      std::vector<Rational> v;
      for (const auto& x : p) v.push_back(rational_from_json(x));
      pts.push_back(std::move(v));
    }
    return rational(std::move(pts));
  }
  const FieldSpec spec = field_from_json(field);
  std::vector<std::vector<Code>> vecs;
  for (const auto& v : j.at("vectors")) {
    std::vector<Code> row;
    for (const auto& x : v) {
      const auto raw = x.get<std::int64_t>();
      row.push_back(spec.is_prime_field() ? spec.from_int(raw) : static_cast<Code>(raw));
    }
    vecs.push_back(std::move(row));
  }
  return finite(spec, std::move(vecs));
}

// -------------------------------------------------------------- SG checks

SgCheck check_sg(const Configuration& c, const Rational& delta) {
  if (delta < 0 || delta > 1) throw PreconditionError("delta must lie in [0, 1]");
  const std::size_t n = c.size();
  SgCheck out;
  out.coverage.assign(n, 0);
  for (const auto& line : c.special_lines())
    for (auto i : line) out.coverage[i] += line.size() - 1;
  for (auto& cov : out.coverage)
    if (cov > 0) ++cov;  // the point itself
  const Rational need = delta * n;
  for (std::size_t i = 0; i < n; ++i)
    if (Rational(out.coverage[i]) < need) {
      out.failing = i;
      break;
    }
  out.holds = !out.failing.has_value();
  return out;
}

std::vector<Line2> ordinary_lines(const std::vector<Point2>& points) {
  if (points.size() < 2) throw PreconditionError("ordinary_lines needs two points");
  const auto spanned = spanned_lines(points);
  std::vector<Line2> out;
  for (const auto& s : spanned)
    if (s.points == 2) out.push_back(s.line);
  if (out.empty() && spanned.size() > 1) throw std::logic_error("non-collinear set without an ordinary line");
  return out;
}

// ---------------------------------------------------------- triple systems

std::vector<std::vector<std::size_t>> idempotent_latin_square(std::size_t r) {
  if (r < 3) throw PreconditionError("latin square needs r >= 3");
  if (r % 2 == 1) {
    // L(i, j) = (i + j) / 2 mod r
    const std::size_t half = (r + 1) / 2;
    std::vector<std::vector<std::size_t>> l(r, std::vector<std::size_t>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) l[i][j] = ((i + j) * half) % r;
    return l;
  }
  // Extend the odd square of order r - 1 along the cells (i, i + 1) by a new
  // symbol r - 1.
  const std::size_t s = r - 1;
  const auto base = idempotent_latin_square(s);
  std::vector<std::vector<std::size_t>> l(r, std::vector<std::size_t>(r));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) l[i][j] = base[i][j];
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t next = (i + 1) % s;
    l[i][s] = base[i][next];
    l[i][next] = s;
    l[s][next] = base[i][next];
  }
  l[s][s] = s;
  return l;
}

std::vector<Triple> triple_system(std::size_t r, TripleKind kind) {
  if (r < 3) throw PreconditionError("triple_system needs r >= 3");
  std::vector<Triple> out;
  if (kind == TripleKind::latin) {
    const auto l = idempotent_latin_square(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (i != j) out.push_back({i, j, l[i][j]});
    return out;
  }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      const std::size_t c = (2 * r - a - b) % r;
      if (a != b && b != c && a != c) out.push_back({a, b, c});
    }
  return out;
}

TripleStats triple_stats(const std::vector<Triple>& t, std::size_t r) {
  TripleStats st;
  st.count = t.size();
  std::vector<std::size_t> per(r, 0);
  std::vector<std::size_t> pair(r * r, 0);
  for (const auto& tr : t) {
    for (auto x : tr)
      if (x >= r) throw PreconditionError("triple entry out of range");
    if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2]) {
      st.distinct_entries = false;
      continue;
    }
    for (auto x : tr) ++per[x];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        const auto lo = std::min(tr[a], tr[b]);
        const auto hi = std::max(tr[a], tr[b]);
        ++pair[lo * r + hi];
      }
  }
  st.min_per_element = *std::min_element(per.begin(), per.end());
  st.max_per_element = *std::max_element(per.begin(), per.end());
  st.max_per_pair = *std::max_element(pair.begin(), pair.end());
  return st;
}

// --------------------------------------------------------- design matrices

std::vector<std::vector<std::size_t>> DesignMatrix::row_supports() const {
  std::vector<std::vector<std::size_t>> out;
  auto collect = [&](const auto& rows) {
    for (const auto& row : rows) {
      std::vector<std::size_t> s;
      for (const auto& [col, v] : row) {
        if (col >= cols) throw PreconditionError("column index out of range");
        if (v != 0) s.push_back(col);
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      out.push_back(std::move(s));
    }
  };
  if (spec)
    collect(code_rows);
  else
    collect(rational_rows);
  return out;
}

DesignParams DesignMatrix::params() const {
  const auto supports = row_supports();
  DesignParams p;
  std::vector<std::size_t> col(cols, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> inter;
  for (const auto& s : supports) {
    p.q = std::max(p.q, s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      ++col[s[a]];
      for (std::size_t b = a + 1; b < s.size(); ++b) p.t = std::max(p.t, ++inter[{s[a], s[b]}]);
    }
  }
  p.k = cols == 0 ? 0 : *std::min_element(col.begin(), col.end());
  return p;
}

bool DesignMatrix::is_design(const DesignParams& want) const {
  const auto have = params();
  return have.q <= want.q && have.k >= want.k && have.t <= want.t;
}

DesignResult design_from_config(const Configuration& c, const Rational& delta) {
  const auto sg = check_sg(c, delta);
  if (!sg.holds) throw PreconditionError("configuration is not delta-SG at point " + std::to_string(*sg.failing));
  const auto lines = c.special_lines();
  DesignResult res;
  res.matrix.cols = c.size();

  auto build = [&](const auto& f, const auto& w, auto& rows) {
    for (const auto& line : lines)
      for (const auto& tr : triple_system(line.size())) {
        const std::size_t a = line[tr[0]], b = line[tr[1]], d = line[tr[2]];
        const auto coeff = dependency(f, w[a], w[b], w[d]);
        std::vector<std::pair<std::size_t, typename std::decay_t<decltype(f)>::value_type>> row{
            {a, coeff[0]}, {b, coeff[1]}, {d, coeff[2]}};
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [col, v] : row)
          if (f.is_zero(v)) throw std::logic_error("dependency with a zero coefficient");
        rows.push_back(std::move(row));
      }
    res.annihilates = rows_annihilate(f, rows, w);
  };
  if (c.is_rational()) {
    build(RationalField{}, homogeneous(c.rational_points()), res.matrix.rational_rows);
  } else {
    res.matrix.spec = c.spec();
    build(FiniteField{c.spec()}, c.vectors(), res.matrix.code_rows);
  }
  if (!res.annihilates) throw std::logic_error("design matrix does not annihilate the configuration");
  res.params = res.matrix.params();
  res.rank = exact_rank(res.matrix);
  res.config_rank = c.homogeneous_rank();
  res.bound = rank_lower_bound(res.params.q, res.params.k, res.params.t, c.size());
  return res;
}

Rational rank_lower_bound(std::size_t q, std::size_t k, std::size_t t, std::size_t n) {
  if (k == 0) throw PreconditionError("rank_lower_bound needs k > 0");
  const Rational ratio(BigInt(q) * t * n, BigInt(2) * k);
  return Rational(n) - ratio * ratio;
}

// -------------------------------------------------------------------- rank

std::size_t exact_rank(const RationalMatrix& m) {
  check_rank_cap<RationalField>(m);
  return matrix_rank(RationalField{}, m);
}

std::size_t exact_rank(const GaussMatrix& m) {
  check_rank_cap<GaussianField>(m);
  return matrix_rank(GaussianField{}, m);
}

std::size_t exact_rank(const FieldSpec& spec, const std::vector<std::vector<Code>>& m) {
  check_rank_cap<FiniteField>(m);
  return matrix_rank(FiniteField{spec}, m);
}

std::size_t exact_rank(const DesignMatrix& m) {
  if (m.rows() * m.cols > kRankCap) throw CapExceeded("exact_rank: matrix too large");
  if (m.spec) {
    std::vector<std::vector<Code>> dense(m.rows(), std::vector<Code>(m.cols, 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [col, v] : m.code_rows[r]) dense[r][col] = m.spec->add(dense[r][col], v);
    return exact_rank(*m.spec, dense);
  }
  RationalMatrix dense(m.rows(), std::vector<Rational>(m.cols, 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [col, v] : m.rational_rows[r]) dense[r][col] += v;
  return exact_rank(dense);
}

namespace {

template <class T, class Abs2, class Conj>
Rational diag_bound_impl(const std::vector<std::vector<T>>& m, const Rational& large, const Rational& small,
                         Abs2 abs2, Conj conj) {
  if (!(large > small) || small < 0) throw PreconditionError("diag_rank_bound needs large > small >= 0");
  const std::size_t n = m.size();
  if (n == 0) throw PreconditionError("empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw PreconditionError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m[j][i] == conj(m[i][j]))) throw PreconditionError("matrix must be symmetric / Hermitian");
      if (i == j && abs2(m[i][i]) < large * large)
        throw PreconditionError("diagonal entry below the stated lower bound");
      if (i != j && abs2(m[i][j]) > small * small)
        throw PreconditionError("off-diagonal entry above the stated upper bound");
    }
  }
  const Rational r = small / large;
  return Rational(n) / (1 + Rational(n) * r * r);
}

}  // namespace

Rational diag_rank_bound(const RationalMatrix& m, const Rational& large, const Rational& small) {
  return diag_bound_impl(
      m, large, small, [](const Rational& x) { return x * x; }, [](const Rational& x) { return x; });
}

Rational diag_rank_bound(const GaussMatrix& m, const Rational& large, const Rational& small) {
  return diag_bound_impl(
      m, large, small, [](const GaussRational& x) { return x.norm(); },
      [](const GaussRational& x) { return x.conj(); });
}

}  // namespace polylab
