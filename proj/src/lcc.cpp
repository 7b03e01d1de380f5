#include "polylab/lcc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "polylab/kernels.hpp"

namespace polylab {

std::vector<Point> projective_directions(const FieldSpec& spec, std::size_t n) {
  const std::uint64_t q = spec.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= q;
    if (total > kDefaultEnumerationCap) throw CapExceeded("q^n exceeds enumeration cap");
  }
  std::vector<Point> out;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Point p = point_at(q, n, idx);
    const auto first = std::find_if(p.begin(), p.end(), [](Code c) { return c != 0; });
    if (*first == 1) out.push_back(std::move(p));
  }
  return out;
}

Point canonical_direction(const FieldSpec& spec, std::span<const Code> v) {
  const auto first = std::find_if(v.begin(), v.end(), [](Code c) { return c != 0; });
  if (first == v.end()) throw PreconditionError("direction must be nonzero");
  const Code scale = spec.inv(*first);
  Point out;
  out.reserve(v.size());
  for (auto c : v) out.push_back(spec.mul(c, scale));
  return out;
}

// ------------------------------------------------------------------ RMCode

RMCode::RMCode(FieldSpec spec, std::size_t m, std::uint32_t e) : spec_(std::move(spec)), m_(m), e_(e) {
  const std::uint64_t q = spec_.order();
  if (m_ == 0) throw PreconditionError("Reed-Muller code needs m >= 1");
  if (q < 3 || e_ > q - 2) throw PreconditionError("local correction needs e <= q - 2");
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < m_; ++i) {
    n *= q;
    if (n > kDefaultEnumerationCap) throw CapExceeded("code length exceeds enumeration cap");
  }
  for (std::uint64_t idx = 0; idx < n; ++idx) points_.push_back(point_at(q, m_, idx));
  directions_ = projective_directions(spec_, m_);
  monomials_ = monomials_up_to(m_, e_);

  const std::size_t per_line = q - 1;
  queries_.reserve(n * directions_.size() * per_line);
  Point z(m_);
  for (std::uint64_t i = 0; i < n; ++i)
    for (const auto& d : directions_)
      for (Code t = 1; t < q; ++t) {
        for (std::size_t k = 0; k < m_; ++k) z[k] = spec_.add(points_[i][k], spec_.mul(t, d[k]));
        queries_.push_back(static_cast<std::uint32_t>(point_index(q, z)));
      }

  // Lagrange weights of the nodes t = 1..q-1 evaluated at t = 0.
  for (Code t = 1; t < q; ++t) {
    Code num = 1, den = 1;
    for (Code s = 1; s < q; ++s) {
      if (s == t) continue;
      num = spec_.mul(num, spec_.neg(s));
      den = spec_.mul(den, spec_.sub(t, s));
    }
    weights_.push_back(spec_.div(num, den));
  }
}

RMCode RMCode::max_locality(FieldSpec spec, std::size_t m) {
  const auto q = static_cast<std::uint32_t>(spec.order());
  return RMCode(std::move(spec), m, q - 2);
}

RMCode RMCode::robust(FieldSpec spec, std::size_t m) {
  const auto q = static_cast<std::uint32_t>(spec.order());
  return RMCode(std::move(spec), m, q / 10);
}

std::size_t RMCode::index_of(std::span<const Code> p) const {
  if (p.size() != m_) throw PreconditionError("point arity mismatch");
  return static_cast<std::size_t>(point_index(spec_.order(), p));
}

std::vector<Code> RMCode::encode(const MultiPoly& f) const {
  if (!(f.spec() == spec_) || f.n_vars() != m_) throw PreconditionError("polynomial does not match the code");
  if (!f.is_zero() && f.degree() > static_cast<int>(e_)) throw PreconditionError("polynomial degree exceeds e");
  std::vector<Code> word;
  word.reserve(points_.size());
  for (const auto& p : points_) word.push_back(f.evaluate(p));
  return word;
}

std::span<const std::uint32_t> RMCode::line_queries(std::size_t i, std::size_t line) const {
  if (i >= points_.size() || line >= directions_.size()) throw PreconditionError("position or line out of range");
  const std::size_t per_line = spec_.order() - 1;
  return {queries_.data() + (i * directions_.size() + line) * per_line, per_line};
}

Code RMCode::decode_along(std::span<const Code> word, std::size_t i, std::size_t line) const {
  if (word.size() != points_.size()) throw PreconditionError("word length mismatch");
  const auto q = line_queries(i, line);
  Code acc = 0;
  for (std::size_t k = 0; k < q.size(); ++k) acc = spec_.add(acc, spec_.mul(weights_[k], word[q[k]]));
  return acc;
}

Code local_correct(const RMCode& code, std::span<const Code> word, std::size_t i, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, code.lines_per_point() - 1);
  return code.decode_along(word, i, pick(rng));
}

DecodingStats zero_error_enumeration(const RMCode& code, std::span<const Code> codeword) {
  DecodingStats s;
  for (std::size_t i = 0; i < code.length(); ++i)
    for (std::size_t line = 0; line < code.lines_per_point(); ++line) {
      ++s.total;
      if (code.decode_along(codeword, i, line) == codeword[i]) ++s.successes;
    }
  return s;
}

DecodingStats single_error_enumeration(const RMCode& code, const std::vector<Code>& codeword, Exec exec) {
  const auto t = exec == Exec::serial ? kernels::lcc_single_error_serial(code, codeword)
                                      : kernels::lcc_single_error_omp(code, codeword);
  return {t.successes, t.total};
}

DecodingStats decode_trials(const RMCode& code, const std::vector<Code>& codeword, std::uint64_t trials,
                            unsigned errors, std::uint64_t seed, Exec exec) {
  const auto t = exec == Exec::serial ? kernels::lcc_trials_serial(code, codeword, trials, errors, seed)
                                      : kernels::lcc_trials_omp(code, codeword, trials, errors, seed);
  return {t.successes, t.total};
}

// ----------------------------------------------------------- LCC lists

LCCList rm_lcc_list(const RMCode& code, const Rational& delta) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < code.length(); ++i) pts.push_back(code.point(i));
  return {code.spec(), evaluation_matrix(code.spec(), pts, code.monomials()), code.spec().order() - 1, delta};
}

std::size_t span_dimension(const LCCList& v) {
  if (v.vectors.empty()) return 0;
  return matrix_rank(FiniteField{v.spec}, v.vectors);
}

bool spans(const LCCList& v, std::span<const std::size_t> subset, std::size_t target) {
  std::vector<std::vector<Code>> vs;
  for (auto j : subset) vs.push_back(v.vectors.at(j));
  return in_span(FiniteField{v.spec}, vs, v.vectors.at(target));
}

MatchingFailure::MatchingFailure(std::size_t index_, std::vector<std::size_t> excluded_)
    : std::runtime_error("no spanning set of size <= r avoids the covered coordinates of index " +
                         std::to_string(index_)),
      index(index_),
      excluded(std::move(excluded_)) {}

namespace {

// First subset of `pool` (by size, then lexicographically) with at most r
// elements spanning v_target.
std::optional<std::vector<std::size_t>> first_spanning(const LCCList& v, const std::vector<std::size_t>& pool,
                                                       std::size_t target) {
  for (std::size_t size = 1; size <= std::min(v.r, pool.size()); ++size) {
    std::vector<std::size_t> pos(size);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      std::vector<std::size_t> subset;
      for (auto p : pos) subset.push_back(pool[p]);
      if (spans(v, subset, target)) return subset;
      // next combination
      std::size_t k = size;
      while (k > 0 && pos[k - 1] == pool.size() - size + k - 1) --k;
      if (k == 0) break;
      ++pos[k - 1];
      for (std::size_t l = k; l < size; ++l) pos[l] = pos[l - 1] + 1;
    }
  }
  return std::nullopt;
}

std::size_t target_family_size(const LCCList& v) {
  if (v.r == 0) throw PreconditionError("query bound r must be positive");
  const Rational need = v.delta * static_cast<long long>(v.vectors.size()) / static_cast<long long>(v.r);
  BigInt c = boost::multiprecision::numerator(need) / boost::multiprecision::denominator(need);
  if (Rational(c) < need) ++c;
  return c.convert_to<std::size_t>();
}

}  // namespace

Matching build_matchings(const LCCList& v) {
  const std::size_t n = v.vectors.size();
  Matching mt;
  mt.k = target_family_size(v);
  mt.families.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> covered(n, false);
    covered[i] = true;
    while (mt.families[i].size() < mt.k) {
      std::vector<std::size_t> pool;
      for (std::size_t j = 0; j < n; ++j)
        if (!covered[j]) pool.push_back(j);
      auto r = first_spanning(v, pool, i);
      if (!r) {
        std::vector<std::size_t> excluded;
        for (std::size_t j = 0; j < n; ++j)
          if (covered[j] && j != i) excluded.push_back(j);
        throw MatchingFailure(i, std::move(excluded));
      }
      for (auto j : *r) covered[j] = true;
      mt.families[i].push_back(std::move(*r));
    }
  }
  return mt;
}

Matching pencil_matchings(const RMCode& code) {
  Matching mt;
  mt.k = code.lines_per_point();
  mt.families.resize(code.length());
  for (std::size_t i = 0; i < code.length(); ++i)
    for (std::size_t line = 0; line < code.lines_per_point(); ++line) {
      auto q = code.line_queries(i, line);
      std::vector<std::size_t> r(q.begin(), q.end());
      std::sort(r.begin(), r.end());
      mt.families[i].push_back(std::move(r));
    }
  return mt;
}

bool verify_matching(const LCCList& v, const Matching& mt) {
  const std::size_t n = v.vectors.size();
  if (mt.families.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (mt.families[i].size() < mt.k) return false;
    std::vector<bool> seen(n, false);
    for (const auto& r : mt.families[i]) {
      if (r.empty() || r.size() > v.r) return false;
      for (auto j : r) {
        if (j >= n || j == i || seen[j]) return false;
        seen[j] = true;
      }
      if (!spans(v, r, i)) return false;
    }
  }
  return true;
}

LccMatrixReport lcc_matrix(const LCCList& v, const Matching& mt) {
  const FiniteField f{v.spec};
  const std::size_t n = v.vectors.size();
  LccMatrixReport rep;
  std::vector<std::size_t> block_of_row;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& r : mt.families.at(i)) {
      const std::size_t d = v.vectors[i].size();
      Matrix<FiniteField> a(d, std::vector<Code>(r.size(), 0));
      for (std::size_t c = 0; c < r.size(); ++c)
        for (std::size_t k = 0; k < d; ++k) a[k][c] = v.vectors[r[c]][k];
      auto coeffs = solve(f, std::move(a), v.vectors[i], r.size());
      if (!coeffs) throw PreconditionError("matching set does not span its target vector");
      std::vector<Code> row(n, 0);
      row[i] = 1;
      for (std::size_t c = 0; c < r.size(); ++c) row[r[c]] = v.spec.sub(row[r[c]], (*coeffs)[c]);
      rep.matrix.push_back(std::move(row));
      block_of_row.push_back(i);
    }

  rep.annihilates = true;
  for (const auto& row : rep.matrix) {
    const std::size_t d = v.vectors.empty() ? 0 : v.vectors[0].size();
    for (std::size_t k = 0; k < d; ++k) {
      Code acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = v.spec.add(acc, v.spec.mul(row[j], v.vectors[j][k]));
      if (acc != 0) rep.annihilates = false;
    }
  }

  rep.pattern_ok = true;
  for (std::size_t a = 0; a < rep.matrix.size(); ++a) {
    const auto nz = std::count_if(rep.matrix[a].begin(), rep.matrix[a].end(), [](Code c) { return c != 0; });
    if (static_cast<std::size_t>(nz) > v.r + 1) rep.pattern_ok = false;
    for (std::size_t b = a + 1; b < rep.matrix.size(); ++b) {
      if (block_of_row[a] != block_of_row[b]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (j != block_of_row[a] && rep.matrix[a][j] != 0 && rep.matrix[b][j] != 0) rep.pattern_ok = false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nz = 0;
    for (std::size_t a = 0; a < rep.matrix.size(); ++a)
      if (block_of_row[a] == i && rep.matrix[a][i] != 0) ++nz;
    if (nz < mt.k) rep.pattern_ok = false;
  }

  rep.rank = rep.matrix.empty() ? 0 : matrix_rank(f, rep.matrix);
  rep.span_dim = span_dimension(v);
  return rep;
}

KatzTrevisanProbe katz_trevisan_probe(const LCCList& v, std::uint64_t trials, std::mt19937_64& rng,
                                      std::optional<double> mu) {
  const std::size_t n = v.vectors.size();
  KatzTrevisanProbe out;
  if (n == 0) return out;
  const double dn = static_cast<double>(n), r = static_cast<double>(v.r);
  out.bound = std::pow(dn, (r - 1.0) / r) * std::log(dn);
  out.mu = mu.value_or(std::min(1.0, std::log(dn) * std::pow(dn, -1.0 / r)));
  if (!(out.mu > 0.0 && out.mu <= 1.0)) throw PreconditionError("inclusion probability must lie in (0, 1]");
  const std::size_t dim = span_dimension(v);
  std::bernoulli_distribution keep(out.mu);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<std::vector<Code>> sample;
    for (std::size_t j = 0; j < n; ++j)
      if (keep(rng)) sample.push_back(v.vectors[j]);
    if (out.smallest && sample.size() >= *out.smallest) continue;
    if (sample.size() < dim) continue;
    if (matrix_rank(FiniteField{v.spec}, sample) == dim) out.smallest = sample.size();
  }
  return out;
}

}  // namespace polylab
