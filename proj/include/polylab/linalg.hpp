#pragma once

// Exact Gaussian elimination over an arithmetic context.
//
// A context is a small value type exposing `value_type`, `zero()`, `one()`,
// `add`, `sub`, `mul`, `inv`, `neg` and `is_zero`. Three contexts ship here:
// finite fields (packed codes), rationals and Gaussian rationals.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polylab/field.hpp"
#include "polylab/rational.hpp"

namespace polylab {

struct FiniteField {
  using value_type = Code;
  FieldSpec spec;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return spec.add(a, b); }
  value_type sub(value_type a, value_type b) const { return spec.sub(a, b); }
  value_type mul(value_type a, value_type b) const { return spec.mul(a, b); }
  value_type neg(value_type a) const { return spec.neg(a); }
  value_type inv(value_type a) const { return spec.inv(a); }
  bool is_zero(value_type a) const { return a == 0; }
};

struct RationalField {
  using value_type = Rational;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
};

struct GaussianField {
  using value_type = GaussRational;
  value_type zero() const { return {}; }
  value_type one() const { return {1, 0}; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return {-a.re, -a.im}; }
  value_type inv(const value_type& a) const {
    if (a.is_zero()) throw PreconditionError("inverse of zero");
    return a.inverse();
  }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
};

template <class F>
using Matrix = std::vector<std::vector<typename F::value_type>>;

template <class F>
struct Echelon {
  Matrix<F> rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. Pivots are chosen left to right, first nonzero
/// row downward, so the result is fully determined by the input.
template <class F>
Echelon<F> row_reduce(const F& f, Matrix<F> a) {
  Echelon<F> out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const auto scale = f.inv(a[r][c]);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = f.mul(a[r][k], scale);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(a[i][c])) continue;
      const auto factor = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] = f.sub(a[i][k], f.mul(factor, a[r][k]));
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rref = std::move(a);
  return out;
}

template <class F>
std::size_t matrix_rank(const F& f, Matrix<F> a) {
  return row_reduce(f, std::move(a)).rank();
}

/// A nonzero x with a·x = 0, taken at the first free column (x there = 1,
/// other free coordinates 0). nullopt iff a has full column rank.
template <class F>
std::optional<std::vector<typename F::value_type>> null_vector(const F& f, Matrix<F> a,
                                                               std::size_t cols) {
  auto ech = row_reduce(f, std::move(a));
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  if (free_col == cols) return std::nullopt;
  std::vector<typename F::value_type> x(cols, f.zero());
  x[free_col] = f.one();
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = f.neg(ech.rref[r][free_col]);
  return x;
}

/// Some solution of a·x = b (free variables set to zero), or nullopt.
template <class F>
std::optional<std::vector<typename F::value_type>> solve(const F& f, Matrix<F> a,
                                                         const std::vector<typename F::value_type>& b,
                                                         std::size_t cols) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto ech = row_reduce(f, std::move(a));
  std::vector<typename F::value_type> x(cols, f.zero());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == cols) return std::nullopt;
    x[ech.pivots[r]] = ech.rref[r][cols];
  }
  return x;
}

/// Whether `target` lies in the span of `vectors` (all of equal length).
template <class F>
bool in_span(const F& f, const std::vector<std::vector<typename F::value_type>>& vectors,
             const std::vector<typename F::value_type>& target) {
  if (vectors.empty()) {
    for (const auto& x : target)
      if (!f.is_zero(x)) return false;
    return true;
  }
  // Columns are the spanning vectors.
  Matrix<F> a(target.size(), std::vector<typename F::value_type>(vectors.size(), f.zero()));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < target.size(); ++i) a[i][j] = vectors[j][i];
  return solve(f, std::move(a), target, vectors.size()).has_value();
}

}  // namespace polylab
