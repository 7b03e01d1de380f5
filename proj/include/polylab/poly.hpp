#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polylab/exec.hpp"
#include "polylab/field.hpp"

namespace polylab {

using Exponents = std::vector<std::uint32_t>;
using Point = std::vector<Code>;

/// Position of a point of F_q^n in lexicographic code order (first
/// coordinate most significant), and its inverse.
std::uint64_t point_index(std::uint64_t q, std::span<const Code> point);
Point point_at(std::uint64_t q, std::size_t n, std::uint64_t index);

/// Degree of the zero polynomial.
inline constexpr int kZeroPolyDegree = std::numeric_limits<int>::min();

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Univariate polynomial, coefficients constant term first, trailing zeros trimmed.
class UniPoly {
 public:
  explicit UniPoly(FieldSpec spec, std::vector<Code> coeffs = {});

  const FieldSpec& spec() const { return spec_; }
  const std::vector<Code>& coeffs() const { return coeffs_; }
  Code coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  int degree() const { return coeffs_.empty() ? kZeroPolyDegree : static_cast<int>(coeffs_.size()) - 1; }
  Code evaluate(Code t) const;

  UniPoly operator*(const UniPoly& other) const;
  UniPoly operator+(const UniPoly& other) const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// The unique polynomial of degree < xs.size() through (xs[i], ys[i]).
  static UniPoly interpolate(const FieldSpec& spec, std::span<const Code> xs, std::span<const Code> ys);

 private:
  FieldSpec spec_;
  std::vector<Code> coeffs_;
};

/// Value at `t` of the interpolant through (xs, ys), without forming it.
Code lagrange_evaluate(const FieldSpec& spec, std::span<const Code> xs, std::span<const Code> ys, Code t);

/// Sparse multivariate polynomial over a finite field.
class MultiPoly {
 public:
  MultiPoly(FieldSpec spec, std::size_t n_vars);

  static MultiPoly constant(FieldSpec spec, std::size_t n_vars, Code c);
  static MultiPoly variable(FieldSpec spec, std::size_t n_vars, std::size_t index);

  const FieldSpec& spec() const { return spec_; }
  std::size_t n_vars() const { return n_vars_; }
  const std::map<Exponents, Code>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Adds c·x^e to the polynomial (coefficients accumulate).
  void add_term(const Exponents& e, Code c);
  Code coefficient(const Exponents& e) const;

  Code evaluate(std::span<const Code> point) const;
  FieldElement evaluate(std::span<const FieldElement> point) const;

  MultiPoly operator+(const MultiPoly& other) const;
  MultiPoly operator-(const MultiPoly& other) const;
  MultiPoly operator*(const MultiPoly& other) const;
  MultiPoly scaled(Code c) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_vars_ == b.n_vars_ && a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }

  /// Homogeneous part of top degree.
  MultiPoly top_part() const;

  /// "3*x0^2*x1 + 4". Coefficients print as field codes.
  std::string to_text() const;
  static MultiPoly parse(const FieldSpec& spec, std::size_t n_vars, std::string_view text);

  /// [{"e": [2, 1], "c": 3}, ...]
  nlohmann::json to_json() const;
  static MultiPoly from_json(const FieldSpec& spec, std::size_t n_vars, const nlohmann::json& j);

 private:
  void check_exponents(const Exponents& e) const;

  FieldSpec spec_;
  std::size_t n_vars_;
  std::map<Exponents, Code> terms_;
};

/// All exponent vectors of total degree <= d, by degree and then
/// lexicographically descending within a degree (x0^d first).
std::vector<Exponents> monomials_up_to(std::size_t n_vars, std::uint32_t d);

/// Row i holds the monomials evaluated at points[i].
std::vector<std::vector<Code>> evaluation_matrix(const FieldSpec& spec, std::span<const Point> points,
                                                 std::span<const Exponents> monomials);

/// Exact zero count over F_q^n. Throws on the zero polynomial or when q^n > cap.
std::uint64_t count_zeros(const MultiPoly& f, std::uint64_t cap = kDefaultEnumerationCap,
                          Exec exec = Exec::parallel);

/// A nonzero polynomial of degree <= d vanishing on every point, or nullopt
/// when the evaluation matrix has full column rank.
std::optional<MultiPoly> vanishing_poly(const FieldSpec& spec, std::size_t n_vars,
                                        std::span<const Point> points, int degree_cap);

/// h(t) = f(a + t·b).
UniPoly restrict_to_line(const MultiPoly& f, std::span<const Code> a, std::span<const Code> b);

/// Formal partial derivatives; exponents multiply in as residues mod p.
std::vector<MultiPoly> gradient(const MultiPoly& f);

/// f^h in n+1 variables, x0 the new homogenizing variable.
MultiPoly homogenize(const MultiPoly& f);

/// Substitutes x_var = value, keeping the variable count.
MultiPoly substitute(const MultiPoly& f, std::size_t var, Code value);

}  // namespace polylab
