#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "polylab/exec.hpp"
#include "polylab/field.hpp"
#include "polylab/linalg.hpp"
#include "polylab/poly.hpp"
#include "polylab/rational.hpp"

namespace polylab {

/// Projective direction representatives of F_q^n: nonzero vectors whose first
/// nonzero coordinate is 1, in code order. There are (q^n - 1)/(q - 1).
std::vector<Point> projective_directions(const FieldSpec& spec, std::size_t n);

/// The representative of the projective class of a nonzero vector.
Point canonical_direction(const FieldSpec& spec, std::span<const Code> v);

/// Reed-Muller code: evaluations of polynomials of degree <= e in m variables
/// on all of F_q^m, coordinates in lexicographic order.
class RMCode {
 public:
  /// Requires e <= q - 2 so that a line minus one point determines the
  /// restriction.
  RMCode(FieldSpec spec, std::size_t m, std::uint32_t e);
  static RMCode max_locality(FieldSpec spec, std::size_t m);  // e = q - 2
  static RMCode robust(FieldSpec spec, std::size_t m);        // e = floor(q / 10)

  const FieldSpec& spec() const { return spec_; }
  std::size_t m() const { return m_; }
  std::uint32_t e() const { return e_; }
  std::size_t length() const { return points_.size(); }
  std::size_t dimension() const { return monomials_.size(); }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  const Point& point(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::span<const Code> p) const;

  /// Lines through any point, one per projective direction.
  std::size_t lines_per_point() const { return directions_.size(); }
  const std::vector<Point>& directions() const { return directions_; }

  std::vector<Code> encode(const MultiPoly& f) const;

  /// Positions read when correcting position i along line `line`: the q - 1
  /// points point(i) + t*direction, t != 0.
  std::span<const std::uint32_t> line_queries(std::size_t i, std::size_t line) const;

  /// Interpolates through the q - 1 queried symbols and returns the value at
  /// t = 0. Never reads position i.
  Code decode_along(std::span<const Code> word, std::size_t i, std::size_t line) const;

 private:
  FieldSpec spec_;
  std::size_t m_;
  std::uint32_t e_;
  std::vector<Point> points_;
  std::vector<Point> directions_;
  std::vector<Exponents> monomials_;
  std::vector<std::uint32_t> queries_;  // [i][line][k], flattened
  std::vector<Code> weights_;           // Lagrange weights at t = 0, per k
};

/// Picks a uniformly random line through point(i) and decodes along it.
Code local_correct(const RMCode& code, std::span<const Code> word, std::size_t i, std::mt19937_64& rng);

struct DecodingStats {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
  Rational rate() const { return total == 0 ? Rational(0) : Rational(successes, total); }
};

/// Every position and every line on an uncorrupted codeword.
DecodingStats zero_error_enumeration(const RMCode& code, std::span<const Code> codeword);

/// Every (i, j != i, nonzero error value, line) with one error at j.
DecodingStats single_error_enumeration(const RMCode& code, const std::vector<Code>& codeword,
                                       Exec exec = Exec::parallel);

/// Seeded Monte Carlo decodes with `errors` in {0, 1} corruptions.
DecodingStats decode_trials(const RMCode& code, const std::vector<Code>& codeword, std::uint64_t trials,
                            unsigned errors, std::uint64_t seed, Exec exec = Exec::parallel);

/// Ordered list of vectors in F^d with a query bound r and fraction delta.
struct LCCList {
  FieldSpec spec;
  std::vector<std::vector<Code>> vectors;
  std::size_t r = 2;
  Rational delta = 0;
};

/// Column j is the monomial evaluation vector at point(j), so codeword
/// symbol j is <coefficients, v_j>. r = q - 1.
LCCList rm_lcc_list(const RMCode& code, const Rational& delta);

std::size_t span_dimension(const LCCList& v);

/// Whether {v_j : j in subset} spans v_target.
bool spans(const LCCList& v, std::span<const std::size_t> subset, std::size_t target);

struct Matching {
  std::size_t k = 0;
  /// families[i] = pairwise disjoint subsets of [n] \ {i}, each spanning v_i.
  std::vector<std::vector<std::vector<std::size_t>>> families;
};

/// Thrown when some index runs out of spanning r-sets before reaching
/// ceil(delta n / r); carries the index and the excluded coordinates.
class MatchingFailure : public std::runtime_error {
 public:
  MatchingFailure(std::size_t index, std::vector<std::size_t> excluded);
  std::size_t index;
  std::vector<std::size_t> excluded;
};

/// Greedy: for each i, repeatedly take the smallest (then lexicographically
/// first) spanning set of size <= r avoiding i and every covered index.
Matching build_matchings(const LCCList& v);

/// One family per position: the query sets of all lines through it.
Matching pencil_matchings(const RMCode& code);

/// Disjointness, size and span conditions of a matching.
bool verify_matching(const LCCList& v, const Matching& mt);

struct LccMatrixReport {
  Matrix<FiniteField> matrix;  // n*k rows, n columns
  std::size_t rank = 0;
  std::size_t span_dim = 0;
  bool annihilates = false;   // A * B = 0
  bool pattern_ok = false;    // row supports, column floors, block disjointness
};

/// Row for R in M_i: 1 at i and -c_j at j in R, where v_i = sum c_j v_j.
LccMatrixReport lcc_matrix(const LCCList& v, const Matching& mt);

struct KatzTrevisanProbe {
  std::optional<std::size_t> smallest;  // smallest spanning sample found
  double bound = 0.0;                   // n^((r-1)/r) log n
  double mu = 0.0;                      // inclusion probability used
};

/// Samples coordinate subsets with inclusion probability mu (default
/// log n * n^(-1/r), clamped to 1) and keeps the smallest spanning one.
KatzTrevisanProbe katz_trevisan_probe(const LCCList& v, std::uint64_t trials, std::mt19937_64& rng,
                                      std::optional<double> mu = std::nullopt);

}  // namespace polylab
