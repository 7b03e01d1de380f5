#pragma once

// Hot enumeration loops. Every kernel comes as a pair: `*_serial` is the
// plain reference loop, `*_omp` the OpenMP version. Each pair returns
// bit-identical results; the tests hold them to that and bench/ times them.

#include <cstdint>
#include <vector>

#include "polylab/field.hpp"
#include "polylab/poly.hpp"

namespace polylab {
class RMCode;
}

namespace polylab::kernels {

/// Flattened polynomial for tight evaluation loops.
struct CompiledPoly {
  FieldSpec spec;
  std::size_t n_vars = 0;
  std::vector<std::uint32_t> exponents;  // n_vars per term
  std::vector<Code> coeffs;

  static CompiledPoly from(const MultiPoly& f);
  Code evaluate(const Code* point) const;
};

/// Zeros of f over all of F_q^n.
std::uint64_t count_zeros_serial(const CompiledPoly& f);
std::uint64_t count_zeros_omp(const CompiledPoly& f);

/// Rank of a matrix with entries in [0, p), p prime.
std::size_t rank_mod_p_serial(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p);
std::size_t rank_mod_p_omp(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p);

/// Exhaustive check of |sum_{a,b} w^<a,b>|^2 <= 3^n |A||B| over every pair of
/// nonempty subsets of Z_3^n (n = 1 or 2), with exact Z[w] arithmetic.
struct BiasSweep {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  /// max over pairs of norm / (3^n |A||B|), i.e. (bias / bound)^2
  double worst_ratio = 0.0;
  friend bool operator==(const BiasSweep&, const BiasSweep&) = default;
};
BiasSweep bias_sweep_serial(unsigned n);
BiasSweep bias_sweep_omp(unsigned n);

/// counts[x][z] = #{(a, b) in F_q^2 : a*pt(x) + b*pt(adversary[x]) = pt(z)},
/// points of F_q^n indexed in code order (first coordinate most significant).
using MergerCounts = std::vector<std::vector<std::uint32_t>>;
MergerCounts merger_counts_serial(const FieldSpec& spec, std::size_t n,
                                  const std::vector<std::uint32_t>& adversary);
MergerCounts merger_counts_omp(const FieldSpec& spec, std::size_t n,
                               const std::vector<std::uint32_t>& adversary);

/// Decodes every (position i, error position j != i, nonzero error value,
/// line through i) on `word` with a single error injected.
struct DecodeTally {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
  friend bool operator==(const DecodeTally&, const DecodeTally&) = default;
};
DecodeTally lcc_single_error_serial(const RMCode& code, const std::vector<Code>& word);
DecodeTally lcc_single_error_omp(const RMCode& code, const std::vector<Code>& word);

/// `trials` independent decodes; trial t draws (i, j != i, error value, line)
/// from its own stream (seed, t) and injects `errors` corruptions (0 or 1).
DecodeTally lcc_trials_serial(const RMCode& code, const std::vector<Code>& word, std::uint64_t trials,
                              unsigned errors, std::uint64_t seed);
DecodeTally lcc_trials_omp(const RMCode& code, const std::vector<Code>& word, std::uint64_t trials,
                           unsigned errors, std::uint64_t seed);

/// For each right vertex u, the number of unordered bad pairs {v, v'} inside
/// its neighbourhood. `bad` is a symmetric |V| x |V| 0/1 matrix.
std::vector<std::uint64_t> bad_pairs_per_vertex_serial(const std::vector<std::vector<std::uint32_t>>& nbrs,
                                                       const std::vector<std::vector<std::uint8_t>>& bad);
std::vector<std::uint64_t> bad_pairs_per_vertex_omp(const std::vector<std::vector<std::uint32_t>>& nbrs,
                                                    const std::vector<std::vector<std::uint8_t>>& bad);

}  // namespace polylab::kernels
