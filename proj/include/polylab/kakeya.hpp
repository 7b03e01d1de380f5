#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "polylab/exec.hpp"
#include "polylab/field.hpp"
#include "polylab/poly.hpp"

namespace polylab {

/// A point set together with, for each projective direction x, a base point
/// y such that the whole line {y + t x} lies in the set.
struct KakeyaWitness {
  FieldSpec spec;
  std::size_t n = 0;
  std::vector<Point> points;          // sorted, unique
  std::map<Point, Point> base_of;     // canonical direction -> base point
};

/// A point set with, for every point z outside it, a direction x such that
/// z + t x lies in the set for all t != 0.
struct NikodymWitness {
  FieldSpec spec;
  std::size_t n = 0;
  std::vector<Point> points;
  std::map<Point, Point> line_of;     // outside point -> direction
};

/// The quadratic family {(v_i^2/4 + v_i t)_i, t}: one line per direction
/// with last coordinate 1. q must be an odd prime.
std::vector<Point> kakeya_core(std::uint32_t q, std::size_t n);

/// Core plus one origin-anchored line per direction with last coordinate 0.
KakeyaWitness build_kakeya(std::uint32_t q, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);

/// Checks every projective direction has a stored line inside the set.
bool verify_kakeya(const KakeyaWitness& w, std::uint64_t cap = kDefaultEnumerationCap);

/// Searches any point set for a base point in every direction.
std::optional<KakeyaWitness> find_kakeya_witness(const FieldSpec& spec, std::size_t n, std::vector<Point> points,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

/// M = {t x : t in F_q, x in K}. Throws on an invalid Kakeya witness.
NikodymWitness nikodym_from_kakeya(const KakeyaWitness& w, std::uint64_t cap = kDefaultEnumerationCap);

bool verify_nikodym(const NikodymWitness& w, std::uint64_t cap = kDefaultEnumerationCap);

struct LowerBoundCertificate {
  std::size_t rank = 0;
  std::size_t monomial_count = 0;   // C(n + q - 1, n)
  std::uint64_t implied_lower_bound = 0;
};

/// Rank of the evaluation matrix of all monomials of degree <= q - 1 on the
/// set. Throws std::logic_error if the rank falls short of full column rank.
LowerBoundCertificate certify_lower_bound(const FieldSpec& spec, std::size_t n, const std::vector<Point>& points,
                                          Exec exec = Exec::parallel);

/// q^n / n! as an exact comparison target: returns true iff count >= q^n / n!.
bool meets_factorial_bound(std::uint64_t count, std::uint64_t q, std::size_t n);

nlohmann::json to_json(const KakeyaWitness& w);
KakeyaWitness kakeya_from_json(const nlohmann::json& j);

}  // namespace polylab
