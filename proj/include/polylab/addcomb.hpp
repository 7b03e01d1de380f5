#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polylab/exec.hpp"
#include "polylab/rational.hpp"

namespace polylab {

enum class GroupKind { integers, fp, fp_vec, z3_vec };

/// The ambient group of a set. Vector groups encode an element as the
/// base-p integer sum x_i p^i (coordinate 0 least significant).
struct Group {
  GroupKind kind = GroupKind::integers;
  std::int64_t p = 0;
  std::size_t dim = 1;

  static Group integers() { return {}; }
  static Group fp(std::int64_t p);
  static Group fp_vec(std::int64_t p, std::size_t dim);
  static Group z3_vec(std::size_t dim) { return fp_vec(3, dim).with_kind(GroupKind::z3_vec); }

  bool finite() const { return kind != GroupKind::integers; }
  bool has_ring() const { return kind == GroupKind::integers || kind == GroupKind::fp; }
  std::int64_t order() const;  // finite groups only
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const;  // ring groups only
  /// Integer multiple (scalar multiple in vector groups).
  std::int64_t scale(std::int64_t lambda, std::int64_t a) const;
  std::vector<std::int64_t> coords(std::int64_t a) const;
  std::int64_t encode(const std::vector<std::int64_t>& coords) const;
  bool contains(std::int64_t a) const;
  std::string tag() const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  Group with_kind(GroupKind k) const {
    Group g = *this;
    g.kind = k;
    return g;
  }
};

/// Sorted, duplicate-free subset of a group.
class AbelianSet {
 public:
  AbelianSet() = default;
  AbelianSet(Group g, std::vector<std::int64_t> elements);
  static AbelianSet from_vectors(Group g, const std::vector<std::vector<std::int64_t>>& vectors);

  const Group& group() const { return group_; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::int64_t x) const;

  nlohmann::json to_json() const;
  static AbelianSet from_json(const nlohmann::json& j);

  friend bool operator==(const AbelianSet&, const AbelianSet&) = default;

 private:
  Group group_;
  std::vector<std::int64_t> elements_;
};

AbelianSet sumset(const AbelianSet& a, const AbelianSet& b);
AbelianSet difference(const AbelianSet& a, const AbelianSet& b);
/// Integers and F_p only; integer sets capped at 1000 elements.
AbelianSet productset(const AbelianSet& a, const AbelianSet& b);
AbelianSet dilate(std::int64_t lambda, const AbelianSet& a);
AbelianSet negate(const AbelianSet& a);
/// k-fold sumset A + ... + A.
AbelianSet iterated_sum(const AbelianSet& a, unsigned k);

/// Number of (a, b, a', b') with a + b = a' + b'.
std::uint64_t quadruple_count(const AbelianSet& a, const AbelianSet& b);
/// |A|^2 |B|^2 / Q(A, B).
Rational energy(const AbelianSet& a, const AbelianSet& b);

struct LambdaChoice {
  std::int64_t lambda = 1;
  std::size_t size = 0;     // |A + lambda A|
  bool meets_bound = false; // 2 size >= min(|A|^2, p)
};
/// Scans every nonzero lambda in F_p and keeps the first maximizer.
LambdaChoice find_good_lambda(const AbelianSet& a);

/// {lambda != 0 : |A + lambda A| <= K |A|}.
AbelianSet stab(const AbelianSet& a, const Rational& k);

/// 3A^2 - 3A^2 with A^2 = A.A.
AbelianSet growth_set(const AbelianSet& a);
/// 2 |3A^2 - 3A^2| >= min(|A|^2, p).
bool growth_bound_holds(const AbelianSet& a, const AbelianSet& growth);

struct BsgReport {
  std::size_t n = 0;
  std::size_t popular = 0;        // |P|
  std::size_t h_edges = 0;        // |H|
  Rational alpha = 0;             // |H| / N^2
  std::optional<std::size_t> chosen_u;
  std::size_t v_prime = 0;        // |V'|
  std::size_t a_prime = 0;        // |V''|
  std::size_t b_prime = 0;        // |U'|
  std::size_t diff_size = 0;      // |A' - B'|
  std::size_t sum_size = 0;       // |A' + B'|
  std::uint64_t min_three_paths = 0;
  double size_exponent = 0.0;     // c with |A'| = N / K^c (min over both sides)
  double sum_exponent = 0.0;      // c with |A' + B'| = K^c N
  std::string note;               // set when the procedure degenerates
};

struct BsgResult {
  AbelianSet a_prime;
  AbelianSet b_prime;
  BsgReport report;
};

/// Constructive Balog-Szemeredi-Gowers on a pair graph of index pairs into
/// A x B (|A| = |B| = N). `eps` is the bad-pair fraction, default 1/4.
BsgResult bsg_extract(const AbelianSet& a, const AbelianSet& b,
                      const std::vector<std::pair<std::size_t, std::size_t>>& edges, const Rational& k,
                      const Rational& eps = Rational(1, 4), Exec exec = Exec::parallel);

struct RuzsaCover {
  std::vector<std::int64_t> b_list;
  std::size_t three_a_size = 0;
  std::size_t symmetric_size = 0;  // |A u -A u {0}|
  std::uint64_t span_size = 0;     // |span(A)| = p^rank
  bool covered = false;            // 3A inside union of 2A + b_i
  bool disjoint = false;           // A + b_i pairwise disjoint
};
/// Greedy maximal packing of translates A + b, b in 3A, for A in F_p^d.
RuzsaCover ruzsa_cover(const AbelianSet& a);

struct SumProductStats {
  std::size_t sum = 0;
  std::size_t product = 0;
  std::size_t max = 0;
  std::size_t product_difference = 0;  // |AA - AA|
  double elekes_ratio = 0.0;           // max / |A|^(5/4)
  double gk_ratio = 0.0;               // |AA - AA| / (|A|^2 / log |A|), 0 when |A| = 1
};
SumProductStats sum_product_stats(const AbelianSet& a);

}  // namespace polylab
