#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "polylab/exec.hpp"
#include "polylab/field.hpp"
#include "polylab/kakeya.hpp"
#include "polylab/poly.hpp"
#include "polylab/rational.hpp"

namespace polylab {

/// Probability vector over an ordered finite domain. Exact mode stores
/// rationals summing to exactly 1; float mode stores doubles within 1e-12.
class Distribution {
 public:
  using Label = std::vector<std::int64_t>;

  static Distribution exact(std::vector<Label> domain, std::vector<Rational> probs);
  static Distribution floating(std::vector<Label> domain, std::vector<double> probs);
  static Distribution uniform(std::vector<Label> domain);
  /// Abstract indices 0..size-1.
  static std::vector<Label> index_domain(std::size_t size);
  /// All of F_q^n in code order, one label per point.
  static std::vector<Label> field_domain(const FieldSpec& spec, std::size_t n);

  bool is_exact() const { return exact_; }
  std::size_t size() const { return domain_.size(); }
  const std::vector<Label>& domain() const { return domain_; }
  const std::vector<Rational>& exact_probs() const;
  double prob(std::size_t i) const;
  Rational exact_prob(std::size_t i) const;
  std::size_t support_size() const;

  nlohmann::json to_json() const;
  static Distribution from_json(const nlohmann::json& j);

 private:
  std::vector<Label> domain_;
  bool exact_ = true;
  std::vector<Rational> exact_p_;
  std::vector<double> float_p_;
};

/// -log2 of the largest probability.
double min_entropy(const Distribution& d);

/// Half the L1 distance. Throws unless the domains agree.
double statistical_distance(const Distribution& a, const Distribution& b);
Rational statistical_distance_exact(const Distribution& a, const Distribution& b);

/// Least eps with d eps-close to some distribution of min-entropy >= k:
/// sum of max(p_x - 2^-k, 0), or 1 when the domain is smaller than 2^k.
double closeness_to_min_entropy(const Distribution& d, double k);
/// Same for integer k, exactly.
Rational closeness_to_min_entropy_exact(const Distribution& d, unsigned k);

/// Y = f(X) as a table over point indices of F_q^n.
struct AdversaryMap {
  std::vector<std::uint32_t> table;
};

/// The adversary whose line through X stays inside the Nikodym set built
/// from a Kakeya witness: Y(x) is the base point of x's direction.
AdversaryMap nikodym_adversary(const KakeyaWitness& w);

/// Exact law of Z = aX + bY(X), a, b uniform in F_q, X ~ source.
Distribution merger_distribution(const FieldSpec& spec, std::size_t n, const Distribution& source,
                                 const AdversaryMap& adversary, std::uint64_t cap = kDefaultEnumerationCap,
                                 Exec exec = Exec::parallel);

/// Total probability of the labels in `event` (labels are points of F_q^n).
Rational probability_of(const Distribution& d, const std::vector<Point>& event);

struct GrowthReport {
  std::size_t size = 0;  // |A + B C|
  double ratio = 0.0;    // log |A+BC| / log |A|, 0 when |A| = 1
};
GrowthReport biw_growth(const FieldSpec& spec, const std::vector<Code>& a, const std::vector<Code>& b,
                        const std::vector<Code>& c);

/// Law of a + b c for independent a ~ da, b ~ db, c ~ dc over F_q (domains
/// must be field_domain(spec, 1)).
Distribution biw_combine(const FieldSpec& spec, const Distribution& da, const Distribution& db,
                         const Distribution& dc);

/// Element a + b w of Z[w], w a primitive cube root of unity.
struct Eisenstein {
  std::int64_t a = 0;
  std::int64_t b = 0;
  /// |a + b w|^2
  __int128 norm() const { return static_cast<__int128>(a) * a - static_cast<__int128>(a) * b +
                                 static_cast<__int128>(b) * b; }
};

using Z3Vector = std::vector<std::uint8_t>;

struct BiasReport {
  Eisenstein sum;          // sum over A x B of w^<a,b>
  double value = 0.0;      // |sum| / (|A||B|)
  double bound = 0.0;      // sqrt(3^n / (|A||B|))
  bool within_bound = false;  // exact: norm <= 3^n |A||B|
};

/// |E w^(k<a,b>)| over a in A, b in B, inner product mod 3, k = omega_power.
BiasReport bias(const std::vector<Z3Vector>& a, const std::vector<Z3Vector>& b, unsigned omega_power = 1);

struct FourSumReport {
  double lhs = 0.0;  // bias(A, B)
  double rhs = 0.0;  // bias(4A, 4B)^(1/16)
  bool holds = false;
};

/// Compares bias(A, B) with the bias of the four-fold sum distributions.
FourSumReport foursum_bias_check(const std::vector<Z3Vector>& a, const std::vector<Z3Vector>& b);

/// {(x, x^2) : x in F_{3^k}} with both coordinates written in the
/// polynomial basis, so each element lies in Z_3^(2k).
std::vector<Z3Vector> bourgain_source(unsigned p_exp, std::uint64_t cap = kDefaultEnumerationCap);

/// Exhaustive bias check over all nonempty A, B subsets of Z_3^n, n in {1, 2}.
struct BiasSweepReport {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;
};
BiasSweepReport bias_sweep(unsigned n, Exec exec = Exec::parallel);

}  // namespace polylab
