#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polylab/field.hpp"
#include "polylab/incidence.hpp"
#include "polylab/linalg.hpp"
#include "polylab/rational.hpp"

namespace polylab {

/// Point set for Sylvester-Gallai questions. Rational configurations are
/// affine points (distinct); finite-field configurations are vectors with no
/// zero vector and no two proportional. Both are handled through homogeneous
/// vectors: (1, x) for affine points, v itself otherwise.
class Configuration {
 public:
  static Configuration rational(std::vector<std::vector<Rational>> points);
  static Configuration finite(FieldSpec spec, std::vector<std::vector<Code>> vectors);

  bool is_rational() const { return !spec_.has_value(); }
  const FieldSpec& spec() const { return *spec_; }
  std::size_t size() const;
  std::size_t dim() const { return dim_; }
  const std::vector<std::vector<Rational>>& rational_points() const { return rational_; }
  const std::vector<std::vector<Code>>& vectors() const { return vectors_; }

  /// Rank of the homogeneous vectors: affine dimension + 1 for rational input.
  std::size_t homogeneous_rank() const;

  /// Maximal groups (>= 3 members, sorted) whose homogeneous vectors span a
  /// plane: the special lines.
  std::vector<std::vector<std::size_t>> special_lines() const;

  nlohmann::json to_json() const;
  /// {"field": "Q", "points": [[x, y], ...]} or {"field": {"p": 3}, "vectors": [[..], ...]}.
  static Configuration from_json(const nlohmann::json& j);

 private:
  std::optional<FieldSpec> spec_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Rational>> rational_;
  std::vector<std::vector<Code>> vectors_;
};

struct SgCheck {
  bool holds = false;
  /// Points on the special lines through each point, the point included.
  std::vector<std::size_t> coverage;
  std::optional<std::size_t> failing;  // first point below delta n
};
SgCheck check_sg(const Configuration& c, const Rational& delta);

/// Lines through exactly two of the points. Throws logic_error if the points
/// are not collinear and none is found.
std::vector<Line2> ordinary_lines(const std::vector<Point2>& points);

using Triple = std::array<std::size_t, 3>;

enum class TripleKind {
  /// (i, j, L(i, j)) over an idempotent Latin square: r^2 - r triples, each
  /// element in exactly 3(r - 1), each pair in at most 6.
  latin,
  /// Ordered triples of distinct residues with a + b + c = 0 mod r.
  sum_zero,
};

std::vector<Triple> triple_system(std::size_t r, TripleKind kind = TripleKind::latin);

/// Idempotent Latin square of order r >= 3 used by TripleKind::latin.
std::vector<std::vector<std::size_t>> idempotent_latin_square(std::size_t r);

struct TripleStats {
  std::size_t count = 0;
  std::size_t min_per_element = 0;
  std::size_t max_per_element = 0;
  std::size_t max_per_pair = 0;
  bool distinct_entries = true;
};
TripleStats triple_stats(const std::vector<Triple>& t, std::size_t r);

struct DesignParams {
  std::size_t q = 0;  // largest row support
  std::size_t k = 0;  // smallest column support
  std::size_t t = 0;  // largest intersection of two column supports
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Sparse matrix over Q or a finite field, rows stored as (column, value).
struct DesignMatrix {
  std::optional<FieldSpec> spec;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rational_rows;
  std::vector<std::vector<std::pair<std::size_t, Code>>> code_rows;

  std::size_t rows() const { return spec ? code_rows.size() : rational_rows.size(); }
  std::vector<std::vector<std::size_t>> row_supports() const;
  DesignParams params() const;
  bool is_design(const DesignParams& p) const;
};

/// One row per triple of each special line, the triple's linear dependency.
/// Throws PreconditionError unless the configuration is delta-SG.
struct DesignResult {
  DesignMatrix matrix;
  DesignParams params;
  std::size_t rank = 0;
  std::size_t config_rank = 0;  // homogeneous_rank of the configuration
  Rational bound = 0;           // rank_lower_bound(params, n)
  bool annihilates = false;     // A V = 0
};
DesignResult design_from_config(const Configuration& c, const Rational& delta = 1);

/// n - (q t n / 2k)^2 (may be negative). Throws on k = 0.
Rational rank_lower_bound(std::size_t q, std::size_t k, std::size_t t, std::size_t n);

inline constexpr std::size_t kRankCap = 1u << 22;  // rows * cols

using RationalMatrix = std::vector<std::vector<Rational>>;
using GaussMatrix = std::vector<std::vector<GaussRational>>;

std::size_t exact_rank(const RationalMatrix& m);
std::size_t exact_rank(const GaussMatrix& m);
std::size_t exact_rank(const FieldSpec& spec, const std::vector<std::vector<Code>>& m);
std::size_t exact_rank(const DesignMatrix& m);

/// n / (1 + n (small / large)^2) for a symmetric matrix whose diagonal
/// entries are >= large in absolute value and off-diagonal entries <= small.
Rational diag_rank_bound(const RationalMatrix& m, const Rational& large, const Rational& small);
/// Hermitian version over Q(i); bounds compare squared moduli.
Rational diag_rank_bound(const GaussMatrix& m, const Rational& large, const Rational& small);

}  // namespace polylab
