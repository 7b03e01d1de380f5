#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "polylab/field.hpp"
#include "polylab/rational.hpp"

namespace polylab {

using Point2 = std::array<Rational, 2>;
using Point3 = std::array<Rational, 3>;

/// aX + bY + c = 0 with (a, b) != 0, scaled so the first nonzero of a, b is 1.
struct Line2 {
  Rational a, b, c;

  static Line2 make(Rational a, Rational b, Rational c);
  static Line2 through(const Point2& p, const Point2& q);
  bool contains(const Point2& p) const { return a * p[0] + b * p[1] + c == 0; }

  friend bool operator==(const Line2&, const Line2&) = default;
  friend bool operator<(const Line2& x, const Line2& y);
};

/// base + t * dir, dir scaled to first nonzero coordinate 1 and base moved so
/// its coordinate at that position is 0.
struct Line3 {
  Point3 base;
  Point3 dir;

  static Line3 make(const Point3& base, const Point3& dir);
  bool contains(const Point3& p) const;

  friend bool operator==(const Line3&, const Line3&) = default;
  friend bool operator<(const Line3& x, const Line3& y);
};

std::uint64_t count_incidences(const std::vector<Point2>& points, const std::vector<Line2>& lines);

/// Both Cauchy-Schwarz forms with constant 2, decided exactly:
/// I <= 2(|P||L|^(1/2) + |L|) and I <= 2(|L||P|^(1/2) + |P|).
struct CsCheck {
  bool point_form = false;
  bool line_form = false;
  bool both() const { return point_form && line_form; }
};
CsCheck cs_bounds(std::uint64_t incidences, std::uint64_t n_points, std::uint64_t n_lines);

/// Distinct lines through at least two of the points, with their point counts.
struct SpannedLine {
  Line2 line;
  std::size_t points = 0;
};
std::vector<SpannedLine> spanned_lines(const std::vector<Point2>& points);

/// Lines containing at least k of the points (k >= 2).
std::vector<Line2> rich_lines(const std::vector<Point2>& points, std::size_t k);

struct BeckStats {
  std::size_t lines_spanned = 0;
  std::size_t max_collinear = 0;
  double collinear_ratio = 0.0;  // max_collinear / |P|
  double lines_ratio = 0.0;      // lines_spanned / |P|^2
};
BeckStats beck_stats(const std::vector<Point2>& points);

/// {1..cols} x {1..rows} integer grid, row-major in y then x.
std::vector<Point2> integer_grid(std::int64_t cols, std::int64_t rows);

/// [M] x [2M^2] with the M^3 lines y = ax + b, a in [M], b in [M^2]:
/// each line meets the grid in M points, so I = M^4.
struct StGrid {
  std::vector<Point2> points;
  std::vector<Line2> lines;
};
StGrid st_grid(std::int64_t m);

/// The 3N^2 axis-parallel lines through the integer grid [N]^3.
std::vector<Line3> joints_grid(std::int64_t n);

struct JointsReport {
  std::vector<Point3> joints;
  std::size_t count() const { return joints.size(); }
};
/// Points on at least three lines whose directions span 3-space.
JointsReport count_joints(const std::vector<Line3>& lines);

Rational squared_distance(const Point2& p, const Point2& q);

struct DistanceStats {
  std::uint64_t q_all = 0;              // over P^4, a = b pairs included
  std::uint64_t q_nondegenerate = 0;    // a != b and c != d
  std::size_t distinct_with_zero = 0;   // distinct values of |a - b|^2 over P^2
  std::size_t distinct_nonzero = 0;     // d(P)
  Rational lower_bound = 0;             // |P|^4 / q_all
  Rational nondegenerate_bound = 0;     // (|P|^2 - |P|)^2 / q_nondegenerate
  std::uint64_t unit_pairs = 0;         // ordered pairs at distance 1
  bool bound_holds = false;             // distinct_with_zero >= lower_bound
  bool nondegenerate_holds = false;     // distinct_nonzero >= nondegenerate_bound
};
DistanceStats distance_stats(const std::vector<Point2>& points, std::size_t cap = 4096);

struct FloatLine3 {
  std::array<double, 3> base;
  std::array<double, 3> dir;
  std::size_t from = 0, to = 0;  // rotations carrying point `from` to point `to`
};

struct ElekesSharirReport {
  std::vector<FloatLine3> lines;            // |P|^2
  std::uint64_t approx_intersections = 0;   // ordered pairs of lines (a,c),(b,d), a != b, meeting within tol
  std::uint64_t exact_rotations = 0;        // quadruples a != b, |a-b| = |c-d|, c - a != d - b
  std::uint64_t translations = 0;           // quadruples a != b with c - a = d - b
  double tolerance = 1e-9;
};
/// Rotations taking a to b form the line (m, 0) + s (J(b - a), 1) in
/// (centre_x, centre_y, cot(theta/2)/2) coordinates, m the midpoint and J a
/// quarter turn. Throws on repeated points.
ElekesSharirReport elekes_sharir_lines(const std::vector<Point2>& points, double tolerance = 1e-9);

// ------------------------------------------------------- projective plane

/// Homogeneous triple over F_p, first nonzero coordinate 1.
struct ProjPoint {
  std::array<Code, 3> x{};
  static ProjPoint make(const FieldSpec& spec, std::array<Code, 3> v);
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// aX + bY + c = 0 over F_p, normalized with first nonzero coefficient 1.
struct LineFp {
  Code a = 0, b = 0, c = 0;
  static LineFp make(const FieldSpec& spec, Code a, Code b, Code c);
  static LineFp through(const FieldSpec& spec, std::array<Code, 2> p, std::array<Code, 2> q);
  bool contains(const FieldSpec& spec, std::array<Code, 2> p) const;
  friend bool operator==(const LineFp&, const LineFp&) = default;
};

std::uint64_t count_incidences_fp(const FieldSpec& spec, const std::vector<std::array<Code, 2>>& points,
                                  const std::vector<LineFp>& lines);

/// (x, y) -> (1 : x : y).
ProjPoint embed(const FieldSpec& spec, std::array<Code, 2> p);
/// (0 : -b : a), the common point of all lines parallel to aX + bY + c = 0.
ProjPoint infinity_of(const FieldSpec& spec, const LineFp& line);

/// Line of PG(2, p): {x : l . x = 0}, coefficients normalized like points.
struct ProjLine {
  std::array<Code, 3> l{};
  static ProjLine make(const FieldSpec& spec, std::array<Code, 3> v);
  bool contains(const FieldSpec& spec, const ProjPoint& p) const;
  friend bool operator==(const ProjLine&, const ProjLine&) = default;
};

/// Invertible 3 x 3 matrix over F_p acting on column vectors.
struct ProjMap {
  FieldSpec spec;
  std::array<std::array<Code, 3>, 3> m{};

  static ProjMap identity(const FieldSpec& spec);
  /// Throws PreconditionError on a singular matrix.
  static ProjMap make(const FieldSpec& spec, std::array<std::array<Code, 3>, 3> m);
  ProjMap inverse() const;
  ProjPoint apply(const ProjPoint& p) const;
  /// Image of a line: coefficients l M^-1.
  ProjLine apply(const ProjLine& l) const;
};

/// A map sending p0 to (0:1:0) and p1 to (0:0:1): afterwards lines through
/// p0 are horizontal and lines through p1 vertical in the chart (1:x:y).
ProjMap send_to_infinity(const FieldSpec& spec, const ProjPoint& p0, const ProjPoint& p1);

std::vector<ProjPoint> projective_points(const FieldSpec& spec);
std::vector<ProjLine> projective_lines(const FieldSpec& spec);

nlohmann::json to_json(const Point2& p);
Point2 point2_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Line2& l);
Line2 line2_from_json(const nlohmann::json& j);

}  // namespace polylab
