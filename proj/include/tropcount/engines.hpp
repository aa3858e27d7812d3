#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tropcount/lattice.hpp"
#include "tropcount/qpoly.hpp"
#include "tropcount/tropcurve.hpp"

namespace tropcount {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedConfiguration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One reduced point condition. `side_normal` is the outward primitive normal
/// of the boundary side for boundary conditions.
struct Condition {
  ConditionKind kind = ConditionKind::InteriorSimple;
  LatticeVector side_normal{};
  int order = 1;  ///< tangency order m; 2 for boundary pairs

  /// max{|u|, 1} with interior pairs counting as two points.
  int dimension_weight() const;
  bool is_boundary() const {
    return kind == ConditionKind::BoundaryTangency || kind == ConditionKind::BoundaryPair;
  }
  friend bool operator==(const Condition&, const Condition&) = default;
};

std::string to_string(const Condition& c);

struct PointConditionType {
  std::vector<Condition> conditions;

  int dimension_total() const;
  int pair_count() const;
};

/// Throws DimensionMismatch unless sum of max{|u_i|, 1} = |dP| + g - 1, and
/// UnsupportedConfiguration for boundary sides that P does not have.
void check_dimension(const LatticePolygon& polygon, int genus, const PointConditionType& type);

/// Points on a line ordered by an integral functional lambda(x, y) = a x + b y,
/// injective on the lattice points of P. Only the order of the conditions
/// matters to the counts.
struct MikhalkinConfig {
  LatticeVector lambda;
  std::vector<Condition> order;  ///< conditions in increasing lambda order
};

/// lambda(x, y) = (S + 1) x - y where S is the coordinate span of P; this is
/// the order of x - eps y for every 0 < eps <= 1 / (S + 1).
LatticeVector default_lambda(const LatticePolygon& polygon);

/// The 8 functionals (+-(S+1), +-1) and (+-1, +-(S+1)), default first,
/// followed by 16 of the form (S+1)(+-x +- y) + (+-x or +-y), which step
/// through the diagonal sides one unit at a time.
std::vector<LatticeVector> lambda_variants(const LatticePolygon& polygon);

/// Orders the conditions for a Mikhalkin configuration: boundary conditions
/// on sides through the lambda-minimal vertex come first, those on sides
/// through the lambda-maximal vertex last, interior ones keep their relative
/// order in between. Every boundary side must be walked in unit steps of
/// lambda. Without an explicit lambda the first suitable variant is used.
/// Throws UnsupportedConfiguration when no functional fits.
MikhalkinConfig make_config(const LatticePolygon& polygon, const PointConditionType& type,
                            std::optional<LatticeVector> lambda = std::nullopt);

using LatticePath = std::vector<LatticePoint>;

/// All lambda-increasing paths from the lambda-minimal to the lambda-maximal
/// vertex with the given number of steps, in lexicographic order of the
/// lambda ranks of their points.
std::vector<LatticePath> enumerate_paths(const LatticePolygon& polygon, int steps,
                                         std::optional<LatticeVector> lambda = std::nullopt);

/// Cells produced by dividing one side of a path.
using CellSet = std::vector<SubdivisionCell>;

struct DivideOptions {
  int max_unfixed_end_weight = 1;
  /// Steps that are fixed ends (tangency or boundary pair), exempt from the
  /// end weight bound.
  std::vector<bool> fixed_step;
  /// Path vertex index whose turn triangle is cut before anything else (a
  /// double point at a vertex), or -1.
  int forced_vertex = -1;
};

/// Every way to compress the path up to the boundary chain on both sides;
/// each entry is a full subdivision of P.
std::vector<CellSet> divide_path(const LatticePolygon& polygon, const LatticePath& path, LatticeVector lambda,
                                 const DivideOptions& options = {});

struct EnumeratedCurve {
  PlaneTropicalCurve curve;  ///< with markings and subdivision
  LatticePath path;
  /// Whether a double point sits at a vertex.
  bool pair_at_vertex = false;
};

struct EnumerationResult {
  std::vector<EnumeratedCurve> curves;
  long long paths_examined = 0;
};

struct EnumerateOptions {
  int jobs = 1;
  /// Filters the curves to the given genus; the mixed scheme keeps every
  /// genus and filters through the vanishing conditions instead.
  bool filter_genus = true;
};

/// Curves through a configuration in Mikhalkin position, via lattice paths.
/// An interior pair produces two families: the double point inside an edge
/// (ends up to weight 2 allowed), and the double point at a vertex.
EnumerationResult enumerate_curves(const LatticePolygon& polygon, int genus, const MikhalkinConfig& config,
                                   const EnumerateOptions& options = {});

// ---------------------------------------------------------------------------
// independent oracle

/// A point condition with an explicit position. Boundary conditions only use
/// `line`: the end lies on the line <side_normal^perp, x> = line.
struct PlacedCondition {
  Condition condition;
  RationalPoint position;
  mpq_class line = 0;
};

/// Explicit exact coordinates realizing a Mikhalkin configuration: point k
/// sits at t_k * v with v perpendicular-ish to lambda and rapidly growing t_k.
std::vector<PlacedCondition> mikhalkin_positions(const LatticePolygon& polygon, const MikhalkinConfig& config);

struct BruteOptions {
  /// Accept curves whose ends have weight up to this bound (unfixed ends).
  int max_unfixed_end_weight = 1;
};

/// Exhaustive oracle: enumerates the lattice subdivisions of P into triangles
/// and parallelograms with the right number of vertices, assigns every
/// condition to an edge, solves the position equations exactly and keeps the
/// strictly convex solutions. Independent of the lattice-path machinery.
/// Rejects interior pairs. Throws DegenerateConfiguration when the points are
/// not generic for some combinatorial type.
EnumerationResult brute_enumerate(const LatticePolygon& polygon, int genus,
                                  const std::vector<PlacedCondition>& conditions,
                                  const BruteOptions& options = {});

// ---------------------------------------------------------------------------
// counting

enum class Scheme { Complex, Refined, Real, Mixed };
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);

/// Sum of per-curve weights. For the refined scheme, the numerator is the sum
/// of prod [mu(V)] and the denominator the common product of fixed end
/// weights.
struct Tally {
  Scheme scheme = Scheme::Complex;
  mpq_class rational = 0;
  QPoly numerator;
  std::vector<int> denominator;
  long long curves = 0;  ///< curves with a nonzero contribution
  long long enumerated = 0;
};

/// Per-curve weight for a scheme; nullopt when a mixed curve fails the
/// vanishing conditions.
std::optional<mpq_class> scalar_weight(const EnumeratedCurve& c, Scheme scheme, int genus);

Tally tally(const EnumerationResult& result, Scheme scheme, int genus);

}  // namespace tropcount
