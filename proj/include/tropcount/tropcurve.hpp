#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropcount/lattice.hpp"
#include "tropcount/qpoly.hpp"

namespace tropcount {

struct NotTrivalent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FlatVertex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnfixedEndWeight : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyRealPart : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct VanishingConditionsUnmet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RationalPoint {
  mpq_class x, y;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Kinds of reduced point conditions.
enum class ConditionKind {
  InteriorSimple,    ///< a real point of (K*)^2, multiplicity 1
  InteriorPair,      ///< a conjugate pair reduced to one tropical point of multiplicity 2
  BoundaryTangency,  ///< tangency of order m to a boundary divisor (fixed end of weight m)
  BoundaryPair,      ///< a conjugate pair on a boundary divisor (fixed end of weight 2)
};

std::string to_string(ConditionKind kind);

/// Cell of a dual subdivision: a lattice triangle or parallelogram, counterclockwise.
struct SubdivisionCell {
  std::vector<LatticePoint> corners;
  bool is_triangle() const { return corners.size() == 3; }
  friend auto operator<=>(const SubdivisionCell&, const SubdivisionCell&) = default;
};

struct DualSubdivision {
  LatticePolygon polygon;
  /// Sorted canonically.
  std::vector<SubdivisionCell> cells;
  /// cell index of every curve vertex
  std::vector<int> vertex_cell;
  /// one dual segment per curve edge (the segment adjacent to the edge's `from` vertex)
  std::vector<std::pair<LatticePoint, LatticePoint>> edge_segment;
};

struct CurveVertex {
  std::optional<RationalPoint> position;
};

/// A bounded edge (`to` set) or an end (`to` empty). `direction` is primitive
/// and points from `from` towards `to` (or towards infinity).
struct CurveEdge {
  int from = -1;
  std::optional<int> to;
  std::int64_t weight = 1;
  LatticeVector direction;
  bool is_end() const { return !to.has_value(); }
};

enum class MarkSite { EdgeInterior, Vertex, EndAtInfinity };

struct Marking {
  int condition = 0;
  ConditionKind kind = ConditionKind::InteriorSimple;
  MarkSite site = MarkSite::EdgeInterior;
  /// edge index for EdgeInterior / EndAtInfinity, vertex index for Vertex
  int index = 0;
};

/// Combinatorial plane tropical curve with optional exact positions.
struct PlaneTropicalCurve {
  std::vector<CurveVertex> vertices;
  std::vector<CurveEdge> edges;
  std::vector<Marking> markings;
  std::optional<DualSubdivision> subdivision;

  std::vector<int> ends() const;
  std::vector<int> incident(int vertex) const;
  /// weight * direction of edge e as seen from vertex v (pointing away from v).
  LatticeVector outgoing(int e, int v) const;
  int genus() const;
  /// Degree: multiset of weighted end directions, sorted.
  std::vector<LatticeVector> degree() const;
};

std::int64_t vertex_multiplicity(const PlaneTropicalCurve& c, int v);
/// Interior lattice points of the triangle dual to v (via Pick).
std::int64_t vertex_interior_points(const PlaneTropicalCurve& c, int v);

/// Orientation of the halves of every edge: out_at_from / out_at_to tell
/// whether the edge leaves the respective endpoint.
struct RegularOrientation {
  std::vector<bool> out_at_from;
  std::vector<bool> out_at_to;
};

struct ValidationReport {
  bool balanced = true;
  bool trivalent = true;
  bool connected = true;
  bool regular = true;
  std::optional<RegularOrientation> orientation;
  std::vector<std::string> problems;
  bool ok() const { return balanced && trivalent && connected && regular; }
};

ValidationReport validate(const PlaneTropicalCurve& c);

/// Whether the graph of finite vertices and bounded edges is connected
/// (reducible curves are not).
bool is_connected(const PlaneTropicalCurve& c);

/// |Delta| + g - 1 + #{interior conditions}; interior pairs count once each.
int moduli_dim(int degree_size, int genus, int interior_conditions);

struct ImComponent {
  std::vector<int> vertices;  ///< finite vertices of the component
  std::vector<int> edges;     ///< even edges, ends included
  int infinite_vertices = 0;  ///< number of even ends (their points at infinity)
  int euler_characteristic = 0;
  int real_contacts = 0;  ///< |K cap Gamma_re|
};

/// Classification of edges by weight parity.
struct ParitySplit {
  std::vector<bool> edge_odd;
  std::vector<bool> vertex_in_re;  ///< endpoint of some odd edge
  std::vector<bool> vertex_in_im;  ///< endpoint of some even edge
  std::vector<ImComponent> im_components;
  bool re_empty() const;
};

ParitySplit parity_split(const PlaneTropicalCurve& c);

mpq_class complex_weight(const PlaneTropicalCurve& c);
/// prod [mu(V)] / prod [wt(E)] without the unfixed-end precondition.
QProduct refined_weight_formula(const PlaneTropicalCurve& c);
/// Relative refined weight; throws UnfixedEndWeight for an unfixed end of weight > 1.
QProduct refined_weight(const PlaneTropicalCurve& c);
mpq_class real_signed_weight(const PlaneTropicalCurve& c, const ParitySplit& split);
bool yneg1_limit_matches_signed(const PlaneTropicalCurve& c, const ParitySplit& split);

struct VanishingCheck {
  bool ok = true;
  std::vector<int> failed;  ///< numbers 1..5 of the failed conditions
  std::vector<std::string> reasons;
};

VanishingCheck check_vanishing_conditions(const PlaneTropicalCurve& c, const ParitySplit& split,
                                          int genus);
mpq_class mixed_marked_weight(const PlaneTropicalCurve& c, const ParitySplit& split, int genus);

DualSubdivision dual_subdivision(const PlaneTropicalCurve& c);

/// Builds a curve from a subdivision: triangles become vertices, chains of
/// parallelogram sides become single edges, boundary segments become ends.
/// Returns the curve and, per subdivision segment (sorted endpoints), the edge index.
struct CurveFromSubdivision {
  PlaneTropicalCurve curve;
  std::vector<std::pair<std::pair<LatticePoint, LatticePoint>, int>> segment_edge;
  int edge_of(LatticePoint a, LatticePoint b) const;
};
CurveFromSubdivision curve_from_subdivision(const LatticePolygon& polygon,
                                            std::vector<SubdivisionCell> cells);

nlohmann::json to_json(const PlaneTropicalCurve& c);

}  // namespace tropcount
