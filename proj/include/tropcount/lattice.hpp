#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropcount {

struct DegeneratePolygon : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateTriangle : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Integer point or vector of Z^2.
struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr LatticePoint operator-(LatticePoint a) { return {-a.x, -a.y}; }
  friend constexpr LatticePoint operator*(std::int64_t k, LatticePoint a) { return {k * a.x, k * a.y}; }

  std::string to_string() const;
};

using LatticeVector = LatticePoint;

constexpr std::int64_t cross(LatticeVector a, LatticeVector b) { return a.x * b.y - a.y * b.x; }
constexpr std::int64_t dot(LatticeVector a, LatticeVector b) { return a.x * b.x + a.y * b.y; }

/// gcd(|x|, |y|); zero only for the zero vector.
std::int64_t lattice_length(LatticeVector v);

/// v divided by its lattice length. Requires v != 0.
LatticeVector primitive(LatticeVector v);

/// Rotation by +90 degrees.
constexpr LatticeVector rotate_ccw(LatticeVector v) { return {-v.y, v.x}; }

struct LatticeTriangle {
  LatticePoint a, b, c;
};

/// Twice the Euclidean area of the triangle (Mikhalkin multiplicity of the dual vertex).
std::int64_t triangle_multiplicity(const LatticeTriangle& t);

/// Lattice points strictly inside the triangle, via Pick's identity.
std::int64_t interior_points(const LatticeTriangle& t);

/// Lattice points on the boundary of the triangle.
std::int64_t boundary_points(const LatticeTriangle& t);

/// Convex lattice polygon stored counterclockwise, starting at the
/// lexicographically smallest vertex, without collinear consecutive vertices.
class LatticePolygon {
 public:
  /// Builds the canonical form. Throws DegeneratePolygon when the points are
  /// not the vertices of a nondegenerate convex polygon.
  explicit LatticePolygon(std::vector<LatticePoint> vertices);

  /// conv{(0,0), (d,0), (0,d)}.
  static LatticePolygon triangle(int d);

  /// Parses "triangle:d" or "poly:(x1,y1);(x2,y2);...".
  static LatticePolygon parse(const std::string& text);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Twice the area.
  std::int64_t doubled_area() const;
  bool contains(LatticePoint p) const;
  bool on_boundary(LatticePoint p) const;
  /// All lattice points of the closed polygon, sorted.
  std::vector<LatticePoint> lattice_points() const;
  std::int64_t interior_point_count() const;
  /// Index of the side containing the segment [a, b], or -1.
  int side_of_segment(LatticePoint a, LatticePoint b) const;
  /// Outward primitive normal of side i (from vertex i to vertex i+1).
  LatticeVector outward_normal(int side) const;

  std::string to_string() const;
  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

 private:
  std::vector<LatticePoint> vertices_;
};

/// Sum of lattice lengths of the sides.
std::int64_t boundary_points(const LatticePolygon& p);

}  // namespace tropcount
