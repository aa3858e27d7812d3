#include "tropcount/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

namespace tropcount {

std::string LatticePoint::to_string() const {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

std::int64_t lattice_length(LatticeVector v) { return std::gcd(v.x, v.y); }

LatticeVector primitive(LatticeVector v) {
  const auto g = lattice_length(v);
  if (g == 0) throw std::invalid_argument("primitive of the zero vector");
  return {v.x / g, v.y / g};
}

std::int64_t triangle_multiplicity(const LatticeTriangle& t) {
  const auto det = cross(t.b - t.a, t.c - t.a);
  if (det == 0) throw DegenerateTriangle("degenerate triangle " + t.a.to_string() + t.b.to_string() + t.c.to_string());
  return det < 0 ? -det : det;
}

std::int64_t boundary_points(const LatticeTriangle& t) {
  return lattice_length(t.b - t.a) + lattice_length(t.c - t.b) + lattice_length(t.a - t.c);
}

std::int64_t interior_points(const LatticeTriangle& t) {
  // Pick: 2A = 2I + B - 2.
  return (triangle_multiplicity(t) - boundary_points(t) + 2) / 2;
}

LatticePolygon::LatticePolygon(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DegeneratePolygon("polygon needs at least three distinct vertices");
  // Monotone chain hull, dropping collinear points.
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegeneratePolygon("polygon has zero area");
  // Every given point must be a vertex or lie on the boundary: reject
  // inputs whose listed points are not in convex position.
  for (const auto& p : pts) {
    if (std::find(hull.begin(), hull.end(), p) != hull.end()) continue;
    vertices_ = hull;
    if (!on_boundary(p)) throw DegeneratePolygon("point " + p.to_string() + " is not in convex position");
  }
  vertices_ = std::move(hull);
}

LatticePolygon LatticePolygon::triangle(int d) {
  if (d < 1) throw DegeneratePolygon("triangle degree must be positive");
  return LatticePolygon({{0, 0}, {d, 0}, {0, d}});
}

LatticePolygon LatticePolygon::parse(const std::string& text) {
  static const std::regex tri(R"(^\s*triangle:(\d+)\s*$)");
  static const std::regex poly(R"(^\s*poly:(.*)$)");
  static const std::regex pt(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  std::smatch m;
  if (std::regex_match(text, m, tri)) return triangle(std::stoi(m[1]));
  if (std::regex_match(text, m, poly)) {
    std::string body = m[1];
    std::vector<LatticePoint> pts;
    for (std::sregex_iterator it(body.begin(), body.end(), pt), end; it != end; ++it) {
      pts.push_back({std::stoll((*it)[1]), std::stoll((*it)[2])});
    }
    if (pts.empty()) throw std::invalid_argument("no vertices in polygon text: " + text);
    return LatticePolygon(std::move(pts));
  }
  throw std::invalid_argument("unrecognized polygon text: " + text);
}

std::int64_t LatticePolygon::doubled_area() const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    s += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return s;
}

bool LatticePolygon::contains(LatticePoint p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    if (cross(b - a, p - a) < 0) return false;
  }
  return true;
}

bool LatticePolygon::on_boundary(LatticePoint p) const {
  if (!contains(p)) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    if (cross(b - a, p - a) == 0) return true;
  }
  return false;
}

std::vector<LatticePoint> LatticePolygon::lattice_points() const {
  std::int64_t x0 = vertices_[0].x, x1 = x0, y0 = vertices_[0].y, y1 = y0;
  for (const auto& v : vertices_) {
    x0 = std::min(x0, v.x), x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
  }
  std::vector<LatticePoint> out;
  for (auto x = x0; x <= x1; ++x) {
    for (auto y = y0; y <= y1; ++y) {
      if (contains({x, y})) out.push_back({x, y});
    }
  }
  return out;
}

std::int64_t LatticePolygon::interior_point_count() const {
  return (doubled_area() - boundary_points(*this) + 2) / 2;
}

int LatticePolygon::side_of_segment(LatticePoint a, LatticePoint b) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const auto& u = vertices_[i];
    const auto& v = vertices_[(i + 1) % vertices_.size()];
    if (cross(v - u, a - u) == 0 && cross(v - u, b - u) == 0 && contains(a) && contains(b)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

LatticeVector LatticePolygon::outward_normal(int side) const {
  const auto& u = vertices_[side];
  const auto& v = vertices_[(side + 1) % vertices_.size()];
  const auto e = primitive(v - u);
  return {e.y, -e.x};
}

std::string LatticePolygon::to_string() const {
  std::ostringstream os;
  os << "poly:";
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? ";" : "") << vertices_[i].to_string();
  return os.str();
}

std::int64_t boundary_points(const LatticePolygon& p) {
  const auto& v = p.vertices();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += lattice_length(v[(i + 1) % v.size()] - v[i]);
  return s;
}

}  // namespace tropcount
