#include "tropcount/tropcurve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace tropcount {

std::string to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::InteriorSimple: return "interior";
    case ConditionKind::InteriorPair: return "interior-pair";
    case ConditionKind::BoundaryTangency: return "boundary-tangency";
    case ConditionKind::BoundaryPair: return "boundary-pair";
  }
  return "?";
}

std::vector<int> PlaneTropicalCurve::ends() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (edges[e].is_end()) out.push_back(e);
  }
  return out;
}

std::vector<int> PlaneTropicalCurve::incident(int vertex) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (edges[e].from == vertex) out.push_back(e);
    if (edges[e].to == vertex) out.push_back(e);
  }
  return out;
}

LatticeVector PlaneTropicalCurve::outgoing(int e, int v) const {
  const auto& edge = edges[e];
  const auto w = edge.weight * edge.direction;
  return edge.from == v ? w : -w;
}

int PlaneTropicalCurve::genus() const {
  int bounded = 0;
  for (const auto& e : edges) bounded += e.is_end() ? 0 : 1;
  return bounded - static_cast<int>(vertices.size()) + 1;
}

std::vector<LatticeVector> PlaneTropicalCurve::degree() const {
  std::vector<LatticeVector> out;
  for (const auto& e : edges) {
    if (e.is_end()) out.push_back(e.weight * e.direction);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> require_trivalent(const PlaneTropicalCurve& c, int v) {
  auto inc = c.incident(v);
  if (inc.size() != 3) {
    throw NotTrivalent("vertex " + std::to_string(v) + " has valency " + std::to_string(inc.size()));
  }
  return inc;
}

}  // namespace

std::int64_t vertex_multiplicity(const PlaneTropicalCurve& c, int v) {
  const auto inc = require_trivalent(c, v);
  const auto m = cross(c.outgoing(inc[0], v), c.outgoing(inc[1], v));
  if (m == 0) throw FlatVertex("vertex " + std::to_string(v) + " is flat");
  return m < 0 ? -m : m;
}

std::int64_t vertex_interior_points(const PlaneTropicalCurve& c, int v) {
  const auto mu = vertex_multiplicity(c, v);
  std::int64_t perimeter = 0;
  for (int e : c.incident(v)) perimeter += c.edges[e].weight;
  return (mu - perimeter + 2) / 2;
}

bool is_connected(const PlaneTropicalCurve& c) {
  const int nv = static_cast<int>(c.vertices.size());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = nv;
  for (const auto& e : c.edges) {
    if (!e.to) continue;
    const int a = find(e.from), b = find(*e.to);
    if (a != b) parent[a] = b, --comps;
  }
  return comps <= 1;
}

int moduli_dim(int degree_size, int genus, int interior_conditions) {
  return degree_size + genus - 1 + interior_conditions;
}

// ---------------------------------------------------------------------------
// validation and regular orientation

ValidationReport validate(const PlaneTropicalCurve& c) {
  ValidationReport r;
  const int nv = static_cast<int>(c.vertices.size());
  const int ne = static_cast<int>(c.edges.size());
  for (int v = 0; v < nv; ++v) {
    LatticeVector sum{0, 0};
    const auto inc = c.incident(v);
    for (int e : inc) sum = sum + c.outgoing(e, v);
    if (sum != LatticeVector{0, 0}) {
      r.balanced = false;
      r.problems.push_back("balancing fails at vertex " + std::to_string(v));
    }
    if (inc.size() != 3) {
      r.trivalent = false;
      r.problems.push_back("vertex " + std::to_string(v) + " is not trivalent");
    }
  }

  // Node graph: finite vertices, then one point at infinity per end, then one
  // node per marked point in the interior of an edge.
  std::vector<int> infinity_node(ne, -1);
  int nodes = nv;
  for (int e = 0; e < ne; ++e) {
    if (c.edges[e].is_end()) infinity_node[e] = nodes++;
  }
  std::vector<std::vector<int>> edge_marks(ne);
  std::vector<bool> marked;
  for (const auto& m : c.markings) {
    if (m.site == MarkSite::EdgeInterior) edge_marks[m.index].push_back(nodes++);
  }
  marked.assign(nodes, false);
  for (const auto& m : c.markings) {
    if (m.site == MarkSite::Vertex) marked[m.index] = true;
    if (m.site == MarkSite::EndAtInfinity) marked[infinity_node[m.index]] = true;
  }
  for (int e = 0; e < ne; ++e) {
    for (int n : edge_marks[e]) marked[n] = true;
    if (edge_marks[e].size() > 1) {
      r.regular = false;
      r.problems.push_back("edge " + std::to_string(e) + " carries more than one point");
    }
  }

  // Pieces: (edge, half) where half 0 is the part adjacent to `from`.
  struct Piece {
    int edge, half, a, b;
  };
  std::vector<Piece> pieces;
  for (int e = 0; e < ne; ++e) {
    const int a = c.edges[e].from;
    const int b = c.edges[e].is_end() ? infinity_node[e] : *c.edges[e].to;
    if (edge_marks[e].empty()) {
      pieces.push_back({e, -1, a, b});
    } else {
      const int m = edge_marks[e].front();
      pieces.push_back({e, 0, a, m});
      pieces.push_back({e, 1, m, b});
    }
  }

  // Connectivity of the whole curve.
  {
    std::vector<int> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& p : pieces) parent[find(p.a)] = find(p.b);
    for (int n = 1; n < nodes; ++n) {
      if (find(n) != find(0)) {
        r.connected = false;
        r.problems.push_back("curve is disconnected");
        break;
      }
    }
  }

  // Components of the complement of the marked points.
  std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // node -> (piece, other)
  for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
    const auto& p = pieces[i];
    if (marked[p.a] && marked[p.b]) {
      r.regular = false;
      r.problems.push_back("edge " + std::to_string(p.edge) + " has a piece between two points");
    }
    if (marked[p.a] || marked[p.b]) continue;
    adj[p.a].push_back({i, p.b});
    adj[p.b].push_back({i, p.a});
  }
  std::vector<int> comp(nodes, -1);
  int ncomp = 0;
  std::vector<int> comp_root;
  for (int s = 0; s < nodes; ++s) {
    if (marked[s] || comp[s] >= 0) continue;
    int node_count = 0, piece_twice = 0, roots = 0, root = -1;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      ++node_count;
      piece_twice += static_cast<int>(adj[x].size());
      for (auto [pi, y] : adj[x]) {
        if (comp[y] < 0) {
          comp[y] = ncomp;
          q.push(y);
        }
      }
    }
    for (int e = 0; e < ne; ++e) {
      const int inf = infinity_node[e];
      if (inf >= 0 && !marked[inf] && comp[inf] == ncomp) {
        ++roots;
        root = inf;
      }
    }
    if (piece_twice / 2 != node_count - 1) {
      r.regular = false;
      r.problems.push_back("a component of the complement of the points is not simply connected");
    }
    if (roots != 1) {
      r.regular = false;
      r.problems.push_back("a component of the complement of the points has " + std::to_string(roots) +
                           " unmarked ends");
    }
    comp_root.push_back(root);
    ++ncomp;
  }
  if (!r.regular || !r.connected) return r;

  // Orient every piece towards the root of its component; pieces touching a
  // point are oriented away from the point.
  RegularOrientation o;
  o.out_at_from.assign(ne, false);
  o.out_at_to.assign(ne, false);
  std::vector<int> toward(nodes, -1);  // node -> next node on the way to the root
  for (int k = 0; k < ncomp; ++k) {
    std::queue<int> q;
    q.push(comp_root[k]);
    std::vector<bool> seen(nodes, false);
    seen[comp_root[k]] = true;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (auto [pi, y] : adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          toward[y] = x;
          q.push(y);
        }
      }
    }
  }
  for (const auto& p : pieces) {
    const auto& edge = c.edges[p.edge];
    if (p.half == -1) {
      if (marked[p.a] || marked[p.b]) {
        // Unsplit edge touching a marked vertex or a marked point at infinity:
        // it leaves the marked end and enters the other.
        if (marked[p.a] && !marked[p.b]) o.out_at_from[p.edge] = true;
        if (marked[p.b] && !marked[p.a] && !edge.is_end()) o.out_at_to[p.edge] = true;
        continue;
      }
      const bool toward_b = toward[p.a] == p.b;
      o.out_at_from[p.edge] = toward_b;
      if (!edge.is_end()) o.out_at_to[p.edge] = !toward_b;
    } else {
      // Split edge: both halves flow away from the point.
      o.out_at_from[p.edge] = false;
      o.out_at_to[p.edge] = false;
    }
  }
  r.orientation = std::move(o);
  return r;
}

// ---------------------------------------------------------------------------
// parity split

bool ParitySplit::re_empty() const {
  return std::none_of(edge_odd.begin(), edge_odd.end(), [](bool b) { return b; });
}

ParitySplit parity_split(const PlaneTropicalCurve& c) {
  ParitySplit s;
  const int nv = static_cast<int>(c.vertices.size());
  const int ne = static_cast<int>(c.edges.size());
  s.edge_odd.resize(ne);
  s.vertex_in_re.assign(nv, false);
  s.vertex_in_im.assign(nv, false);
  for (int e = 0; e < ne; ++e) {
    const auto& edge = c.edges[e];
    const bool odd = edge.weight % 2 != 0;
    s.edge_odd[e] = odd;
    auto& mark = odd ? s.vertex_in_re : s.vertex_in_im;
    mark[edge.from] = true;
    if (edge.to) mark[*edge.to] = true;
  }
  // Components of the even subgraph.
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < ne; ++e) {
    if (!s.edge_odd[e] && c.edges[e].to) parent[find(c.edges[e].from)] = find(*c.edges[e].to);
  }
  std::map<int, ImComponent> by_root;
  for (int v = 0; v < nv; ++v) {
    if (s.vertex_in_im[v]) by_root[find(v)].vertices.push_back(v);
  }
  for (int e = 0; e < ne; ++e) {
    if (s.edge_odd[e]) continue;
    auto& k = by_root[find(c.edges[e].from)];
    k.edges.push_back(e);
    if (c.edges[e].is_end()) ++k.infinite_vertices;
  }
  for (auto& [root, k] : by_root) {
    // Points at infinity of even ends count as vertices of K.
    k.euler_characteristic =
        static_cast<int>(k.vertices.size()) + k.infinite_vertices - static_cast<int>(k.edges.size());
    k.real_contacts = static_cast<int>(
        std::count_if(k.vertices.begin(), k.vertices.end(), [&](int v) { return s.vertex_in_re[v]; }));
    s.im_components.push_back(std::move(k));
  }
  return s;
}

// ---------------------------------------------------------------------------
// weights

mpq_class complex_weight(const PlaneTropicalCurve& c) {
  mpq_class w = 1;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) w *= vertex_multiplicity(c, v);
  for (int e : c.ends()) w /= c.edges[e].weight;
  return w;
}

QProduct refined_weight_formula(const PlaneTropicalCurve& c) {
  std::vector<int> num, den;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    num.push_back(static_cast<int>(vertex_multiplicity(c, v)));
  }
  for (int e : c.ends()) den.push_back(static_cast<int>(c.edges[e].weight));
  return QProduct(1, 0, std::move(num), std::move(den));
}

QProduct refined_weight(const PlaneTropicalCurve& c) {
  std::vector<bool> fixed(c.edges.size(), false);
  for (const auto& m : c.markings) {
    if (m.site == MarkSite::EndAtInfinity) fixed[m.index] = true;
  }
  for (int e : c.ends()) {
    if (!fixed[e] && c.edges[e].weight > 1) {
      throw UnfixedEndWeight("unfixed end " + std::to_string(e) + " has weight " +
                             std::to_string(c.edges[e].weight));
    }
  }
  return refined_weight_formula(c);
}

namespace {

bool im_components_nonvanishing(const ParitySplit& split) {
  return std::all_of(split.im_components.begin(), split.im_components.end(), [](const ImComponent& k) {
    return k.euler_characteristic >= 1 && k.real_contacts <= 1;
  });
}

// prod_{re} (-1)^Int(V) * prod_{im} mu(V)/2 * prod_{im \ re} (-1)^{mu(V)/4}
mpq_class signed_product(const PlaneTropicalCurve& c, const ParitySplit& split) {
  mpq_class w = 1;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    const auto mu = vertex_multiplicity(c, v);
    if (split.vertex_in_re[v] && vertex_interior_points(c, v) % 2 != 0) w = -w;
    if (split.vertex_in_im[v]) w *= mpq_class(mu) / 2;
    if (split.vertex_in_im[v] && !split.vertex_in_re[v] && (mu / 4) % 2 != 0) w = -w;
  }
  return w;
}

}  // namespace

mpq_class real_signed_weight(const PlaneTropicalCurve& c, const ParitySplit& split) {
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) require_trivalent(c, v);
  if (split.re_empty()) throw EmptyRealPart("curve has no odd edges");
  if (!im_components_nonvanishing(split)) return 0;
  return signed_product(c, split);
}

bool yneg1_limit_matches_signed(const PlaneTropicalCurve& c, const ParitySplit& split) {
  return limit_yneg1(refined_weight_formula(c)) == real_signed_weight(c, split);
}

VanishingCheck check_vanishing_conditions(const PlaneTropicalCurve& c, const ParitySplit& split,
                                          int genus) {
  VanishingCheck r;
  auto fail = [&](int n, std::string why) {
    r.ok = false;
    if (r.failed.empty() || r.failed.back() != n) r.failed.push_back(n);
    r.reasons.push_back("(" + std::to_string(n) + ") " + std::move(why));
  };

  // (5) trivalent, regular, orientation constraints. Checked first because
  // condition (1) needs well-formed vertices.
  const auto report = validate(c);
  if (!report.trivalent) fail(5, "curve is not trivalent");
  if (!report.regular || !report.connected) fail(5, "curve is not regular");

  // (1) genus bookkeeping
  int sum = 0;
  for (const auto& k : split.im_components) sum += k.real_contacts - k.euler_characteristic;
  if (c.genus() + sum != genus) {
    fail(1, "gen + sum(|K cap re| - chi(K)) = " + std::to_string(c.genus() + sum) + " != " +
                std::to_string(genus));
  }

  // (2), (3) location of the points
  for (const auto& m : c.markings) {
    if (m.kind == ConditionKind::InteriorSimple) {
      if (m.site != MarkSite::EdgeInterior || !split.edge_odd[m.index]) {
        fail(2, "simple point " + std::to_string(m.condition) + " is not inside an odd edge");
      }
    } else if (m.kind == ConditionKind::InteriorPair) {
      const bool on_even_edge = m.site == MarkSite::EdgeInterior && !split.edge_odd[m.index];
      const bool on_pure_re_vertex =
          m.site == MarkSite::Vertex && split.vertex_in_re[m.index] && !split.vertex_in_im[m.index];
      if (!on_even_edge && !on_pure_re_vertex) {
        fail(3, "double point " + std::to_string(m.condition) +
                    " is neither inside an even edge nor on a vertex of the odd part away from the even part");
      }
    }
  }

  // (4) end weights
  for (int e : c.ends()) {
    if (c.edges[e].weight > 2) fail(4, "end " + std::to_string(e) + " has weight " + std::to_string(c.edges[e].weight));
  }

  if (report.trivalent && report.orientation) {
    const auto& o = *report.orientation;
    std::vector<bool> marked_vertex(c.vertices.size(), false);
    for (const auto& m : c.markings) {
      if (m.site == MarkSite::Vertex) marked_vertex[m.index] = true;
    }
    for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
      int even = 0, odd_in = 0, even_out = 0;
      for (int e : c.incident(v)) {
        const bool odd = split.edge_odd[e];
        const bool out = c.edges[e].from == v ? o.out_at_from[e] : o.out_at_to[e];
        even += odd ? 0 : 1;
        if (odd && !out) ++odd_in;
        if (!odd && out) ++even_out;
      }
      if (even == 2) fail(5, "vertex " + std::to_string(v) + " has exactly two even edges");
      if (!marked_vertex[v] && odd_in == 2 && even_out == 1) {
        fail(5, "vertex " + std::to_string(v) + " has two incoming odd edges and an outgoing even edge");
      }
    }
  }
  return r;
}

mpq_class mixed_marked_weight(const PlaneTropicalCurve& c, const ParitySplit& split, int genus) {
  const auto check = check_vanishing_conditions(c, split, genus);
  if (!check.ok) {
    std::string why;
    for (const auto& s : check.reasons) why += s + "; ";
    throw VanishingConditionsUnmet(why);
  }
  mpq_class w = signed_product(c, split);
  for (const auto& m : c.markings) {
    if (m.site == MarkSite::Vertex && split.vertex_in_re[m.index]) w *= vertex_multiplicity(c, m.index);
  }
  return w;
}

// ---------------------------------------------------------------------------
// subdivisions

namespace {

using Segment = std::pair<LatticePoint, LatticePoint>;

Segment make_segment(LatticePoint a, LatticePoint b) { return a < b ? Segment{a, b} : Segment{b, a}; }

std::vector<LatticePoint> ccw(std::vector<LatticePoint> pts) {
  // Cells are convex; sort around the centroid by the sign of cross products.
  std::int64_t area = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) area += cross(pts[i], pts[(i + 1) % pts.size()]);
  if (area < 0) std::reverse(pts.begin(), pts.end());
  std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

int CurveFromSubdivision::edge_of(LatticePoint a, LatticePoint b) const {
  const auto key = make_segment(a, b);
  auto it = std::lower_bound(segment_edge.begin(), segment_edge.end(), key,
                             [](const auto& entry, const Segment& k) { return entry.first < k; });
  if (it == segment_edge.end() || it->first != key) return -1;
  return it->second;
}

CurveFromSubdivision curve_from_subdivision(const LatticePolygon& polygon, std::vector<SubdivisionCell> cells) {
  for (auto& cell : cells) cell.corners = ccw(cell.corners);
  std::sort(cells.begin(), cells.end());

  std::map<Segment, std::vector<int>> seg_cells;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    const auto& k = cells[i].corners;
    for (std::size_t j = 0; j < k.size(); ++j) seg_cells[make_segment(k[j], k[(j + 1) % k.size()])].push_back(i);
  }
  for (const auto& [seg, owners] : seg_cells) {
    if (owners.size() > 2) throw std::invalid_argument("segment shared by more than two cells");
    if (owners.size() == 1 && polygon.side_of_segment(seg.first, seg.second) < 0) {
      throw std::invalid_argument("interior segment " + seg.first.to_string() + seg.second.to_string() +
                                  " has a single adjacent cell");
    }
  }

  CurveFromSubdivision out;
  auto& curve = out.curve;
  std::vector<int> cell_vertex(cells.size(), -1);
  DualSubdivision dual{polygon, cells, {}, {}};
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    if (cells[i].is_triangle()) {
      cell_vertex[i] = static_cast<int>(curve.vertices.size());
      curve.vertices.push_back({});
      dual.vertex_cell.push_back(i);
    }
  }
  std::map<Segment, int> seg_edge;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    if (!cells[i].is_triangle()) continue;
    const auto& k = cells[i].corners;
    for (int j = 0; j < 3; ++j) {
      const auto a = k[j], b = k[(j + 1) % 3];
      if (seg_edge.count(make_segment(a, b))) continue;
      const auto side = b - a;
      CurveEdge edge;
      edge.from = cell_vertex[i];
      edge.weight = lattice_length(side);
      edge.direction = primitive(LatticeVector{side.y, -side.x});
      const int id = static_cast<int>(curve.edges.size());
      std::vector<Segment> chain{make_segment(a, b)};
      int cur = i;
      Segment seg = make_segment(a, b);
      while (true) {
        const auto& owners = seg_cells[seg];
        int next = -1;
        for (int o : owners) {
          if (o != cur) next = o;
        }
        if (next < 0) break;  // boundary: an end
        if (cells[next].is_triangle()) {
          edge.to = cell_vertex[next];
          break;
        }
        // Parallelogram: continue through the opposite side.
        const auto& p = cells[next].corners;
        int pos = -1;
        for (int t = 0; t < 4; ++t) {
          if (make_segment(p[t], p[(t + 1) % 4]) == seg) pos = t;
        }
        seg = make_segment(p[(pos + 2) % 4], p[(pos + 3) % 4]);
        chain.push_back(seg);
        cur = next;
      }
      for (const auto& s : chain) seg_edge[s] = id;
      curve.edges.push_back(edge);
      dual.edge_segment.push_back({a, b});
    }
  }
  for (const auto& [seg, owners] : seg_cells) {
    if (!seg_edge.count(seg)) throw std::invalid_argument("subdivision contains a strip of parallelograms without vertices");
  }
  out.segment_edge.assign(seg_edge.begin(), seg_edge.end());
  curve.subdivision = std::move(dual);
  return out;
}

DualSubdivision dual_subdivision(const PlaneTropicalCurve& c) {
  if (c.subdivision) return *c.subdivision;
  // Glue dual triangles along bounded edges; valid for curves without crossings.
  const int nv = static_cast<int>(c.vertices.size());
  if (nv == 0) throw std::invalid_argument("curve has no vertices");
  std::vector<std::optional<std::vector<LatticePoint>>> tri(nv);
  auto build = [&](int v, LatticePoint start) {
    // Outgoing vectors rotated by +90 degrees, in counterclockwise angular order, chain into the triangle.
    auto inc = c.incident(v);
    if (inc.size() != 3) throw NotTrivalent("vertex " + std::to_string(v) + " is not trivalent");
    std::vector<LatticeVector> sides;
    for (int e : inc) sides.push_back(rotate_ccw(c.outgoing(e, v)));
    for (std::size_t i = 0; i < 3; ++i) {
      if (cross(sides[i], sides[(i + 1) % 3]) == 0) throw FlatVertex("vertex " + std::to_string(v) + " is flat");
    }
    if (cross(sides[0], sides[1]) < 0) std::swap(sides[1], sides[2]);
    return std::vector<LatticePoint>{start, start + sides[0], start + sides[0] + sides[1]};
  };
  // Side of triangle(v) dual to edge e, as an ordered pair.
  auto side_for = [&](int v, int e, const std::vector<LatticePoint>& t) -> Segment {
    const auto s = rotate_ccw(c.outgoing(e, v));
    for (int i = 0; i < 3; ++i) {
      if (t[(i + 1) % 3] - t[i] == s) return {t[i], t[(i + 1) % 3]};
    }
    throw std::logic_error("dual side not found");
  };
  tri[0] = build(0, {0, 0});
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : c.incident(v)) {
      if (c.edges[e].is_end()) continue;
      const int w = c.edges[e].from == v ? *c.edges[e].to : c.edges[e].from;
      if (tri[w]) continue;
      const auto [a, b] = side_for(v, e, *tri[v]);
      auto t = build(w, {0, 0});
      const auto [a2, b2] = side_for(w, e, t);
      // Shared segment is traversed in opposite directions.
      const auto shift = b - a2;
      for (auto& p : t) p = p + shift;
      tri[w] = t;
      q.push(w);
    }
  }
  std::vector<SubdivisionCell> cells;
  std::vector<LatticePoint> corners;
  for (int v = 0; v < nv; ++v) {
    if (!tri[v]) throw std::invalid_argument("curve is disconnected");
    cells.push_back({*tri[v]});
    corners.insert(corners.end(), tri[v]->begin(), tri[v]->end());
  }
  std::int64_t minx = corners[0].x, miny = corners[0].y;
  for (const auto& p : corners) minx = std::min(minx, p.x), miny = std::min(miny, p.y);
  for (auto& cell : cells) {
    for (auto& p : cell.corners) p = p - LatticePoint{minx, miny};
  }
  std::vector<LatticePoint> all;
  for (const auto& cell : cells) all.insert(all.end(), cell.corners.begin(), cell.corners.end());
  LatticePolygon polygon(all);
  std::int64_t area = 0;
  for (const auto& cell : cells) area += triangle_multiplicity({cell.corners[0], cell.corners[1], cell.corners[2]});
  if (area != polygon.doubled_area()) {
    throw std::invalid_argument("dual triangles overlap; the curve has crossings and no stored subdivision");
  }
  auto built = curve_from_subdivision(polygon, cells);
  return *built.curve.subdivision;
}

nlohmann::json to_json(const PlaneTropicalCurve& c) {
  using nlohmann::json;
  json vs = json::array();
  for (const auto& v : c.vertices) {
    if (v.position) vs.push_back({{"x", v.position->x.get_str()}, {"y", v.position->y.get_str()}});
    else vs.push_back(nullptr);
  }
  json es = json::array(), ends = json::array();
  for (const auto& e : c.edges) {
    json j{{"from", e.from}, {"weight", e.weight}, {"direction", {e.direction.x, e.direction.y}}};
    if (e.to) {
      j["to"] = *e.to;
      es.push_back(j);
    } else {
      ends.push_back(j);
    }
  }
  json ms = json::array();
  for (const auto& m : c.markings) {
    const char* site = m.site == MarkSite::EdgeInterior ? "edge" : m.site == MarkSite::Vertex ? "vertex" : "end-at-infinity";
    ms.push_back({{"condition", m.condition}, {"kind", to_string(m.kind)}, {"site", site}, {"index", m.index}});
  }
  json out{{"vertices", vs}, {"edges", es}, {"ends", ends}, {"markings", ms}};
  if (c.subdivision) {
    json cells = json::array();
    for (const auto& cell : c.subdivision->cells) {
      json k = json::array();
      for (const auto& p : cell.corners) k.push_back({p.x, p.y});
      cells.push_back(k);
    }
    out["subdivision"] = cells;
  }
  return out;
}

}  // namespace tropcount
