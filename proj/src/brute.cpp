// Exhaustive oracle. A plane tropical curve is the corner locus of
// F(x) = max_m (h_m + <m, x>) over the vertices m of its dual subdivision S;
// a point x lies inside the edge dual to [a, b] iff F_a(x) = F_b(x) > F_m(x)
// for every other m. We enumerate the tilings S of P by lattice triangles and
// parallelograms, assign every condition to a segment of S, solve for the
// heights exactly and keep the solutions that induce S.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "tropcount/engines.hpp"

namespace tropcount {

namespace {

using i128 = __int128;

// Sample point strictly inside a cell, off every line through two lattice
// points of small polygons: centroid + (1/1009, 1/1009^2), scaled by 3 * 4 * 1009^2.
struct Sample {
  i128 x, y;  // scaled by kScale
  friend auto operator<=>(const Sample&, const Sample&) = default;
};
constexpr std::int64_t kPert = 1009;
constexpr i128 kScale = static_cast<i128>(12) * kPert * kPert;

Sample sample_of(const std::vector<LatticePoint>& corners) {
  i128 sx = 0, sy = 0;
  for (const auto& p : corners) sx += p.x, sy += p.y;
  const i128 k = static_cast<i128>(corners.size());
  return {sx * (kScale / k) + kPert, sy * (kScale / k) + 1};
}

// Strictly inside a convex counterclockwise cell.
bool strictly_inside(const std::vector<LatticePoint>& c, const Sample& s) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& a = c[i];
    const auto& b = c[(i + 1) % c.size()];
    const i128 cr = static_cast<i128>(b.x - a.x) * (s.y - a.y * kScale) -
                    static_cast<i128>(b.y - a.y) * (s.x - a.x * kScale);
    if (cr <= 0) return false;
  }
  return true;
}

bool in_open_segment(LatticePoint a, LatticePoint b, LatticePoint p) {
  if (cross(b - a, p - a) != 0) return false;
  const auto t = dot(p - a, b - a);
  return t > 0 && t < dot(b - a, b - a);
}

// Interiors of two convex polygons are disjoint iff some side direction separates them.
bool interiors_disjoint(const std::vector<LatticePoint>& A, const std::vector<LatticePoint>& B) {
  auto separated_by = [](const std::vector<LatticePoint>& X, const std::vector<LatticePoint>& Y) {
    for (std::size_t i = 0; i < X.size(); ++i) {
      const auto a = X[i], d = X[(i + 1) % X.size()] - a;
      bool all_out = true;
      for (const auto& y : Y) {
        if (cross(d, y - a) > 0) {
          all_out = false;
          break;
        }
      }
      if (all_out) return true;
    }
    return false;
  };
  return separated_by(A, B) || separated_by(B, A);
}

bool compatible(const std::vector<LatticePoint>& A, const std::vector<LatticePoint>& B) {
  if (!interiors_disjoint(A, B)) return false;
  for (std::size_t i = 0; i < B.size(); ++i) {
    for (const auto& v : A) {
      if (in_open_segment(B[i], B[(i + 1) % B.size()], v)) return false;
    }
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (const auto& v : B) {
      if (in_open_segment(A[i], A[(i + 1) % A.size()], v)) return false;
    }
  }
  return true;
}

std::vector<LatticePoint> ccw_cell(std::vector<LatticePoint> c) {
  std::int64_t area = 0;
  for (std::size_t i = 0; i < c.size(); ++i) area += cross(c[i], c[(i + 1) % c.size()]);
  if (area < 0) std::reverse(c.begin(), c.end());
  std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  return c;
}

std::int64_t doubled_area(const std::vector<LatticePoint>& c) {
  std::int64_t area = 0;
  for (std::size_t i = 0; i < c.size(); ++i) area += cross(c[i], c[(i + 1) % c.size()]);
  return area;
}

struct BoundaryRule {
  const LatticePolygon& polygon;
  std::vector<int> max_len;  // per side
  bool ok(const std::vector<LatticePoint>& c) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto a = c[i], b = c[(i + 1) % c.size()];
      const int side = polygon.side_of_segment(a, b);
      if (side >= 0 && lattice_length(b - a) > max_len[side]) return false;
    }
    return true;
  }
};

// All tilings of P by lattice triangles and parallelograms meeting edge to edge.
void enumerate_tilings(const LatticePolygon& polygon, const BoundaryRule& rule,
                       const std::function<void(const std::vector<std::vector<LatticePoint>>&)>& visit) {
  const auto pts = polygon.lattice_points();
  std::vector<std::vector<LatticePoint>> cand;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (cross(pts[j] - pts[i], pts[k] - pts[i]) == 0) continue;
        auto c = ccw_cell({pts[i], pts[j], pts[k]});
        if (rule.ok(c)) cand.push_back(c);
        // Parallelograms with diagonal (j, k) through the apex i.
        for (auto [a, b, d] : {std::tuple{i, j, k}, std::tuple{j, i, k}, std::tuple{k, i, j}}) {
          const auto r = pts[b] + pts[d] - pts[a];
          if (!polygon.contains(r)) continue;
          auto par = ccw_cell({pts[a], pts[b], r, pts[d]});
          if (rule.ok(par)) cand.push_back(par);
        }
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<Sample> samples;
  for (const auto& c : cand) samples.push_back(sample_of(c));
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  std::vector<std::vector<int>> covering(samples.size());
  for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
    for (int c = 0; c < static_cast<int>(cand.size()); ++c) {
      if (strictly_inside(cand[c], samples[s])) covering[s].push_back(c);
    }
  }
  std::vector<std::vector<int>> inside(cand.size());
  for (int s = 0; s < static_cast<int>(samples.size()); ++s) {
    for (int c : covering[s]) inside[c].push_back(s);
  }

  const auto total = polygon.doubled_area();
  std::vector<int> covered(samples.size(), 0);
  std::vector<int> chosen;
  std::vector<std::vector<LatticePoint>> cells;
  std::function<void(std::int64_t)> rec = [&](std::int64_t area) {
    if (area == total) {
      visit(cells);
      return;
    }
    int s = 0;
    while (s < static_cast<int>(samples.size()) && covered[s]) ++s;
    if (s == static_cast<int>(samples.size())) return;
    for (int c : covering[s]) {
      bool ok = true;
      for (int s2 : inside[c]) {
        if (covered[s2]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int o : chosen) {
        if (!compatible(cand[c], cand[o])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int s2 : inside[c]) covered[s2] = 1;
      chosen.push_back(c);
      cells.push_back(cand[c]);
      rec(area + doubled_area(cand[c]));
      cells.pop_back();
      chosen.pop_back();
      for (int s2 : inside[c]) covered[s2] = 0;
    }
  };
  rec(0);
}

// ---------------------------------------------------------------------------

struct Seg {
  int a, b;      // vertex indices, a -> b counterclockwise along the side for boundary segments
  int side;      // polygon side or -1
  int length;
};

struct Solver {
  const LatticePolygon& polygon;
  int genus;
  const std::vector<PlacedCondition>& conds;
  const std::vector<LatticePoint>& ipos;  // scaled interior positions
  const std::vector<i128>& iline;         // scaled line values for boundary conditions
  const std::vector<int>& cond_side;
  int max_unfixed;
  EnumerationResult& out;
  long long degenerate = 0;

  // per tiling
  std::vector<LatticePoint> verts{};
  std::vector<Seg> segs{};
  std::vector<std::vector<int>> cell_v{};  // cell corners as vertex indices
  std::vector<int> comp{};                   // component label per vertex
  std::vector<i128> hrel{};                  // h_x - h_label
  std::vector<std::vector<int>> members{};   // vertices per label
  std::vector<int> seg_of{};
  std::vector<bool> seg_used{};

  std::pair<int, i128> find(int x) const { return {comp[x], hrel[x]}; }

  // Joins the components of a and b so that h_a - h_b = diff. Returns the
  // absorbed label.
  int merge(int a, int b, i128 diff) {
    int keep = comp[a], gone = comp[b];
    i128 shift = hrel[a] - diff - hrel[b];  // added to vertices of b's component
    if (members[keep].size() < members[gone].size()) {
      std::swap(keep, gone);
      shift = -shift;
    }
    for (int v : members[gone]) {
      comp[v] = keep;
      hrel[v] += shift;
    }
    members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
    shift_of[gone] = shift;
    return gone;
  }

  void unmerge(int gone) {
    const int keep = comp[members[gone].front()];
    members[keep].resize(members[keep].size() - members[gone].size());
    for (int v : members[gone]) {
      comp[v] = gone;
      hrel[v] -= shift_of[gone];
    }
  }
  std::vector<i128> shift_of{};

  // h_a - h_b for the equation of condition k on segment s.
  i128 difference(int k, const Seg& s) const {
    const auto d = verts[s.b] - verts[s.a];
    if (conds[k].condition.is_boundary()) return static_cast<i128>(s.length) * iline[k];
    return static_cast<i128>(d.x) * ipos[k].x + static_cast<i128>(d.y) * ipos[k].y;
  }

  bool feasible(int k, const Seg& s) const {
    const auto& c = conds[k].condition;
    if (c.is_boundary()) return s.side == cond_side[k] && s.length == c.order;
    return true;
  }

  // Points already placed whose argmax can be checked within a component.
  bool argmax_ok(int k, int s) {
    const auto& seg = segs[s];
    auto [root, ha] = find(seg.a);
    const auto p = ipos[k];
    const i128 fa = ha + static_cast<i128>(verts[seg.a].x) * p.x + static_cast<i128>(verts[seg.a].y) * p.y;
    for (int m : members[root]) {
      if (m == seg.a || m == seg.b) continue;
      const i128 hm = hrel[m];
      const i128 fm = hm + static_cast<i128>(verts[m].x) * p.x + static_cast<i128>(verts[m].y) * p.y;
      if (fm > fa) return false;
    }
    return true;
  }

  bool component_ok(int root) {
    for (int k = 0; k < static_cast<int>(conds.size()); ++k) {
      if (seg_of[k] < 0 || conds[k].condition.is_boundary()) continue;
      if (comp[segs[seg_of[k]].a] != root) continue;
      if (!argmax_ok(k, seg_of[k])) return false;
    }
    // Local convexity of cells fully inside the component.
    for (std::size_t i = 0; i < cell_v.size(); ++i) {
      const auto& cv = cell_v[i];
      bool all = true;
      for (int v : cv) all = all && comp[v] == root;
      if (!all) continue;
      // An unused parallelogram inside one component is redundant.
      if (cv.size() == 4 && !resolved[i]) return false;
      const i128 h[3] = {hrel[cv[0]], hrel[cv[1]], hrel[cv[2]]};
      const auto a = verts[cv[0]], b = verts[cv[1]], c = verts[cv[2]];
      const i128 D = cross(b - a, c - a);
      for (int m : members[root]) {
        if (std::find(cv.begin(), cv.end(), m) != cv.end()) continue;
        const i128 hm = hrel[m];
        const auto x = verts[m];
        const i128 lhs = D * h[0] + static_cast<i128>(cross(x - a, c - a)) * (h[1] - h[0]) +
                         static_cast<i128>(cross(b - a, x - a)) * (h[2] - h[0]);
        // The cell plane must lie strictly above the other lifted points.
        if ((D > 0 && lhs < D * hm) || (D < 0 && lhs > D * hm)) return false;
      }
    }
    return true;
  }

  // The assigned segments form a spanning forest with one tree per
  // parallelogram plus one. Trees are grown one after another, each from its
  // smallest vertex, always adding the smallest vertex that the final tree
  // joins to the current one, so every forest is reached once.
  std::vector<int> joined_at{};  // join time, -1 outside
  std::vector<int> stamp{};      // earliest join time of an allowed parent
  std::vector<std::vector<std::pair<int, int>>> adj{};  // (segment, other end)
  int trees_left = 0;

  std::vector<bool> resolved{};  // parallelograms already used to join two trees

  // Joins two trees through every parallelogram whose corners are all
  // placed. Appends (cell, absorbed label) to `done`; false if some
  // parallelogram is redundant or the offset is not determined.
  bool resolve(std::vector<std::pair<int, int>>& done) {
    for (bool again = true; again;) {
      again = false;
      for (int i = 0; i < static_cast<int>(cell_v.size()); ++i) {
        const auto& cv = cell_v[i];
        if (cv.size() != 4 || resolved[i]) continue;
        bool placed = true;
        for (int v : cv) placed = placed && joined_at[v] >= 0;
        if (!placed) continue;
        const int ca = comp[cv[0]];
        int cb = -1;
        for (int v : cv) {
          if (comp[v] == ca) continue;
          if (cb >= 0 && comp[v] != cb) cb = -2;
          if (cb == -1) cb = comp[v];
        }
        if (cb == -1) return false;
        if (cb == -2) continue;
        // h_0 - h_1 + h_2 - h_3 = 0 with h = hrel + offset on cb's corners.
        const int sign[4] = {1, -1, 1, -1};
        i128 sum = 0;
        int coeff = 0;
        int b = -1;
        for (int j = 0; j < 4; ++j) {
          sum += sign[j] * hrel[cv[j]];
          if (comp[cv[j]] == cb) coeff += sign[j], b = cv[j];
        }
        if (coeff == 0) return false;
        if (sum % coeff != 0) throw std::logic_error("parallelogram offset is not integral");
        const i128 offset = -sum / coeff;
        // h_a - h_b for a = cv[0] once b's tree is shifted by offset.
        done.push_back({i, merge(cv[0], b, hrel[cv[0]] - hrel[b] - offset)});
        resolved[i] = true;
        again = true;
      }
    }
    return true;
  }

  void unresolve(std::vector<std::pair<int, int>>& done) {
    for (auto it = done.rbegin(); it != done.rend(); ++it) {
      unmerge(it->second);
      resolved[it->first] = false;
    }
    done.clear();
  }

  // Places v and continues the search when the joined component passes.
  void descend(int size, int root) {
    std::vector<std::pair<int, int>> done;
    if (resolve(done) && component_ok(comp[root])) grow(size + 1, root);
    unresolve(done);
  }

  // An unused parallelogram with v as its only corner outside component c.
  int completing_parallelogram(int v, int c) const {
    for (int i = 0; i < static_cast<int>(cell_v.size()); ++i) {
      const auto& cv = cell_v[i];
      if (cv.size() != 4 || resolved[i] || std::find(cv.begin(), cv.end(), v) == cv.end()) continue;
      int inside = 0;
      for (int u : cv) inside += comp[u] == c ? 1 : 0;
      if (inside == 3) return i;
    }
    return -1;
  }

  // Connected pieces of the free vertices along unused segments.
  int free_pieces() const {
    const int nv = static_cast<int>(verts.size());
    std::vector<int> label(nv, -1);
    int pieces = 0;
    for (int v = 0; v < nv; ++v) {
      if (joined_at[v] >= 0 || label[v] >= 0) continue;
      ++pieces;
      std::vector<int> stack{v};
      label[v] = v;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (auto [s, y] : adj[x]) {
          if (joined_at[y] < 0 && label[y] < 0 && !seg_used[s]) {
            label[y] = v;
            stack.push_back(y);
          }
        }
      }
    }
    return pieces;
  }

  // Some unused parallelogram fixes the offset of component c against the
  // rest: it has corners on both sides and a nonzero sign sum on c's side.
  bool anchored(int c) const {
    for (std::size_t i = 0; i < cell_v.size(); ++i) {
      const auto& cv = cell_v[i];
      if (cv.size() != 4 || resolved[i]) continue;
      int coeff = 0, outside = 0;
      for (int j = 0; j < 4; ++j) {
        if (comp[cv[j]] == c) {
          coeff += j % 2 == 0 ? 1 : -1;
        } else {
          ++outside;
        }
      }
      if (outside > 0 && coeff != 0) return true;
    }
    return false;
  }

  void grow(int size, int root) {
    const int nv = static_cast<int>(verts.size());
    if (size == nv) {
      leaf();
      return;
    }
    const int n = static_cast<int>(conds.size());
    std::vector<int> saved(nv);
    for (int v = 0; v < nv; ++v) saved[v] = stamp[v];
    for (int v = 0; v < nv; ++v) {
      if (joined_at[v] >= 0) continue;
      if (const int cell = completing_parallelogram(v, comp[root]); cell >= 0) {
        // The fourth corner is determined and must be taken now.
        const auto& cv = cell_v[cell];
        const int sign[4] = {1, -1, 1, -1};
        i128 sum = 0;
        int sv = 0, a = -1;
        for (int j = 0; j < 4; ++j) {
          if (cv[j] == v) {
            sv = sign[j];
          } else {
            sum += sign[j] * hrel[cv[j]];
            a = cv[j];
          }
        }
        const int gone = merge(a, v, hrel[a] + sv * sum);
        resolved[cell] = true;
        joined_at[v] = size;
        descend(size, root);
        joined_at[v] = -1;
        resolved[cell] = false;
        unmerge(gone);
        stamp = std::move(saved);
        return;
      }
      for (auto [s, u] : adj[v]) {
        if (joined_at[u] < stamp[v] || seg_used[s]) continue;
        for (int k = 0; k < n; ++k) {
          if (seg_of[k] >= 0 || !feasible(k, segs[s])) continue;
          const int gone = merge(segs[s].a, segs[s].b, difference(k, segs[s]));
          seg_used[s] = true;
          seg_of[k] = s;
          joined_at[v] = size;
          descend(size, root);
          joined_at[v] = -1;
          seg_of[k] = -1;
          seg_used[s] = false;
          unmerge(gone);
        }
      }
      // Later choices must not join v to the current component.
      stamp[v] = size;
    }
    if (trees_left > 0 && free_pieces() <= trees_left && anchored(comp[root])) {
      // Close the current tree; the next one starts at the smallest free vertex.
      int r = 0;
      while (joined_at[r] >= 0) ++r;
      joined_at[r] = size;
      --trees_left;
      descend(size, r);
      ++trees_left;
      joined_at[r] = -1;
    }
    stamp = std::move(saved);
  }

  void leaf() {
    const int nv = static_cast<int>(verts.size());
    // Component offsets: unknown per non-zero root; parallelograms give equations.
    std::vector<int> root(nv);
    std::vector<i128> rel(nv);
    std::map<int, int> root_index;
    for (int v = 0; v < nv; ++v) {
      auto [r, h] = find(v);
      root[v] = r;
      rel[v] = h;
      root_index.emplace(r, static_cast<int>(root_index.size()));
    }
    const int nu = static_cast<int>(root_index.size()) - 1;  // first root fixed to 0
    std::vector<std::vector<mpq_class>> rows;
    for (std::size_t i = 0; i < cell_v.size(); ++i) {
      const auto& cv = cell_v[i];
      if (cv.size() != 4 || resolved[i]) continue;
      // corners a, b, c, d counterclockwise: h_a + h_c = h_b + h_d
      std::vector<mpq_class> row(nu + 1, 0);
      const int sign[4] = {1, -1, 1, -1};
      for (int i = 0; i < 4; ++i) {
        const int v = cv[i];
        const int idx = root_index[root[v]];
        if (idx > 0) row[idx - 1] += sign[i];
        row[nu] -= sign[i] * mpq_class(mpz_from(rel[v]));
      }
      rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != nu) return;
    // Gaussian elimination.
    std::vector<mpq_class> offset(nu, 0);
    for (int col = 0, r = 0; col < nu; ++col, ++r) {
      int piv = -1;
      for (int i = r; i < nu; ++i) {
        if (rows[i][col] != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) {
        ++degenerate;
        return;
      }
      std::swap(rows[r], rows[piv]);
      for (int i = 0; i < nu; ++i) {
        if (i == r || rows[i][col] == 0) continue;
        const mpq_class f = rows[i][col] / rows[r][col];
        for (int j = col; j <= nu; ++j) rows[i][j] -= f * rows[r][j];
      }
    }
    for (int i = 0; i < nu; ++i) offset[i] = rows[i][nu] / rows[i][i];
    std::vector<mpq_class> h(nv);
    for (int v = 0; v < nv; ++v) {
      const int idx = root_index[root[v]];
      h[v] = mpq_class(mpz_from(rel[v])) + (idx > 0 ? offset[idx - 1] : mpq_class(0));
    }
    bool tie = false;
    // Every cell must be a face of the upper hull.
    for (const auto& cv : cell_v) {
      const auto a = verts[cv[0]], b = verts[cv[1]], c = verts[cv[2]];
      const mpq_class D = cross(b - a, c - a);
      for (int m = 0; m < nv; ++m) {
        if (std::find(cv.begin(), cv.end(), m) != cv.end()) continue;
        const auto x = verts[m];
        const mpq_class plane = h[cv[0]] + (mpq_class(cross(x - a, c - a)) * (h[cv[1]] - h[cv[0]]) +
                                            mpq_class(cross(b - a, x - a)) * (h[cv[2]] - h[cv[0]])) /
                                               D;
        if (plane < h[m]) return;
        if (plane == h[m]) tie = true;
      }
    }
    // Every interior point strictly inside its edge.
    for (int k = 0; k < static_cast<int>(conds.size()); ++k) {
      if (conds[k].condition.is_boundary()) continue;
      const auto& seg = segs[seg_of[k]];
      const auto p = ipos[k];
      auto F = [&](int m) -> mpq_class {
        return h[m] + mpq_class(mpz_from(static_cast<i128>(verts[m].x) * p.x + static_cast<i128>(verts[m].y) * p.y));
      };
      const mpq_class fa = F(seg.a);
      for (int m = 0; m < nv; ++m) {
        if (m == seg.a || m == seg.b) continue;
        const mpq_class fm = F(m);
        if (fm > fa) return;
        if (fm == fa) tie = true;
      }
    }
    if (tie) {
      throw DegenerateConfiguration("a solution has a zero length edge or a point at a vertex");
    }
    emit();
  }

  static mpz_class mpz_from(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  void emit() {
    std::vector<SubdivisionCell> cells;
    for (const auto& cv : cell_v) {
      SubdivisionCell c;
      for (int v : cv) c.corners.push_back(verts[v]);
      cells.push_back(std::move(c));
    }
    CurveFromSubdivision built;
    try {
      built = curve_from_subdivision(polygon, std::move(cells));
    } catch (const std::invalid_argument&) {
      return;
    }
    auto& curve = built.curve;
    if (!is_connected(curve) || curve.genus() != genus) return;
    for (int e : curve.ends()) {
      bool fixed = false;
      for (int k = 0; k < static_cast<int>(conds.size()); ++k) {
        if (conds[k].condition.is_boundary() &&
            built.edge_of(verts[segs[seg_of[k]].a], verts[segs[seg_of[k]].b]) == e) {
          fixed = true;
        }
      }
      if (!fixed && curve.edges[e].weight > max_unfixed) return;
    }
    for (int k = 0; k < static_cast<int>(conds.size()); ++k) {
      const auto& seg = segs[seg_of[k]];
      const int e = built.edge_of(verts[seg.a], verts[seg.b]);
      const auto& c = conds[k].condition;
      curve.markings.push_back({k, c.kind, c.is_boundary() ? MarkSite::EndAtInfinity : MarkSite::EdgeInterior, e});
    }
    out.curves.push_back({std::move(curve), {}, false});
  }

  void run_tiling(const std::vector<std::vector<LatticePoint>>& tiling) {
    verts.clear();
    for (const auto& c : tiling) verts.insert(verts.end(), c.begin(), c.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    int npar = 0;
    for (const auto& c : tiling) npar += c.size() == 4 ? 1 : 0;
    const int n = static_cast<int>(conds.size());
    if (static_cast<int>(verts.size()) - 1 - npar != n) return;
    {
      // The curve type alone decides genus and connectedness.
      std::vector<SubdivisionCell> cells;
      for (const auto& c : tiling) cells.push_back({c});
      try {
        const auto built = curve_from_subdivision(polygon, std::move(cells));
        if (!is_connected(built.curve) || built.curve.genus() != genus) return;
      } catch (const std::invalid_argument&) {
        return;
      }
    }
    auto index = [&](LatticePoint p) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), p) - verts.begin());
    };
    cell_v.clear();
    std::map<std::pair<int, int>, int> seg_index;
    segs.clear();
    for (const auto& c : tiling) {
      std::vector<int> cv;
      for (const auto& p : c) cv.push_back(index(p));
      for (std::size_t i = 0; i < c.size(); ++i) {
        // Counterclockwise within the cell: for boundary segments this is
        // counterclockwise along P.
        const int a = cv[i], b = cv[(i + 1) % c.size()];
        const auto key = std::minmax(a, b);
        if (seg_index.count(key)) continue;
        seg_index[key] = static_cast<int>(segs.size());
        segs.push_back({a, b, polygon.side_of_segment(verts[a], verts[b]),
                        static_cast<int>(lattice_length(verts[b] - verts[a]))});
      }
      cell_v.push_back(std::move(cv));
    }
    // Boundary segments: fixed lengths must be available per side.
    std::map<std::pair<int, int>, int> need, have;
    for (int k = 0; k < n; ++k) {
      if (conds[k].condition.is_boundary()) ++need[{cond_side[k], conds[k].condition.order}];
    }
    for (const auto& s : segs) {
      if (s.side >= 0 && s.length > max_unfixed) ++have[{s.side, s.length}];
    }
    for (const auto& [key, count] : have) {
      if (need[key] < count) return;
    }
    const int nv = static_cast<int>(verts.size());
    comp.resize(nv);
    std::iota(comp.begin(), comp.end(), 0);
    hrel.assign(nv, 0);
    shift_of.assign(nv, 0);
    members.assign(nv, {});
    for (int v = 0; v < nv; ++v) members[v] = {v};
    seg_of.assign(n, -1);
    seg_used.assign(segs.size(), false);
    joined_at.assign(nv, -1);
    joined_at[0] = 0;
    stamp.assign(nv, 0);
    adj.assign(nv, {});
    for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
      adj[segs[s].a].push_back({s, segs[s].b});
      adj[segs[s].b].push_back({s, segs[s].a});
    }
    trees_left = npar;
    resolved.assign(cell_v.size(), false);
    grow(1, 0);
  }
};

mpq_class lcm_den(const std::vector<PlacedCondition>& conds) {
  mpz_class l = 1;
  for (const auto& c : conds) {
    for (const mpq_class* q : {&c.position.x, &c.position.y, &c.line}) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den().get_mpz_t());
    }
  }
  return mpq_class(l);
}

}  // namespace

std::vector<PlacedCondition> mikhalkin_positions(const LatticePolygon& polygon, const MikhalkinConfig& config) {
  // Points on the line through the origin in the gradient direction of
  // lambda, with ratios larger than the polygon can resolve.
  std::int64_t size = 0;
  for (const auto& v : polygon.vertices()) size = std::max({size, v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y});
  const mpz_class growth = 8 * (size + 1) * (size + 1);
  std::vector<PlacedCondition> out;
  mpz_class t = 1;
  for (const auto& c : config.order) {
    PlacedCondition pc;
    pc.condition = c;
    pc.position = {mpq_class(t * config.lambda.x), mpq_class(t * config.lambda.y)};
    if (c.is_boundary()) {
      const auto dir = rotate_ccw(c.side_normal);
      pc.line = pc.position.x * dir.x + pc.position.y * dir.y;
    }
    out.push_back(pc);
    t *= growth;
  }
  return out;
}

EnumerationResult brute_enumerate(const LatticePolygon& polygon, int genus,
                                  const std::vector<PlacedCondition>& conditions, const BruteOptions& options) {
  PointConditionType type;
  for (const auto& c : conditions) {
    if (c.condition.kind == ConditionKind::InteriorPair) {
      throw UnsupportedConfiguration("the exhaustive oracle does not handle interior pairs");
    }
    type.conditions.push_back(c.condition);
  }
  check_dimension(polygon, genus, type);
  if (polygon.doubled_area() > 9) throw UnsupportedConfiguration("the exhaustive oracle is limited to area <= 9/2");

  // Room for halving when a parallelogram joins two trees.
  const mpq_class scale = lcm_den(conditions) * 16;
  std::vector<LatticePoint> ipos;
  std::vector<i128> iline;
  std::vector<int> cond_side;
  for (const auto& c : conditions) {
    const mpq_class x = c.position.x * scale, y = c.position.y * scale, l = c.line * scale;
    for (const mpq_class* q : {&x, &y, &l}) {
      if (!q->get_num().fits_slong_p()) throw UnsupportedConfiguration("coordinates too large for the oracle");
    }
    ipos.push_back({x.get_num().get_si(), y.get_num().get_si()});
    iline.push_back(l.get_num().get_si());
    int side = -1;
    if (c.condition.is_boundary()) {
      for (int i = 0; i < static_cast<int>(polygon.size()); ++i) {
        if (polygon.outward_normal(i) == c.condition.side_normal) side = i;
      }
    }
    cond_side.push_back(side);
  }

  BoundaryRule rule{polygon, std::vector<int>(polygon.size(), options.max_unfixed_end_weight)};
  for (int k = 0; k < static_cast<int>(conditions.size()); ++k) {
    if (cond_side[k] >= 0) rule.max_len[cond_side[k]] = std::max(rule.max_len[cond_side[k]], conditions[k].condition.order);
  }

  EnumerationResult result;
  Solver solver{polygon, genus, conditions, ipos, iline, cond_side, options.max_unfixed_end_weight, result, 0};
  enumerate_tilings(polygon, rule, [&](const auto& tiling) {
    ++result.paths_examined;
    solver.run_tiling(tiling);
  });
  return result;
}

}  // namespace tropcount
