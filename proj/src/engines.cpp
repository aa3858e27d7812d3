#include "tropcount/engines.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

namespace tropcount {

int Condition::dimension_weight() const {
  switch (kind) {
    case ConditionKind::InteriorSimple: return 1;
    case ConditionKind::InteriorPair: return 2;
    case ConditionKind::BoundaryTangency: return std::max(order, 1);
    case ConditionKind::BoundaryPair: return 2;
  }
  return 0;
}

std::string to_string(const Condition& c) {
  std::ostringstream os;
  os << to_string(c.kind);
  if (c.is_boundary()) os << "(" << c.side_normal.to_string() << ",m=" << c.order << ")";
  return os.str();
}

int PointConditionType::dimension_total() const {
  int s = 0;
  for (const auto& c : conditions) s += c.dimension_weight();
  return s;
}

int PointConditionType::pair_count() const {
  return static_cast<int>(std::count_if(conditions.begin(), conditions.end(), [](const Condition& c) {
    return c.kind == ConditionKind::InteriorPair;
  }));
}

namespace {

int side_with_normal(const LatticePolygon& polygon, LatticeVector normal) {
  for (int i = 0; i < static_cast<int>(polygon.size()); ++i) {
    if (polygon.outward_normal(i) == normal) return i;
  }
  return -1;
}

std::int64_t span(const LatticePolygon& polygon) {
  std::int64_t x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
  for (const auto& v : polygon.vertices()) {
    x0 = std::min(x0, v.x), x1 = std::max(x1, v.x), y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
  }
  return std::max(x1 - x0, y1 - y0);
}

struct Extremes {
  LatticePoint p, q;
};

Extremes extremes(const LatticePolygon& polygon, LatticeVector lambda) {
  const auto& v = polygon.vertices();
  auto by = [&](LatticePoint a, LatticePoint b) { return dot(lambda, a) < dot(lambda, b); };
  return {*std::min_element(v.begin(), v.end(), by), *std::max_element(v.begin(), v.end(), by)};
}

bool side_contains(const LatticePolygon& polygon, int side, LatticePoint x) {
  const auto& v = polygon.vertices();
  const auto a = v[side], b = v[(side + 1) % v.size()];
  return cross(b - a, x - a) == 0;
}

void check_injective(const LatticePolygon& polygon, LatticeVector lambda) {
  std::set<std::int64_t> seen;
  for (const auto& p : polygon.lattice_points()) {
    if (!seen.insert(dot(lambda, p)).second) {
      throw UnsupportedConfiguration("functional " + lambda.to_string() + " is not injective on the lattice points");
    }
  }
}

}  // namespace

void check_dimension(const LatticePolygon& polygon, int genus, const PointConditionType& type) {
  for (const auto& c : type.conditions) {
    if (c.is_boundary() && side_with_normal(polygon, c.side_normal) < 0) {
      throw UnsupportedConfiguration("polygon has no side with outward normal " + c.side_normal.to_string());
    }
    if (c.is_boundary() && c.order < 1) throw UnsupportedConfiguration("tangency order must be positive");
  }
  if (genus < 0 || genus > polygon.interior_point_count()) {
    throw DimensionMismatch("genus " + std::to_string(genus) + " is out of range for " + polygon.to_string());
  }
  const auto expected = boundary_points(polygon) + genus - 1;
  if (type.dimension_total() != expected) {
    throw DimensionMismatch("conditions have total dimension " + std::to_string(type.dimension_total()) +
                            ", expected |dP| + g - 1 = " + std::to_string(expected));
  }
}

LatticeVector default_lambda(const LatticePolygon& polygon) { return {span(polygon) + 1, -1}; }

std::vector<LatticeVector> lambda_variants(const LatticePolygon& polygon) {
  const auto s = span(polygon) + 1;
  std::vector<LatticeVector> out{{s, -1}, {s, 1}, {-s, 1}, {-s, -1}, {1, s}, {-1, s}, {1, -s}, {-1, -s}};
  // s (a x + b y) + (c x + e y): unit steps along the diagonals.
  for (const LatticeVector major : {LatticeVector{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
    for (const LatticeVector minor : {LatticeVector{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      out.push_back({s * major.x + minor.x, s * major.y + minor.y});
    }
  }
  return out;
}

namespace {

// Orders the conditions for one functional, or explains why it cannot.
std::optional<std::string> try_config(const LatticePolygon& polygon, const PointConditionType& type,
                                      LatticeVector lambda, MikhalkinConfig& config) {
  config.lambda = lambda;
  const auto [p, q] = extremes(polygon, lambda);
  std::vector<Condition> front, middle, back;
  int front_side = -1, back_side = -1;
  for (const auto& c : type.conditions) {
    if (!c.is_boundary()) {
      middle.push_back(c);
      continue;
    }
    const int side = side_with_normal(polygon, c.side_normal);
    if (side < 0) return "polygon has no side with outward normal " + c.side_normal.to_string();
    // The fixed step runs along the side, so consecutive side points must be
    // consecutive values of lambda.
    const auto& v = polygon.vertices();
    const auto dir = primitive(v[(side + 1) % v.size()] - v[side]);
    if (std::abs(dot(lambda, dir)) != 1) {
      return "side " + c.side_normal.to_string() + " is not traversed in unit steps by " + lambda.to_string();
    }
    const bool at_p = side_contains(polygon, side, p), at_q = side_contains(polygon, side, q);
    if (at_p && (front_side < 0 || front_side == side)) {
      front_side = side;
      front.push_back(c);
    } else if (at_q && (back_side < 0 || back_side == side)) {
      back_side = side;
      back.push_back(c);
    } else {
      return "boundary condition " + to_string(c) + " cannot be placed at an extreme for " + lambda.to_string();
    }
  }
  config.order = std::move(front);
  config.order.insert(config.order.end(), middle.begin(), middle.end());
  config.order.insert(config.order.end(), back.begin(), back.end());
  return std::nullopt;
}

}  // namespace

MikhalkinConfig make_config(const LatticePolygon& polygon, const PointConditionType& type,
                            std::optional<LatticeVector> lambda) {
  MikhalkinConfig config;
  if (lambda) {
    check_injective(polygon, *lambda);
    if (auto why = try_config(polygon, type, *lambda, config)) throw UnsupportedConfiguration(*why);
    return config;
  }
  std::optional<std::string> first;
  for (const auto& l : lambda_variants(polygon)) {
    auto why = try_config(polygon, type, l, config);
    if (!why) return config;
    if (!first) first = why;
  }
  throw UnsupportedConfiguration("no lattice path configuration supports these conditions: " + *first);
}

std::vector<LatticePath> enumerate_paths(const LatticePolygon& polygon, int steps,
                                         std::optional<LatticeVector> lambda) {
  const auto l = lambda.value_or(default_lambda(polygon));
  check_injective(polygon, l);
  auto pts = polygon.lattice_points();
  std::sort(pts.begin(), pts.end(), [&](auto a, auto b) { return dot(l, a) < dot(l, b); });
  std::vector<LatticePath> out;
  if (steps < 1) return out;
  const int inner = static_cast<int>(pts.size()) - 2;
  const int pick = steps - 1;
  if (pick > inner) return out;
  LatticePath cur{pts.front()};
  std::function<void(int, int)> rec = [&](int from, int left) {
    if (left == 0) {
      cur.push_back(pts.back());
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int i = from; i <= inner - left + 1; ++i) {
      cur.push_back(pts[i]);
      rec(i + 1, left - 1);
      cur.pop_back();
    }
  };
  rec(1, pick);
  return out;
}

// ---------------------------------------------------------------------------
// path division

namespace {

class Divider {
 public:
  Divider(const LatticePolygon& polygon, LatticeVector lambda, int max_weight)
      : polygon_(polygon), max_weight_(max_weight) {
    const auto [p, q] = extremes(polygon, lambda);
    const auto& v = polygon.vertices();
    const int n = static_cast<int>(v.size());
    const int ip = static_cast<int>(std::find(v.begin(), v.end(), p) - v.begin());
    const int iq = static_cast<int>(std::find(v.begin(), v.end(), q) - v.begin());
    // The counterclockwise chain from p to q lies to the right of every path
    // (side -1), the clockwise one to the left (side +1).
    for (int s : {+1, -1}) {
      auto& chain = chain_[s > 0];
      auto& corners = corners_[s > 0];
      int i = ip;
      while (true) {
        corners.insert(v[i]);
        if (i == iq) break;
        const int j = s < 0 ? (i + 1) % n : (i + n - 1) % n;
        const auto d = v[j] - v[i];
        const auto len = lattice_length(d);
        const auto u = primitive(d);
        for (std::int64_t k = 0; k <= len; ++k) chain.insert(v[i] + k * u);
        i = j;
      }
    }
  }

  using Result = std::shared_ptr<const std::vector<CellSet>>;

  Result divide(const LatticePath& path, const std::vector<bool>& fixed, int side, int forced) {
    if (forced < 0) {
      auto key = std::make_pair(path, fixed);
      auto& memo = memo_[side > 0];
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      auto r = compute(path, fixed, side, forced);
      memo.emplace(std::move(key), r);
      return r;
    }
    return compute(path, fixed, side, forced);
  }

 private:
  Result compute(const LatticePath& path, const std::vector<bool>& fixed, int side, int forced) {
    auto out = std::make_shared<std::vector<CellSet>>();
    const int n = static_cast<int>(path.size());
    if (forced < 0 && terminal(path, side)) {
      for (int k = 0; k + 1 < n; ++k) {
        if (!fixed[k] && lattice_length(path[k + 1] - path[k]) > max_weight_) return out;
      }
      out->push_back({});
      return out;
    }
    int j = forced;
    if (j < 0) {
      for (int k = 1; k + 1 < n; ++k) {
        if (side * cross(path[k] - path[k - 1], path[k + 1] - path[k]) > 0) {
          j = k;
          break;
        }
      }
    }
    if (j < 0) return out;
    const auto a = path[j - 1], b = path[j], c = path[j + 1];

    // Cut the triangle (a, b, c).
    {
      LatticePath np = path;
      np.erase(np.begin() + j);
      std::vector<bool> nf = fixed;
      nf.erase(nf.begin() + j);
      nf[j - 1] = false;
      const SubdivisionCell cell{{a, b, c}};
      for (const auto& rest : *divide(np, nf, side, -1)) {
        CellSet s = rest;
        s.push_back(cell);
        out->push_back(std::move(s));
      }
    }
    // Complete the parallelogram (a, b, c, r); not allowed at a forced vertex.
    const auto r = a + c - b;
    if (forced < 0 && polygon_.contains(r)) {
      LatticePath np = path;
      np[j] = r;
      std::vector<bool> nf = fixed;
      std::swap(nf[j - 1], nf[j]);
      const SubdivisionCell cell{{a, b, c, r}};
      for (const auto& rest : *divide(np, nf, side, -1)) {
        CellSet s = rest;
        s.push_back(cell);
        out->push_back(std::move(s));
      }
    }
    return out;
  }

  bool terminal(const LatticePath& path, int side) const {
    const auto& chain = chain_[side > 0];
    for (const auto& x : path) {
      if (!chain.count(x)) return false;
    }
    for (const auto& x : corners_[side > 0]) {
      if (std::find(path.begin(), path.end(), x) == path.end()) return false;
    }
    return true;
  }

  const LatticePolygon& polygon_;
  int max_weight_;
  std::set<LatticePoint> chain_[2];
  std::set<LatticePoint> corners_[2];
  std::map<std::pair<LatticePath, std::vector<bool>>, Result> memo_[2];
};

std::vector<CellSet> divide_with(Divider& divider, const LatticePath& path, const DivideOptions& options) {
  std::vector<bool> fixed = options.fixed_step;
  fixed.resize(path.size() - 1, false);
  int forced_side = 0;
  if (options.forced_vertex >= 0) {
    const int j = options.forced_vertex;
    if (j < 1 || j + 1 >= static_cast<int>(path.size())) return {};
    const auto t = cross(path[j] - path[j - 1], path[j + 1] - path[j]);
    if (t == 0) return {};
    forced_side = t > 0 ? 1 : -1;
  }
  const auto plus = divider.divide(path, fixed, +1, forced_side > 0 ? options.forced_vertex : -1);
  if (plus->empty()) return {};
  const auto minus = divider.divide(path, fixed, -1, forced_side < 0 ? options.forced_vertex : -1);
  std::vector<CellSet> out;
  for (const auto& a : *plus) {
    for (const auto& b : *minus) {
      CellSet s = a;
      s.insert(s.end(), b.begin(), b.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<CellSet> divide_path(const LatticePolygon& polygon, const LatticePath& path, LatticeVector lambda,
                                 const DivideOptions& options) {
  Divider divider(polygon, lambda, options.max_unfixed_end_weight);
  return divide_with(divider, path, options);
}

// ---------------------------------------------------------------------------
// curves through a Mikhalkin configuration

namespace {

struct Task {
  LatticePath path;
  std::vector<int> step_condition;  ///< condition index per path step
  int pair_condition = -1;          ///< condition placed at a vertex, or -1
  int forced_vertex = -1;
};

std::string dedup_key(const PlaneTropicalCurve& c) {
  std::ostringstream os;
  for (const auto& cell : c.subdivision->cells) {
    for (const auto& p : cell.corners) os << p.x << ',' << p.y << ';';
    os << '|';
  }
  for (const auto& m : c.markings) os << m.condition << ':' << static_cast<int>(m.site) << ':' << m.index << ' ';
  return os.str();
}

bool step_matches(const LatticePolygon& polygon, const Condition& c, LatticePoint a, LatticePoint b) {
  if (!c.is_boundary()) return true;
  const int side = side_with_normal(polygon, c.side_normal);
  return polygon.side_of_segment(a, b) == side && lattice_length(b - a) == c.order;
}

void run_task(const LatticePolygon& polygon, int genus, const MikhalkinConfig& config, const EnumerateOptions& options,
              Divider& divider, const Task& task, std::vector<EnumeratedCurve>& out) {
  DivideOptions dopt;
  dopt.forced_vertex = task.forced_vertex;
  for (int k = 0; k + 1 < static_cast<int>(task.path.size()); ++k) {
    dopt.fixed_step.push_back(config.order[task.step_condition[k]].is_boundary());
  }
  for (auto& cells : divide_with(divider, task.path, dopt)) {
    CurveFromSubdivision built;
    try {
      built = curve_from_subdivision(polygon, std::move(cells));
    } catch (const std::invalid_argument&) {
      continue;
    }
    auto& curve = built.curve;
    if (!is_connected(curve)) continue;
    if (options.filter_genus && curve.genus() != genus) continue;
    bool ok = true;
    for (int k = 0; k + 1 < static_cast<int>(task.path.size()); ++k) {
      const int ci = task.step_condition[k];
      if (ci == task.pair_condition) continue;
      const int e = built.edge_of(task.path[k], task.path[k + 1]);
      if (e < 0) {
        ok = false;
        break;
      }
      const auto& cond = config.order[ci];
      Marking m{ci, cond.kind, cond.is_boundary() ? MarkSite::EndAtInfinity : MarkSite::EdgeInterior, e};
      if (cond.is_boundary() && !curve.edges[e].is_end()) ok = false;
      curve.markings.push_back(m);
    }
    if (!ok) continue;
    if (task.pair_condition >= 0) {
      const int j = task.forced_vertex;
      std::vector<LatticePoint> tri{task.path[j - 1], task.path[j], task.path[j + 1]};
      std::sort(tri.begin(), tri.end());
      int vertex = -1;
      const auto& dual = *curve.subdivision;
      for (int v = 0; v < static_cast<int>(dual.vertex_cell.size()); ++v) {
        auto corners = dual.cells[dual.vertex_cell[v]].corners;
        std::sort(corners.begin(), corners.end());
        if (corners == tri) vertex = v;
      }
      if (vertex < 0) continue;
      curve.markings.push_back({task.pair_condition, ConditionKind::InteriorPair, MarkSite::Vertex, vertex});
    }
    std::sort(curve.markings.begin(), curve.markings.end(),
              [](const Marking& a, const Marking& b) { return a.condition < b.condition; });
    out.push_back({std::move(curve), task.path, task.pair_condition >= 0});
  }
}

}  // namespace

EnumerationResult enumerate_curves(const LatticePolygon& polygon, int genus, const MikhalkinConfig& config,
                                   const EnumerateOptions& options) {
  PointConditionType type{config.order};
  check_dimension(polygon, genus, type);
  check_injective(polygon, config.lambda);
  const int n = static_cast<int>(config.order.size());
  int pair = -1;
  for (int i = 0; i < n; ++i) {
    if (config.order[i].kind == ConditionKind::InteriorPair) {
      if (pair >= 0) throw UnsupportedConfiguration("at most one interior pair is supported");
      pair = i;
    }
  }
  const int max_weight = pair >= 0 ? 2 : 1;

  std::vector<Task> tasks;
  // Double point inside an edge: one step per reduced condition.
  for (auto& path : enumerate_paths(polygon, n, config.lambda)) {
    Task t;
    t.path = std::move(path);
    for (int k = 0; k < n; ++k) t.step_condition.push_back(k);
    tasks.push_back(std::move(t));
  }
  // Double point at a vertex: the pair occupies two consecutive steps.
  if (pair >= 0) {
    for (auto& path : enumerate_paths(polygon, n + 1, config.lambda)) {
      Task t;
      t.path = std::move(path);
      for (int k = 0; k <= n; ++k) t.step_condition.push_back(k <= pair ? k : k - 1);
      t.pair_condition = pair;
      t.forced_vertex = pair + 1;
      tasks.push_back(std::move(t));
    }
  }
  std::erase_if(tasks, [&](const Task& t) {
    for (int k = 0; k + 1 < static_cast<int>(t.path.size()); ++k) {
      if (!step_matches(polygon, config.order[t.step_condition[k]], t.path[k], t.path[k + 1])) return true;
    }
    return false;
  });

  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(tasks.size())));
  std::vector<std::vector<EnumeratedCurve>> per_task(tasks.size());
  auto worker = [&](int w) {
    Divider divider(polygon, config.lambda, max_weight);
    for (int i = w; i < static_cast<int>(tasks.size()); i += jobs) {
      run_task(polygon, genus, config, options, divider, tasks[i], per_task[i]);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  EnumerationResult result;
  result.paths_examined = static_cast<long long>(tasks.size());
  std::set<std::string> seen;
  for (auto& list : per_task) {
    for (auto& c : list) {
      if (seen.insert(dedup_key(c.curve)).second) result.curves.push_back(std::move(c));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// counting

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Complex: return "complex";
    case Scheme::Refined: return "refined";
    case Scheme::Real: return "real";
    case Scheme::Mixed: return "mixed";
  }
  return "?";
}

Scheme parse_scheme(const std::string& text) {
  for (auto s : {Scheme::Complex, Scheme::Refined, Scheme::Real, Scheme::Mixed}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown scheme: " + text);
}

std::optional<mpq_class> scalar_weight(const EnumeratedCurve& c, Scheme scheme, int genus) {
  switch (scheme) {
    case Scheme::Complex: return complex_weight(c.curve);
    case Scheme::Refined: return eval_y1(refined_weight(c.curve));
    case Scheme::Real: {
      for (const auto& m : c.curve.markings) {
        if (m.kind == ConditionKind::InteriorPair) {
          throw std::invalid_argument("the real scheme does not take interior pairs; use the mixed scheme");
        }
      }
      return real_signed_weight(c.curve, parity_split(c.curve));
    }
    case Scheme::Mixed: {
      const auto split = parity_split(c.curve);
      if (!check_vanishing_conditions(c.curve, split, genus).ok) return std::nullopt;
      return mixed_marked_weight(c.curve, split, genus);
    }
  }
  return std::nullopt;
}

Tally tally(const EnumerationResult& result, Scheme scheme, int genus) {
  Tally t;
  t.scheme = scheme;
  t.enumerated = static_cast<long long>(result.curves.size());
  bool denominator_set = false;
  for (const auto& c : result.curves) {
    if (scheme == Scheme::Refined) {
      const auto w = refined_weight(c.curve);
      std::vector<int> num, den;
      for (int v = 0; v < static_cast<int>(c.curve.vertices.size()); ++v) {
        num.push_back(static_cast<int>(vertex_multiplicity(c.curve, v)));
      }
      for (int e : c.curve.ends()) {
        if (c.curve.edges[e].weight > 1) den.push_back(static_cast<int>(c.curve.edges[e].weight));
      }
      std::sort(den.begin(), den.end());
      if (!denominator_set) {
        t.denominator = den;
        denominator_set = true;
      } else if (t.denominator != den) {
        throw std::logic_error("curves with different fixed end weights in one count");
      }
      t.numerator += qproduct_to_poly(QProduct(1, 0, num, {}));
      t.rational += eval_y1(w);
      ++t.curves;
      continue;
    }
    const auto w = scalar_weight(c, scheme, genus);
    if (!w || *w == 0) continue;
    t.rational += *w;
    ++t.curves;
  }
  return t;
}

}  // namespace tropcount
