#include "tropcount/floordiag.hpp"

#include <functional>
#include <numeric>

namespace tropcount {

int FloorDiagram::divergence(int floor) const {
  int div = 0;
  for (const auto& e : edges) {
    if (e.source == floor) div += e.weight;
    if (e.target == floor) div -= e.weight;
  }
  for (const auto& e : ends) {
    if (e.floor == floor) div += e.weight;
  }
  return div;
}

bool FloorDiagram::connected() const {
  std::vector<int> parent(floors);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = floors;
  for (const auto& e : edges) {
    const int a = find(e.source), b = find(e.target);
    if (a != b) parent[a] = b, --comps;
  }
  return comps == 1;
}

std::vector<MarkedFloorDiagram> enumerate_floor_diagrams(int d, int g, const std::vector<int>& profile) {
  if (d < 1) throw ProfileMismatch("degree must be positive");
  int fixed_total = 0;
  for (int m : profile) {
    if (m < 1) throw ProfileMismatch("tangency orders must be positive");
    fixed_total += m;
  }
  if (fixed_total > d) {
    throw ProfileMismatch("tangency orders sum to " + std::to_string(fixed_total) + " > d = " + std::to_string(d));
  }
  if (g < 0) throw ProfileMismatch("negative genus");
  const int free_ends = d - fixed_total;
  const int bounded = d - 1 + g;
  const int slots = d + bounded + free_ends;

  std::vector<MarkedFloorDiagram> out;
  const int k = static_cast<int>(profile.size());
  std::vector<int> fixed_floor(k, 0);

  // remaining[i]: out-weight still owed by placed floor i.
  std::vector<int> remaining(d, 0), in_weight(d, 0);
  MarkedFloorDiagram cur;
  cur.diagram.floors = d;

  std::function<void(int, int, int, int)> place = [&](int slot, int floors_placed, int edges_left, int ends_left) {
    if (slot == slots) {
      for (int i = 0; i < d; ++i) {
        if (remaining[i] != 0) return;
      }
      if (cur.diagram.connected()) out.push_back(cur);
      return;
    }
    // Owed weight must be payable with the objects still to come.
    int owed = 0;
    for (int i = 0; i < floors_placed; ++i) owed += remaining[i] > 0 ? 1 : 0;
    if (owed > edges_left + ends_left) return;

    // A floor.
    if (floors_placed < d) {
      const int f = floors_placed;
      int fixed_out = 0;
      for (int j = 0; j < k; ++j) fixed_out += fixed_floor[j] == f ? profile[j] : 0;
      remaining[f] = in_weight[f] + 1 - fixed_out;
      if (remaining[f] >= 0) {
        cur.order.push_back({FdObject::Floor, f});
        place(slot + 1, floors_placed + 1, edges_left, ends_left);
        cur.order.pop_back();
      }
      remaining[f] = 0;
    }
    // A bounded edge from a placed floor to a later one.
    if (edges_left > 0) {
      for (int s = 0; s < floors_placed; ++s) {
        for (int w = 1; w <= remaining[s]; ++w) {
          for (int t = floors_placed; t < d; ++t) {
            remaining[s] -= w;
            in_weight[t] += w;
            cur.diagram.edges.push_back({s, t, w});
            cur.order.push_back({FdObject::Edge, static_cast<int>(cur.diagram.edges.size()) - 1});
            place(slot + 1, floors_placed, edges_left - 1, ends_left);
            cur.order.pop_back();
            cur.diagram.edges.pop_back();
            in_weight[t] -= w;
            remaining[s] += w;
          }
        }
      }
    }
    // A free end of weight 1 from a placed floor.
    if (ends_left > 0) {
      for (int s = 0; s < floors_placed; ++s) {
        if (remaining[s] < 1) continue;
        --remaining[s];
        cur.diagram.ends.push_back({s, 1, -1});
        cur.order.push_back({FdObject::End, static_cast<int>(cur.diagram.ends.size()) - 1});
        place(slot + 1, floors_placed, edges_left, ends_left - 1);
        cur.order.pop_back();
        cur.diagram.ends.pop_back();
        ++remaining[s];
      }
    }
  };

  // Labeled fixed ends choose their floors.
  std::function<void(int)> assign = [&](int j) {
    if (j == k) {
      cur.diagram.ends.clear();
      for (int i = 0; i < k; ++i) cur.diagram.ends.push_back({fixed_floor[i], profile[i], i});
      place(0, 0, bounded, free_ends);
      return;
    }
    for (int f = 0; f < d; ++f) {
      fixed_floor[j] = f;
      assign(j + 1);
    }
  };
  assign(0);
  return out;
}

QPoly fd_refined_multiplicity(const MarkedFloorDiagram& D) {
  QPoly m(1);
  for (const auto& e : D.diagram.edges) {
    const auto q = qint(e.weight);
    m *= q * q;
  }
  return m;
}

FdCount relative_refined_fd(int d, int g, const std::vector<int>& profile) {
  FdCount c;
  for (const auto& D : enumerate_floor_diagrams(d, g, profile)) {
    c.value += fd_refined_multiplicity(D);
    ++c.diagrams;
  }
  return c;
}

nlohmann::json to_json(const MarkedFloorDiagram& D) {
  using nlohmann::json;
  json edges = json::array(), ends = json::array(), order = json::array();
  for (const auto& e : D.diagram.edges) edges.push_back({{"src", e.source}, {"dst", e.target}, {"weight", e.weight}});
  for (const auto& e : D.diagram.ends) {
    json j{{"floor", e.floor}, {"weight", e.weight}};
    if (e.fixed >= 0) j["fixed"] = e.fixed;
    ends.push_back(j);
  }
  for (const auto& [kind, index] : D.order) {
    const char* k = kind == FdObject::Floor ? "floor" : kind == FdObject::Edge ? "edge" : "end";
    order.push_back({{"kind", k}, {"index", index}});
  }
  return {{"floors", D.diagram.floors}, {"edges", edges}, {"ends", ends}, {"marks", order}};
}

}  // namespace tropcount
