#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "tropcount/qpoly.hpp"

namespace tropcount {

struct ProfileMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FdEdge {
  int source = 0;  ///< floor index, 0-based
  int target = 0;  ///< larger floor index
  int weight = 1;
};

/// An end into the sink. `fixed` is the index of the tangency condition it
/// carries, or -1 for a free end of weight 1.
struct FdEnd {
  int floor = 0;
  int weight = 1;
  int fixed = -1;
};

/// Floors 0 < 1 < ... < d-1; every floor has divergence (out - in) 1.
struct FloorDiagram {
  int floors = 0;
  std::vector<FdEdge> edges;
  std::vector<FdEnd> ends;

  int genus() const { return static_cast<int>(edges.size()) - floors + 1; }
  int divergence(int floor) const;
  bool connected() const;
};

enum class FdObject { Floor, Edge, End };

struct MarkedFloorDiagram {
  FloorDiagram diagram;
  /// The marked objects in increasing order: (kind, index into floors/edges/ends).
  /// Fixed ends are not marked.
  std::vector<std::pair<FdObject, int>> order;
};

/// All marked floor diagrams of degree d and genus g whose fixed ends carry
/// the tangency orders `profile` (labeled, each >= 1); free ends of weight 1
/// pad the end weights up to d. Throws ProfileMismatch if sum(profile) > d.
std::vector<MarkedFloorDiagram> enumerate_floor_diagrams(int d, int g, const std::vector<int>& profile);

/// prod over bounded edges of [w(e)]^2.
QPoly fd_refined_multiplicity(const MarkedFloorDiagram& D);

struct FdCount {
  QPoly value;
  long long diagrams = 0;
};

/// Sum of refined multiplicities. A fixed end of weight m meets its floor in
/// a vertex of multiplicity m, and [m] / [m] = 1, so fixed ends add no factor.
FdCount relative_refined_fd(int d, int g, const std::vector<int>& profile);

nlohmann::json to_json(const MarkedFloorDiagram& D);

}  // namespace tropcount
