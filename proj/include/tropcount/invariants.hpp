#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropcount/engines.hpp"
#include "tropcount/lattice.hpp"
#include "tropcount/qpoly.hpp"

namespace tropcount {

enum class Engine { Path, Floor, Brute };
std::string to_string(Engine e);
Engine parse_engine(const std::string& text);

/// Where a value came from.
struct Provenance {
  std::string engine;
  std::string polygon;
  int genus = 0;
  std::string conditions;          ///< condition type, input order
  std::vector<std::string> order;  ///< configuration order
  std::optional<LatticeVector> lambda;
  long long curves = 0;
};

/// A computed count. For the refined scheme `polynomial` holds RR_y when the
/// division by the fixed end weights is exact; `numerator`/`denominator` are
/// always kept. at_y1 is the complex specialization, at_yneg1 the real one;
/// a missing at_yneg1 with `pole` set means the limit does not exist.
struct InvariantValue {
  Scheme scheme = Scheme::Complex;
  mpq_class value = 0;  ///< the count the scheme asks for
  std::optional<QPoly> polynomial;
  QPoly numerator;
  std::vector<int> denominator;
  std::optional<mpq_class> at_y1;
  std::optional<mpq_class> at_yneg1;
  bool pole = false;
  Provenance provenance;
};

nlohmann::json to_json(const InvariantValue& v);

struct RunOptions {
  Engine engine = Engine::Path;
  int jobs = 1;
  /// Path engine functional; the first admissible variant when unset.
  std::optional<LatticeVector> lambda{};
};

/// Counts curves of genus g through a configuration of the given type.
/// The floor engine needs a triangle and tangencies on the left side only;
/// the brute engine rejects interior pairs and large polygons.
InvariantValue compute(const LatticePolygon& polygon, int genus, const PointConditionType& type, Scheme scheme,
                       const RunOptions& options = {});

/// Turns a refined tally into an InvariantValue (division, both limits).
InvariantValue refined_value(const QPoly& numerator, const std::vector<int>& denominator);

/// Number of genus g curves through |dP| + g - 1 generic points.
InvariantValue severi(const LatticePolygon& polygon, int genus, const RunOptions& options = {});

/// Relative refined invariant RR_y for the condition type.
InvariantValue refined(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                       const RunOptions& options = {});

/// Signed count. With an interior pair this is the mixed count of the given
/// configuration order; otherwise the real count, checked against the y = -1
/// limit of the refined invariant when that exists.
InvariantValue welschinger_mixed(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                 const RunOptions& options = {});

struct InvarianceRow {
  std::string label;
  InvariantValue value;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  bool equal = true;
  std::vector<std::string> distinct;  ///< distinct values, first-seen order
};

nlohmann::json to_json(const InvarianceReport& r);

/// Path engine configurations: one per admissible functional, up to k.
InvarianceReport invariance_over_functionals(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                             Scheme scheme, int k, int jobs = 1);

/// Brute oracle configurations: Mikhalkin positions for up to k admissible
/// functionals; refined values compare numerators and denominators.
InvarianceReport invariance_brute(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                  Scheme scheme, int k);

/// The interior pair moved through every position among n - 1 real points,
/// mixed scheme. Row i is pair@(i+1).
InvarianceReport sweep_pair(const LatticePolygon& polygon, int genus, int jobs = 1);

struct Counterexample {
  InvarianceReport sweep;
  int special_position = 0;  ///< 1-based
  mpq_class special_value, generic_value;
};

/// Delta_4, genus 1, one interior pair: 63 with the pair at position 6 and 69
/// everywhere else. Throws std::runtime_error on any other outcome.
Counterexample counterexample(int jobs = 1);

}  // namespace tropcount
