#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropcount/engines.hpp"
#include "tropcount/tropcurve.hpp"

using namespace tropcount;

namespace {

PlaneTropicalCurve line(std::vector<int> marked_edges) {
  PlaneTropicalCurve c;
  c.vertices.push_back({RationalPoint{0, 0}});
  c.edges.push_back({0, std::nullopt, 1, {-1, 0}});
  c.edges.push_back({0, std::nullopt, 1, {0, -1}});
  c.edges.push_back({0, std::nullopt, 1, {1, 1}});
  int k = 0;
  for (int e : marked_edges) c.markings.push_back({k++, ConditionKind::InteriorSimple, MarkSite::EdgeInterior, e});
  return c;
}

PlaneTropicalCurve from_cells(const std::vector<LatticePoint>& polygon, const std::vector<std::vector<LatticePoint>>& cells) {
  std::vector<SubdivisionCell> cs;
  for (const auto& c : cells) cs.push_back({c});
  return curve_from_subdivision(LatticePolygon(polygon), cs).curve;
}

std::vector<EnumeratedCurve> corpus(int d, int g) {
  const auto P = LatticePolygon::triangle(d);
  PointConditionType type;
  type.conditions.assign(3 * d + g - 1, Condition{});
  return enumerate_curves(P, g, make_config(P, type)).curves;
}

}  // namespace

TEST_CASE("tropical line validates") {
  const auto r = validate(line({0, 1}));
  CHECK(r.balanced);
  CHECK(r.trivalent);
  CHECK(r.regular);
  CHECK(r.ok());
  CHECK(line({}).genus() == 0);
}

TEST_CASE("two markings on one edge are not regular") {
  CHECK_FALSE(validate(line({0, 0})).regular);
}

TEST_CASE("unbalanced vertex is reported") {
  auto c = line({0, 1});
  c.edges[2].direction = {1, 2};
  const auto r = validate(c);
  CHECK_FALSE(r.balanced);
  CHECK_FALSE(r.problems.empty());
}

TEST_CASE("moduli dimension") {
  CHECK(moduli_dim(9, 0, 8) == 16);
  CHECK(moduli_dim(3, 0, 2) == 4);
  CHECK(moduli_dim(12, 1, 12) == 24);
}

TEST_CASE("weights of single vertex curves") {
  const auto l = line({0, 1});
  CHECK(complex_weight(l) == 1);
  CHECK(refined_weight(l) == QProduct());
  CHECK(eval_y1(refined_weight(l)) == 1);

  const auto c = from_cells({{0, 0}, {2, 0}, {0, 1}}, {{{0, 0}, {2, 0}, {0, 1}}});
  REQUIRE(c.vertices.size() == 1);
  CHECK(vertex_multiplicity(c, 0) == 2);
  CHECK(complex_weight(c) == 1);
  CHECK_THROWS_AS(refined_weight(c), UnfixedEndWeight);
  CHECK(eval_y1(refined_weight_formula(c)) == 1);
}

TEST_CASE("two vertices of multiplicity 2 and 4") {
  // A weight 2 bounded edge joins them; every end has weight 1.
  PlaneTropicalCurve c;
  c.vertices.resize(2);
  c.edges.push_back({0, 1, 2, {1, 0}});
  c.edges.push_back({0, std::nullopt, 1, {-1, 1}});
  c.edges.push_back({0, std::nullopt, 1, {-1, -1}});
  c.edges.push_back({1, std::nullopt, 1, {1, 2}});
  c.edges.push_back({1, std::nullopt, 1, {1, -2}});
  CHECK(validate(c).balanced);
  CHECK(vertex_multiplicity(c, 0) == 2);
  CHECK(vertex_multiplicity(c, 1) == 4);
  CHECK(complex_weight(c) == 8);
  CHECK(refined_weight(c) == QProduct(1, 0, {2, 4}, {}));
}

TEST_CASE("even ends meeting odd vertices keep a nonzero limit") {
  // Delta_2 cut into two triangles of multiplicity 2 along a unit segment.
  const auto c = from_cells({{0, 0}, {2, 0}, {0, 2}}, {{{0, 0}, {2, 0}, {0, 1}}, {{2, 0}, {0, 2}, {0, 1}}});
  REQUIRE(c.vertices.size() == 2);
  const auto split = parity_split(c);
  CHECK_FALSE(split.re_empty());
  CHECK(split.im_components.size() == 2);
  for (const auto& k : split.im_components) {
    CHECK(k.euler_characteristic == 1);
    CHECK(k.real_contacts == 1);
  }
  CHECK(limit_yneg1(refined_weight_formula(c)) == 1);
  CHECK(real_signed_weight(c, split) == 1);
  CHECK(yneg1_limit_matches_signed(c, split));
}

TEST_CASE("all-even curve has empty real part") {
  const auto c = from_cells({{0, 0}, {2, 0}, {0, 2}}, {{{0, 0}, {2, 0}, {0, 2}}});
  const auto split = parity_split(c);
  CHECK(split.re_empty());
  CHECK_THROWS_AS(real_signed_weight(c, split), EmptyRealPart);
}

TEST_CASE("end of weight 3 fails condition 4") {
  const auto c = from_cells({{0, 0}, {3, 0}, {0, 1}}, {{{0, 0}, {3, 0}, {0, 1}}});
  const auto check = check_vanishing_conditions(c, parity_split(c), 0);
  CHECK_FALSE(check.ok);
  CHECK(std::find(check.failed.begin(), check.failed.end(), 4) != check.failed.end());
}

TEST_CASE("dual subdivision of simple curves") {
  const auto l = from_cells({{0, 0}, {1, 0}, {0, 1}}, {{{0, 0}, {1, 0}, {0, 1}}});
  const auto s = dual_subdivision(l);
  CHECK(s.cells.size() == 1);
  CHECK(s.polygon == LatticePolygon::triangle(1));
  const auto big = from_cells({{0, 0}, {2, 0}, {0, 2}}, {{{0, 0}, {2, 0}, {0, 2}}});
  CHECK(vertex_multiplicity(big, 0) == 4);
  CHECK(dual_subdivision(big).polygon == LatticePolygon::triangle(2));
}

TEST_CASE("curve json lists vertices, edges and ends") {
  const auto j = to_json(line({0, 1}));
  CHECK(j.contains("vertices"));
  CHECK(j.contains("edges"));
  CHECK(j.contains("ends"));
  CHECK(j["ends"].size() == 3);
}

TEST_CASE("per-curve identities on the degree 2 and 3 corpora") {
  long long curves = 0, limits = 0, vanishing = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int g = 0; g <= 1; ++g) {
      if (d == 2 && g == 1) continue;
      for (const auto& ec : corpus(d, g)) {
        const auto& c = ec.curve;
        CAPTURE(d);
        CAPTURE(g);
        CHECK(validate(c).ok());
        CHECK(c.genus() == g);
        CHECK(dual_subdivision(c).polygon == LatticePolygon::triangle(d));
        CHECK(eval_y1(refined_weight(c)) == complex_weight(c));
        const auto split = parity_split(c);
        bool small_ends = true;
        for (int e : c.ends()) small_ends = small_ends && c.edges[e].weight <= 2;
        if (small_ends && !split.re_empty()) {
          const mpq_class lim = limit_yneg1(refined_weight(c));
          CHECK(lim == real_signed_weight(c, split));
          bool nonvanishing = true;
          for (const auto& k : split.im_components) {
            nonvanishing = nonvanishing && k.euler_characteristic == 1 && k.real_contacts == 1;
          }
          CHECK((lim != 0) == nonvanishing);
          ++limits;
          vanishing += lim == 0;
        }
        ++curves;
      }
    }
  }
  CHECK(curves > 0);
  CHECK(limits > 0);
  MESSAGE("curves " << curves << ", limit checks " << limits << ", vanishing " << vanishing);
}

TEST_CASE("genus 1 curves with odd edges only pass the vanishing conditions") {
  int seen = 0;
  for (const auto& ec : corpus(3, 1)) {
    const auto split = parity_split(ec.curve);
    if (!split.im_components.empty()) continue;
    const auto check = check_vanishing_conditions(ec.curve, split, 1);
    CHECK(check.ok);
    CHECK(mixed_marked_weight(ec.curve, split, 1) == real_signed_weight(ec.curve, split));
    ++seen;
  }
  CHECK(seen > 0);
}
