#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropcount/invariants.hpp"

using namespace tropcount;

namespace {

PointConditionType with_interior(std::vector<Condition> boundary, int total) {
  PointConditionType t;
  t.conditions = boundary;
  int used = 0;
  for (const auto& c : boundary) used += c.dimension_weight();
  for (int i = used; i < total; ++i) t.conditions.push_back({});
  return t;
}

const Condition left2{ConditionKind::BoundaryTangency, {-1, 0}, 2};
const Condition diag2{ConditionKind::BoundaryTangency, {1, 1}, 2};
const Condition bottom_pair{ConditionKind::BoundaryPair, {0, -1}, 2};

QPoly q(int e, int c = 1) { return QPoly::monomial(e, c); }

}  // namespace

TEST_CASE("Severi degrees of small triangles") {
  CHECK(severi(LatticePolygon::triangle(1), 0).value == 1);
  CHECK(severi(LatticePolygon::triangle(2), 0).value == 1);
  CHECK(severi(LatticePolygon::triangle(3), 0).value == 12);
  CHECK(severi(LatticePolygon::triangle(3), 1).value == 1);
  CHECK(severi(LatticePolygon::triangle(4), 3).value == 1);
  CHECK(severi(LatticePolygon::triangle(4), 2).value == 27);
}

TEST_CASE("refined value carries both specializations") {
  const auto P = LatticePolygon::triangle(3);
  const auto v = refined(P, 0, with_interior({}, 8));
  REQUIRE(v.polynomial);
  CHECK(*v.polynomial == q(-2) + QPoly(10) + q(2));
  CHECK(*v.at_y1 == 12);
  CHECK(*v.at_yneg1 == 8);
  CHECK(v.provenance.engine == "path");
  CHECK(v.provenance.lambda.has_value());
  CHECK(v.provenance.curves > 0);
}

TEST_CASE("relative refined count with a tangency") {
  const auto v = refined(LatticePolygon::triangle(3), 0, with_interior({left2}, 8));
  REQUIRE(v.polynomial);
  CHECK(*v.polynomial == q(-2) + QPoly(8) + q(2));
  CHECK(*v.at_yneg1 == 6);
}

TEST_CASE("refined division leaving a pole") {
  const auto v = refined_value(QPoly(1), {2});
  CHECK_FALSE(v.polynomial);
  CHECK(v.pole);
  CHECK_FALSE(v.at_yneg1);
  CHECK(*v.at_y1 == mpq_class(1, 2));
  const auto w = refined_value(qint(2) * qint(3), {2});
  REQUIRE(w.polynomial);
  CHECK(*w.polynomial == qint(3));
}

TEST_CASE("signed counts match the refined limit") {
  const auto P = LatticePolygon::triangle(3);
  CHECK(welschinger_mixed(P, 0, with_interior({}, 8)).value == 8);
  CHECK(welschinger_mixed(P, 0, with_interior({left2}, 8)).value == 6);
  CHECK(welschinger_mixed(P, 0, with_interior({diag2}, 8)).value == 6);
}

TEST_CASE("engines agree through compute") {
  const auto P = LatticePolygon::triangle(3);
  for (int g = 0; g <= 1; ++g) {
    const auto t = with_interior({}, 8 + g);
    const auto path = compute(P, g, t, Scheme::Refined, {Engine::Path});
    const auto floor = compute(P, g, t, Scheme::Refined, {Engine::Floor});
    const auto brute = compute(P, g, t, Scheme::Refined, {Engine::Brute});
    CHECK(*path.polynomial == *floor.polynomial);
    CHECK(*path.polynomial == *brute.polynomial);
  }
}

TEST_CASE("floor engine limits") {
  const auto P = LatticePolygon::triangle(3);
  CHECK_THROWS_AS(compute(P, 0, with_interior({diag2}, 8), Scheme::Complex, {Engine::Floor}), UnsupportedConfiguration);
  CHECK_THROWS_AS(compute(P, 0, with_interior({}, 8), Scheme::Real, {Engine::Floor}), UnsupportedConfiguration);
  const LatticePolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_THROWS_AS(compute(square, 0, with_interior({}, 3), Scheme::Complex, {Engine::Floor}), UnsupportedConfiguration);
}

TEST_CASE("dimension mismatch surfaces") {
  CHECK_THROWS_AS(refined(LatticePolygon::triangle(3), 0, with_interior({}, 7)), DimensionMismatch);
}

TEST_CASE("refined counts are invariant over functionals") {
  for (int d = 2; d <= 3; ++d) {
    const auto P = LatticePolygon::triangle(d);
    for (const auto& boundary : std::vector<std::vector<Condition>>{{}, {left2}, {diag2}}) {
      const auto r = invariance_over_functionals(P, 0, with_interior(boundary, 3 * d - 1), Scheme::Refined, 24);
      CAPTURE(d);
      CAPTURE(boundary.size());
      CHECK(r.rows.size() >= 3);
      CHECK(r.equal);
      CHECK(r.distinct.size() == 1);
    }
  }
}

TEST_CASE("boundary pair signed count is invariant under the brute oracle") {
  const auto r = invariance_brute(LatticePolygon::triangle(2), 0, with_interior({bottom_pair}, 5), Scheme::Real, 24);
  CHECK(r.rows.size() >= 3);
  CHECK(r.equal);
}

TEST_CASE("interior pair sweep on Delta_4") {
  const auto c = counterexample();
  CHECK(c.special_position == 6);
  CHECK(c.special_value == 63);
  CHECK(c.generic_value == 69);
  CHECK_FALSE(c.sweep.equal);
  CHECK(c.sweep.distinct == std::vector<std::string>{"69", "63"});
}

TEST_CASE("sweep is deterministic across jobs") {
  const auto a = sweep_pair(LatticePolygon::triangle(4), 1, 1);
  const auto b = sweep_pair(LatticePolygon::triangle(4), 1, 4);
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("json layout") {
  const auto v = refined(LatticePolygon::triangle(3), 0, with_interior({}, 8));
  const auto j = to_json(v);
  CHECK(j["scheme"] == "refined");
  CHECK(j["at_y1"] == "12");
  CHECK(j["at_yneg1"] == "8");
  CHECK(j["value"]["polynomial"]["variable"] == "q");
  CHECK(j["provenance"]["genus"] == 0);
  const auto p = to_json(refined_value(QPoly(1), {2}));
  CHECK(p["at_yneg1"] == "pole");
  CHECK(p["value"].contains("denominator_qints"));
}

TEST_CASE("engine names") {
  for (auto e : {Engine::Path, Engine::Floor, Engine::Brute}) CHECK(parse_engine(to_string(e)) == e);
  CHECK_THROWS_AS(parse_engine("abacus"), std::invalid_argument);
}
