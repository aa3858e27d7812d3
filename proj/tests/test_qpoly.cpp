#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropcount/qpoly.hpp"

using namespace tropcount;

namespace {
QPoly q(int e, int c = 1) { return QPoly::monomial(e, c); }
}  // namespace

TEST_CASE("qint small values") {
  CHECK(qint(1) == QPoly(1));
  CHECK(qint(2) == q(-1) + q(1));
  CHECK(qint(3) == q(-2) + QPoly(1) + q(2));
}

TEST_CASE("qint properties up to 50") {
  for (int a = 1; a <= 50; ++a) {
    const QPoly p = qint(a);
    CAPTURE(a);
    CHECK(p.is_palindromic());
    CHECK(p.terms().size() == static_cast<std::size_t>(a));
    for (const auto& [e, c] : p.terms()) CHECK(c == 1);
    CHECK(poly_eval_y1(p) == a);
    const mpq_class lim = poly_limit_yneg1(p);
    if (a % 2 == 1) {
      CHECK(lim == (((a - 1) / 2) % 2 == 0 ? 1 : -1));
    } else {
      CHECK(lim == 0);
    }
  }
}

TEST_CASE("qproduct evaluation at y = 1") {
  CHECK(eval_y1(QProduct(1, 0, {4}, {2})) == 2);
  CHECK(eval_y1(QProduct(1, 0, {1}, {})) == 1);
  CHECK(eval_y1(QProduct(1, 0, {3, 3}, {1})) == 9);
}

TEST_CASE("qproduct limit at y = -1") {
  CHECK(limit_yneg1(QProduct(1, 0, {3}, {})) == -1);
  CHECK(limit_yneg1(QProduct(1, 0, {2, 2}, {2})) == 0);
  CHECK(limit_yneg1(QProduct(1, 0, {4}, {2})) == -2);
}

TEST_CASE("qproduct to polynomial") {
  CHECK(qproduct_to_poly(QProduct(1, 0, {2, 2}, {2})) == q(-1) + q(1));
  CHECK(qproduct_to_poly(QProduct(1, 0, {4}, {2})) == q(-2) + q(2));
  CHECK(qproduct_to_poly(QProduct(1, 0, {3}, {})) == qint(3));
}

TEST_CASE("cancellation makes equal products compare equal") {
  CHECK(QProduct(1, 0, {2, 2}, {2}) == QProduct(1, 0, {2}, {}));
  CHECK(QProduct(1, 0, {1, 5}, {1}) == QProduct(1, 0, {5}, {}));
}

TEST_CASE("polynomial evaluations") {
  CHECK(poly_eval_y1(q(-1) + q(1)) == 2);
  CHECK(poly_limit_yneg1(q(-2) + q(2)) == -2);
  CHECK(poly_eval_y1(QPoly(1)) == 1);
  CHECK(poly_limit_yneg1(QPoly(1)) == 1);
  CHECK_THROWS_AS(poly_limit_yneg1(q(1)), NonRealAtI);
}

TEST_CASE("exact division") {
  CHECK((qint(4) * qint(3)).divided_by(qint(3)) == qint(4));
  CHECK_THROWS_AS(qint(3).divided_by(qint(2)), NotPolynomial);
  CHECK(qint(6).divided_by(qint(2)) == q(-4) + q(0) + q(4));
}

TEST_CASE("random products: limit agrees with the expanded polynomial") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> pick(1, 7), len(0, 3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<int> num, den;
    for (int i = len(rng); i > 0; --i) num.push_back(pick(rng));
    for (int i = len(rng); i > 0; --i) den.push_back(pick(rng));
    const auto evens = [](const std::vector<int>& v) {
      return std::count_if(v.begin(), v.end(), [](int a) { return a % 2 == 0; });
    };
    if (evens(num) != evens(den)) continue;
    const QProduct p(pick(rng) - 4, 0, num, den);
    QPoly poly;
    try {
      poly = qproduct_to_poly(p);
    } catch (const NotPolynomial&) {
      continue;
    }
    CAPTURE(p.to_string());
    CHECK(limit_yneg1(p) == poly_limit_yneg1(poly));
    CHECK(eval_y1(p) == poly_eval_y1(poly));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("json round trip") {
  const QPoly p = q(-6) + q(-4, 13) + q(0, -94) + q(3, 404);
  const auto j = to_json(p);
  CHECK(j["variable"] == "q");
  CHECK(j["coefficients"][0]["exp"] == -6);
  CHECK(j["coefficients"][1]["coeff"] == "13");
  CHECK(qpoly_from_json(j) == p);
}

TEST_CASE("printing") {
  CHECK(QPoly().to_string() == "0");
  CHECK(qint(2).to_string().find("q") != std::string::npos);
}
