#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "tropcount/cli.hpp"

using namespace tropcount;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str()};
}

json run_json(std::vector<std::string> args, int expect = 0) {
  if (!args.empty()) {
    args.push_back("--format");
    args.push_back("json");
  }
  const auto r = run(std::move(args));
  CHECK(r.status == expect);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("parse conditions") {
  const auto t = parse_conditions("int*3,bnd:left:2,int");
  REQUIRE(t.conditions.size() == 5);
  CHECK(t.conditions[3].kind == ConditionKind::BoundaryTangency);
  CHECK(t.conditions[3].side_normal == LatticeVector{-1, 0});
  CHECK(t.conditions[3].order == 2);
  CHECK(t.dimension_total() == 6);

  const auto p = parse_conditions("int*4,pair@2");
  REQUIRE(p.conditions.size() == 5);
  CHECK(p.conditions[1].kind == ConditionKind::InteriorPair);

  const auto b = parse_conditions("pairbnd:bottom,int*2");
  CHECK(b.conditions[0].kind == ConditionKind::BoundaryPair);
  CHECK(b.conditions[0].side_normal == LatticeVector{0, -1});
  CHECK(b.conditions[0].order == 2);
  CHECK(side_normal_of("diag") == LatticeVector{1, 1});
}

TEST_CASE("format conditions round trip") {
  for (std::string s : {"int*8", "bnd:left:2,int*6", "int*3,pair@2", "pairbnd:diag,int*2"}) {
    CAPTURE(s);
    const auto t = parse_conditions(s);
    CHECK(parse_conditions(format_conditions(t)).conditions == t.conditions);
  }
}

TEST_CASE("parse errors carry the token offset") {
  struct Case {
    std::string text;
    std::size_t position;
  };
  for (const auto& [text, position] : std::vector<Case>{{"int*3,foo", 6},
                                                        {"int*x", 4},
                                                        {"int*2,bnd:top:2", 10},
                                                        {"int*2,bnd:left:0", 15},
                                                        {"int*3,pair@9", 6},
                                                        {"int,,int", 4}}) {
    CAPTURE(text);
    try {
      parse_conditions(text);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.position == position);
    }
  }
}

TEST_CASE("count json") {
  const auto j = run_json({"count", "--polygon", "triangle:3", "--scheme", "refined"});
  CHECK(j["at_y1"] == "12");
  CHECK(j["at_yneg1"] == "8");
  CHECK(j["engine"] == "path");
  CHECK(j["value"]["polynomial"]["coefficients"].size() == 3);
}

TEST_CASE("count with all engines") {
  const auto j = run_json({"count", "--polygon", "triangle:3", "--genus", "1"});
  CHECK(j.contains("error") == false);
  const auto all = run_json({"count", "--polygon", "triangle:3", "--engine", "all"});
  CHECK(all["agree"] == true);
  REQUIRE(all["results"].size() == 3);
  for (const auto& r : all["results"]) CHECK(r["value"]["rational"] == "12");
}

TEST_CASE("csv and pretty output") {
  const auto csv = run({"count", "--polygon", "triangle:3", "--conditions", "int*6,bnd:left:2", "--scheme", "real",
                        "--format", "csv"});
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("engine,value", 0) == 0);
  CHECK(csv.out.find("path,6") != std::string::npos);
  const auto pretty = run({"counterexample", "--format", "pretty"});
  CHECK(pretty.status == 0);
  CHECK(pretty.out.find("pair@6") != std::string::npos);
  CHECK(pretty.out.find("63") != std::string::npos);
}

TEST_CASE("sweep and counterexample json") {
  const auto j = run_json({"counterexample"});
  CHECK(j["verdict"] == "unequal");
  CHECK(j["rows"].size() == 11);
  CHECK(j["rows"][5]["result"]["value"]["rational"] == "63");
  CHECK(j["rows"][0]["result"]["value"]["rational"] == "69");
  const auto s = run_json({"sweep-pair", "--polygon", "triangle:3"});
  CHECK(s["rows"].size() == 7);
}

TEST_CASE("invariance subcommand") {
  const auto j = run_json({"invariance", "--polygon", "triangle:2", "--scheme", "refined", "--configs", "4"});
  CHECK(j["verdict"] == "equal");
  CHECK(j["rows"].size() == 4);
  const auto b = run_json({"invariance", "--polygon", "triangle:2", "--conditions", "pairbnd:bottom,int*3", "--scheme",
                           "real", "--engine", "brute", "--configs", "3"});
  CHECK(b["verdict"] == "equal");
}

TEST_CASE("errors are json objects") {
  const auto dim = run_json({"count", "--conditions", "int*7"}, 2);
  CHECK(dim["error"]["type"] == "DimensionMismatch");
  const auto parse = run_json({"count", "--conditions", "int*3,bogus"}, 2);
  CHECK(parse["error"]["type"] == "ParseError");
  CHECK(parse["error"]["position"] == 6);
  const auto unsupported = run_json({"count", "--conditions", "bnd:left:2,bnd:bottom:2,int*4"}, 2);
  CHECK(unsupported["error"]["type"] == "UnsupportedConfiguration");
  const auto scheme = run_json({"count", "--scheme", "imaginary"}, 2);
  CHECK(scheme["error"]["type"] == "InvalidArgument");
  const auto usage = run_json({"count", "--bogus"}, 2);
  CHECK(usage["error"]["type"] == "UsageError");
  const auto none = run_json({}, 2);
  CHECK(none.contains("error"));
}

TEST_CASE("jobs do not change output") {
  const auto a = run({"sweep-pair", "--polygon", "triangle:4", "--genus", "1", "--jobs", "1"});
  const auto b = run({"sweep-pair", "--polygon", "triangle:4", "--genus", "1", "--jobs", "3"});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("selftest") {
  const auto r = run({"selftest"});
  CHECK(r.status == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
