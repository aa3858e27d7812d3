#include "tropcount/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "tropcount/floordiag.hpp"
#include "tropcount/invariants.hpp"

namespace tropcount {

LatticeVector side_normal_of(const std::string& name) {
  if (name == "bottom") return {0, -1};
  if (name == "left") return {-1, 0};
  if (name == "diag") return {1, 1};
  throw std::invalid_argument("unknown side '" + name + "'");
}

namespace {

std::string side_name(LatticeVector n) {
  if (n == LatticeVector{0, -1}) return "bottom";
  if (n == LatticeVector{-1, 0}) return "left";
  if (n == LatticeVector{1, 1}) return "diag";
  return n.to_string();
}

int parse_positive(const std::string& s, std::size_t pos) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("expected a positive integer, got '" + s + "'", pos);
  }
  const int v = std::stoi(s);
  if (v < 1) throw ParseError("expected a positive integer, got '" + s + "'", pos);
  return v;
}

}  // namespace

PointConditionType parse_conditions(const std::string& text) {
  PointConditionType type;
  std::vector<std::pair<int, std::size_t>> pairs;  // (P, token offset)
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    std::size_t lo = start, hi = end;
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    const std::string tok = text.substr(lo, hi - lo);
    if (tok.empty()) throw ParseError("empty token", lo);

    if (tok.rfind("int*", 0) == 0) {
      const int k = parse_positive(tok.substr(4), lo + 4);
      type.conditions.insert(type.conditions.end(), k, Condition{});
    } else if (tok == "int") {
      type.conditions.push_back({});
    } else if (tok.rfind("pair@", 0) == 0) {
      pairs.push_back({parse_positive(tok.substr(5), lo + 5), lo});
    } else if (tok.rfind("bnd:", 0) == 0) {
      const auto colon = tok.find(':', 4);
      if (colon == std::string::npos) throw ParseError("expected bnd:SIDE:M", lo);
      Condition c{ConditionKind::BoundaryTangency, {}, parse_positive(tok.substr(colon + 1), lo + colon + 1)};
      try {
        c.side_normal = side_normal_of(tok.substr(4, colon - 4));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lo + 4);
      }
      type.conditions.push_back(c);
    } else if (tok.rfind("pairbnd:", 0) == 0) {
      Condition c{ConditionKind::BoundaryPair, {}, 2};
      try {
        c.side_normal = side_normal_of(tok.substr(8));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lo + 8);
      }
      type.conditions.push_back(c);
    } else {
      throw ParseError("unknown token '" + tok + "'", lo);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  std::stable_sort(pairs.begin(), pairs.end());
  for (const auto& [p, offset] : pairs) {
    // Index in the full list of the (p-1)-th interior condition.
    int seen = 0;
    std::size_t at = type.conditions.size();
    for (std::size_t i = 0; i < type.conditions.size(); ++i) {
      if (type.conditions[i].is_boundary()) continue;
      if (seen == p - 1) {
        at = i;
        break;
      }
      ++seen;
    }
    if (at == type.conditions.size() && seen != p - 1) {
      throw ParseError("pair position " + std::to_string(p) + " exceeds the interior conditions", offset);
    }
    type.conditions.insert(type.conditions.begin() + static_cast<std::ptrdiff_t>(at),
                           Condition{ConditionKind::InteriorPair, {}, 1});
  }
  return type;
}

std::string format_conditions(const PointConditionType& type) {
  std::vector<std::string> toks;
  int run = 0, interior = 0;
  auto flush = [&] {
    if (run > 0) toks.push_back("int*" + std::to_string(run));
    run = 0;
  };
  std::vector<std::string> pairs;
  for (const auto& c : type.conditions) {
    switch (c.kind) {
      case ConditionKind::InteriorSimple:
        ++run, ++interior;
        break;
      case ConditionKind::InteriorPair:
        pairs.push_back("pair@" + std::to_string(++interior));
        break;
      case ConditionKind::BoundaryTangency:
        flush();
        toks.push_back("bnd:" + side_name(c.side_normal) + ":" + std::to_string(c.order));
        break;
      case ConditionKind::BoundaryPair:
        flush();
        toks.push_back("pairbnd:" + side_name(c.side_normal));
        break;
    }
  }
  flush();
  toks.insert(toks.end(), pairs.begin(), pairs.end());
  std::string s;
  for (const auto& t : toks) s += (s.empty() ? "" : ",") + t;
  return s;
}

nlohmann::json error_json(const std::exception& e) {
  std::string type = "Error";
  nlohmann::json extra = nlohmann::json::object();
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    type = "ParseError";
    extra["position"] = p->position;
  } else if (dynamic_cast<const DimensionMismatch*>(&e)) {
    type = "DimensionMismatch";
  } else if (dynamic_cast<const UnsupportedConfiguration*>(&e)) {
    type = "UnsupportedConfiguration";
  } else if (dynamic_cast<const DegenerateConfiguration*>(&e)) {
    type = "DegenerateConfiguration";
  } else if (dynamic_cast<const ProfileMismatch*>(&e)) {
    type = "ProfileMismatch";
  } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
    type = "InvalidArgument";
  }
  nlohmann::json j{{"type", type}, {"message", e.what()}};
  j.update(extra);
  return {{"error", j}};
}

namespace {

struct Problem {
  std::string polygon = "triangle:3";
  int genus = 0;
  std::string conditions;
  std::string scheme = "complex";
  std::string engine = "path";
  std::string format = "pretty";
  int jobs = 1;
};

nlohmann::json problem_json(const Problem& p) {
  return {{"polygon", p.polygon}, {"genus", p.genus},     {"conditions", p.conditions},
          {"scheme", p.scheme},   {"engine", p.engine}};
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string value_text(const InvariantValue& v) {
  if (v.scheme != Scheme::Refined) return v.value.get_str();
  if (v.polynomial) return v.polynomial->to_string();
  std::string s = "(" + v.numerator.to_string() + ")";
  for (int w : v.denominator) s += "/[" + std::to_string(w) + "]";
  return s;
}

std::string opt_text(const std::optional<mpq_class>& q, bool pole = false) {
  if (pole) return "pole";
  return q ? q->get_str() : "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Writes rows as a CSV or aligned table; the first row is the header.
void emit_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows, bool csv) {
  if (csv) {
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(i + 1 < r.size() ? width[i] : 0)) << r[i];
    }
    out << "\n";
    if (k == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      out << std::string(total, '-') << "\n";
    }
  }
}

std::vector<std::string> value_row(const std::string& label, const InvariantValue& v) {
  return {label, value_text(v), opt_text(v.at_y1), opt_text(v.at_yneg1, v.pole),
          std::to_string(v.provenance.curves)};
}

const std::vector<std::string> kValueHeader{"engine", "value", "at_y1", "at_yneg1", "curves"};

struct Setup {
  LatticePolygon polygon;
  PointConditionType type;
  Scheme scheme;
};

Setup prepare(const Problem& p) {
  Setup s{LatticePolygon::parse(p.polygon), {}, parse_scheme(p.scheme)};
  if (p.conditions.empty()) {
    s.type.conditions.assign(boundary_points(s.polygon) + p.genus - 1, Condition{});
  } else {
    s.type = parse_conditions(p.conditions);
  }
  check_dimension(s.polygon, p.genus, s.type);
  return s;
}

int cmd_count(const Problem& p, std::ostream& out) {
  const auto s = prepare(p);
  std::vector<Engine> engines;
  if (p.engine == "all") {
    engines = {Engine::Path, Engine::Floor, Engine::Brute};
  } else {
    engines = {parse_engine(p.engine)};
  }
  struct Outcome {
    Engine engine;
    std::optional<InvariantValue> value;
    std::optional<nlohmann::json> error;
  };
  std::vector<Outcome> outcomes;
  for (auto e : engines) {
    Outcome o{e, {}, {}};
    try {
      o.value = compute(s.polygon, p.genus, s.type, s.scheme, {e, p.jobs, {}});
    } catch (const UnsupportedConfiguration& ex) {
      if (engines.size() == 1) throw;
      o.error = error_json(ex);
    }
    outcomes.push_back(std::move(o));
  }

  if (engines.size() == 1) {
    const auto& v = *outcomes[0].value;
    if (p.format == "json") {
      auto j = to_json(v);
      j["problem"] = problem_json(p);
      out << json_text(j);
    } else {
      emit_table(out, {kValueHeader, value_row(to_string(engines[0]), v)},
                 p.format == "csv");
    }
    return 0;
  }

  std::set<std::string> distinct;
  for (const auto& o : outcomes) {
    if (o.value) distinct.insert(value_text(*o.value));
  }
  const bool agree = distinct.size() <= 1;
  if (p.format == "json") {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& o : outcomes) {
      results.push_back(o.value ? to_json(*o.value) : nlohmann::json{{"engine", to_string(o.engine)}, {"skipped", *o.error}});
    }
    out << json_text({{"problem", problem_json(p)}, {"engine", "all"}, {"results", results}, {"agree", agree}});
  } else {
    std::vector<std::vector<std::string>> rows{kValueHeader};
    for (const auto& o : outcomes) {
      if (o.value) {
        rows.push_back(value_row(to_string(o.engine), *o.value));
      } else {
        rows.push_back({to_string(o.engine), "skipped: " + (*o.error)["error"]["message"].get<std::string>(), "", "", ""});
      }
    }
    emit_table(out, rows, p.format == "csv");
    if (p.format != "csv") out << (agree ? "engines agree\n" : "ENGINES DISAGREE\n");
  }
  return agree ? 0 : 1;
}

void emit_report(const Problem& p, const InvarianceReport& r, std::ostream& out) {
  if (p.format == "json") {
    auto j = to_json(r);
    j["problem"] = problem_json(p);
    out << json_text(j);
    return;
  }
  std::vector<std::vector<std::string>> rows{{"configuration", "value", "at_y1", "at_yneg1", "curves"}};
  for (const auto& row : r.rows) rows.push_back(value_row(row.label, row.value));
  emit_table(out, rows, p.format == "csv");
  if (p.format != "csv") out << "verdict: " << (r.equal ? "equal" : "unequal") << "\n";
}

int cmd_sweep(Problem p, std::ostream& out) {
  p.scheme = "mixed";
  const auto polygon = LatticePolygon::parse(p.polygon);
  emit_report(p, sweep_pair(polygon, p.genus, p.jobs), out);
  return 0;
}

int cmd_invariance(const Problem& p, int configs, std::ostream& out) {
  const auto s = prepare(p);
  InvarianceReport r;
  if (p.engine == "brute") {
    r = invariance_brute(s.polygon, p.genus, s.type, s.scheme, configs);
  } else if (p.engine == "path") {
    r = invariance_over_functionals(s.polygon, p.genus, s.type, s.scheme, configs, p.jobs);
  } else {
    throw std::invalid_argument("invariance runs on the path or brute engine");
  }
  emit_report(p, r, out);
  return 0;
}

int cmd_counterexample(Problem p, std::ostream& out) {
  p.polygon = "triangle:4";
  p.genus = 1;
  p.scheme = "mixed";
  p.conditions = "int*10,pair@P";
  const auto c = counterexample(p.jobs);
  if (p.format == "json") {
    auto j = to_json(c.sweep);
    j["problem"] = problem_json(p);
    j["special_position"] = c.special_position;
    j["special_value"] = c.special_value.get_str();
    j["generic_value"] = c.generic_value.get_str();
    out << json_text(j);
  } else {
    emit_report(p, c.sweep, out);
    if (p.format != "csv") {
      out << "pair@" << c.special_position << " gives " << c.special_value.get_str() << ", every other position gives "
          << c.generic_value.get_str() << "\n";
    }
  }
  return 0;
}

int cmd_selftest(std::ostream& out) {
  int failed = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    std::string why;
    try {
      ok = f();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "PASS " : "FAIL ") << name << why << "\n";
    failed += ok ? 0 : 1;
  };
  check("quantum integers 1..50", [] {
    for (int a = 1; a <= 50; ++a) {
      const auto q = qint(a);
      if (!q.is_palindromic() || poly_eval_y1(q) != a || poly_limit_yneg1(q) != (a % 2 ? (a % 4 == 1 ? 1 : -1) : 0)) {
        return false;
      }
    }
    return true;
  });
  check("severi path = floor = brute, d <= 2", [] {
    for (int d = 1; d <= 2; ++d) {
      const auto P = LatticePolygon::triangle(d);
      const auto a = severi(P, 0), b = severi(P, 0, {Engine::Floor}), c = severi(P, 0, {Engine::Brute});
      if (a.value != 1 || b.value != 1 || c.value != 1) return false;
    }
    return true;
  });
  check("severi path = floor, d = 3, g = 0, 1", [] {
    const auto P = LatticePolygon::triangle(3);
    return severi(P, 0).value == 12 && severi(P, 0, {Engine::Floor}).value == 12 && severi(P, 1).value == 1 &&
           severi(P, 1, {Engine::Floor}).value == 1;
  });
  check("refined d = 3, g = 0: 12 at y = 1, 8 at y = -1", [] {
    const auto v = refined(LatticePolygon::triangle(3), 0, parse_conditions("int*8"));
    return v.at_y1 == 12 && v.at_yneg1 == 8;
  });
  check("boundary pair on triangle:2 is invariant", [] {
    const auto r = invariance_brute(LatticePolygon::triangle(2), 0, parse_conditions("pairbnd:left,int*3"), Scheme::Real, 3);
    return r.equal && r.rows.size() == 3;
  });
  out << (failed ? std::to_string(failed) + " failed\n" : "all passed\n");
  return failed ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical enumerative invariants: Severi, refined and signed counts"};
  app.require_subcommand(1);
  Problem p;
  int configs = 3;

  auto add_common = [&](CLI::App* sub, bool with_conditions) {
    sub->add_option("--polygon", p.polygon, "triangle:d or poly:(x,y);(x,y);...")->capture_default_str();
    sub->add_option("--genus", p.genus, "genus")->capture_default_str();
    if (with_conditions) {
      sub->add_option("--conditions", p.conditions, "int*K, pair@P, bnd:SIDE:M, pairbnd:SIDE (default: all interior)");
      sub->add_option("--scheme", p.scheme, "complex|refined|real|mixed")->capture_default_str();
    }
    sub->add_option("--format", p.format, "json|csv|pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    sub->add_option("--jobs", p.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto* count = app.add_subcommand("count", "count curves through a configuration");
  add_common(count, true);
  count->add_option("--engine", p.engine, "path|floor|brute|all")
      ->check(CLI::IsMember({"path", "floor", "brute", "all"}))
      ->capture_default_str();
  auto* sweep = app.add_subcommand("sweep-pair", "mixed counts with one interior pair at every position");
  add_common(sweep, false);
  auto* inv = app.add_subcommand("invariance", "compare counts across configurations of one type");
  add_common(inv, true);
  inv->add_option("--engine", p.engine, "path|brute")->check(CLI::IsMember({"path", "brute"}))->capture_default_str();
  inv->add_option("--configs", configs, "number of configurations")->check(CLI::Range(2, 24))->capture_default_str();
  auto* cex = app.add_subcommand("counterexample", "the 63/69 pair sweep on triangle:4, genus 1");
  cex->add_option("--format", p.format, "json|csv|pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  cex->add_option("--jobs", p.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  auto* self = app.add_subcommand("selftest", "fast consistency checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << json_text({{"error", {{"type", "UsageError"}, {"message", e.what()}}}});
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (count->parsed()) return cmd_count(p, out);
    if (sweep->parsed()) return cmd_sweep(p, out);
    if (inv->parsed()) return cmd_invariance(p, configs, out);
    if (cex->parsed()) return cmd_counterexample(p, out);
    if (self->parsed()) return cmd_selftest(out);
  } catch (const std::exception& e) {
    out << json_text(error_json(e));
    err << e.what() << "\n";
    const bool input = dynamic_cast<const std::invalid_argument*>(&e) != nullptr;
    return input ? 2 : 1;
  }
  return 2;
}

}  // namespace tropcount
