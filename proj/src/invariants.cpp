#include "tropcount/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "tropcount/floordiag.hpp"

namespace tropcount {

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Path: return "path";
    case Engine::Floor: return "floor";
    case Engine::Brute: return "brute";
  }
  return "?";
}

Engine parse_engine(const std::string& text) {
  if (text == "path") return Engine::Path;
  if (text == "floor") return Engine::Floor;
  if (text == "brute") return Engine::Brute;
  throw std::invalid_argument("unknown engine '" + text + "'");
}

namespace {

std::string join(const std::vector<Condition>& cs) {
  std::string s;
  for (const auto& c : cs) s += (s.empty() ? "" : ", ") + to_string(c);
  return s;
}

// Degree of a standard triangle, or 0.
int triangle_degree(const LatticePolygon& polygon) {
  const auto& v = polygon.vertices();
  for (const auto& x : v) {
    if (x.x > 0 && x.y == 0) return polygon == LatticePolygon::triangle(static_cast<int>(x.x)) ? static_cast<int>(x.x) : 0;
  }
  return 0;
}

// Any order works for the oracle; prefer the path engine's when it exists.
MikhalkinConfig oracle_config(const LatticePolygon& polygon, const PointConditionType& type,
                              std::optional<LatticeVector> lambda) {
  try {
    return make_config(polygon, type, lambda);
  } catch (const UnsupportedConfiguration&) {
    return {lambda.value_or(default_lambda(polygon)), type.conditions};
  }
}

void fill_from_tally(InvariantValue& v, const Tally& t) {
  v.provenance.curves = t.enumerated;
  if (t.scheme == Scheme::Refined) {
    auto r = refined_value(t.numerator, t.denominator);
    r.provenance = v.provenance;
    v = std::move(r);
    return;
  }
  v.value = t.rational;
  if (t.scheme == Scheme::Complex) {
    v.at_y1 = t.rational;
  } else {
    v.at_yneg1 = t.rational;
  }
}

std::string value_key(const InvariantValue& v) {
  if (v.scheme != Scheme::Refined) return v.value.get_str();
  if (v.polynomial) return v.polynomial->to_string();
  std::string s = "(" + v.numerator.to_string() + ")/";
  for (int w : v.denominator) s += "[" + std::to_string(w) + "]";
  return s;
}

void finish(InvarianceReport& r) {
  for (const auto& row : r.rows) {
    const auto k = value_key(row.value);
    if (std::find(r.distinct.begin(), r.distinct.end(), k) == r.distinct.end()) r.distinct.push_back(k);
  }
  r.equal = r.distinct.size() <= 1;
}

}  // namespace

InvariantValue refined_value(const QPoly& numerator, const std::vector<int>& denominator) {
  InvariantValue v;
  v.scheme = Scheme::Refined;
  v.numerator = numerator;
  v.denominator = denominator;
  QPoly den(1);
  mpz_class den_y1 = 1;
  for (int w : denominator) {
    den *= qint(w);
    den_y1 *= w;
  }
  v.at_y1 = mpq_class(poly_eval_y1(numerator)) / den_y1;
  v.value = *v.at_y1;
  try {
    v.polynomial = numerator.divided_by(den);
  } catch (const NotPolynomial&) {
  }
  if (v.polynomial) {
    v.at_yneg1 = poly_limit_yneg1(*v.polynomial);
    return v;
  }
  // Cancel the common zeros at q = i, i.e. factors q^-1 + q.
  const QPoly z = qint(2);
  QPoly num = numerator;
  while (true) {
    try {
      const QPoly n2 = num.divided_by(z), d2 = den.divided_by(z);
      num = n2;
      den = d2;
    } catch (const NotPolynomial&) {
      break;
    }
  }
  const auto den_i = poly_limit_yneg1(den);
  if (den_i == 0) {
    v.pole = true;
  } else {
    v.at_yneg1 = poly_limit_yneg1(num) / den_i;
  }
  return v;
}

InvariantValue compute(const LatticePolygon& polygon, int genus, const PointConditionType& type, Scheme scheme,
                       const RunOptions& options) {
  check_dimension(polygon, genus, type);
  InvariantValue v;
  v.scheme = scheme;
  v.provenance.engine = to_string(options.engine);
  v.provenance.polygon = polygon.to_string();
  v.provenance.genus = genus;
  v.provenance.conditions = join(type.conditions);

  switch (options.engine) {
    case Engine::Path: {
      const auto config = make_config(polygon, type, options.lambda);
      v.provenance.lambda = config.lambda;
      for (const auto& c : config.order) v.provenance.order.push_back(to_string(c));
      const auto result = enumerate_curves(polygon, genus, config, {options.jobs, scheme != Scheme::Mixed});
      fill_from_tally(v, tally(result, scheme, genus));
      return v;
    }
    case Engine::Brute: {
      const auto config = oracle_config(polygon, type, options.lambda);
      v.provenance.lambda = config.lambda;
      for (const auto& c : config.order) v.provenance.order.push_back(to_string(c));
      const auto result = brute_enumerate(polygon, genus, mikhalkin_positions(polygon, config));
      fill_from_tally(v, tally(result, scheme, genus));
      return v;
    }
    case Engine::Floor: {
      const int d = triangle_degree(polygon);
      if (d == 0) throw UnsupportedConfiguration("floor diagrams need a triangle:d polygon");
      if (scheme != Scheme::Complex && scheme != Scheme::Refined) {
        throw UnsupportedConfiguration("floor diagrams give complex and refined counts only");
      }
      std::vector<int> profile;
      for (const auto& c : type.conditions) {
        if (c.kind == ConditionKind::InteriorSimple) continue;
        if (c.kind != ConditionKind::BoundaryTangency || c.side_normal != LatticeVector{-1, 0}) {
          throw UnsupportedConfiguration("floor diagrams take interior points and tangencies to the left side only");
        }
        profile.push_back(c.order);
      }
      const auto fd = relative_refined_fd(d, genus, profile);
      v.provenance.curves = fd.diagrams;
      if (scheme == Scheme::Refined) {
        auto r = refined_value(fd.value, {});
        r.provenance = v.provenance;
        return r;
      }
      v.value = poly_eval_y1(fd.value);
      v.at_y1 = v.value;
      return v;
    }
  }
  throw std::logic_error("unknown engine");
}

InvariantValue severi(const LatticePolygon& polygon, int genus, const RunOptions& options) {
  PointConditionType type;
  type.conditions.assign(boundary_points(polygon) + genus - 1, Condition{});
  return compute(polygon, genus, type, Scheme::Complex, options);
}

InvariantValue refined(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                       const RunOptions& options) {
  return compute(polygon, genus, type, Scheme::Refined, options);
}

InvariantValue welschinger_mixed(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                 const RunOptions& options) {
  if (type.pair_count() > 0) return compute(polygon, genus, type, Scheme::Mixed, options);
  auto v = compute(polygon, genus, type, Scheme::Real, options);
  const auto r = compute(polygon, genus, type, Scheme::Refined, options);
  if (r.at_yneg1 && *r.at_yneg1 != v.value) {
    throw std::logic_error("signed count " + v.value.get_str() + " differs from the refined limit " +
                           r.at_yneg1->get_str());
  }
  return v;
}

InvarianceReport invariance_over_functionals(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                             Scheme scheme, int k, int jobs) {
  InvarianceReport report;
  for (const auto& l : lambda_variants(polygon)) {
    if (static_cast<int>(report.rows.size()) >= k) break;
    try {
      make_config(polygon, type, l);
    } catch (const UnsupportedConfiguration&) {
      continue;
    }
    report.rows.push_back({"lambda=" + l.to_string(), compute(polygon, genus, type, scheme, {Engine::Path, jobs, l})});
  }
  if (report.rows.size() < 2) throw UnsupportedConfiguration("fewer than two configurations support this type");
  finish(report);
  return report;
}

InvarianceReport invariance_brute(const LatticePolygon& polygon, int genus, const PointConditionType& type,
                                  Scheme scheme, int k) {
  InvarianceReport report;
  for (const auto& l : lambda_variants(polygon)) {
    if (static_cast<int>(report.rows.size()) >= k) break;
    report.rows.push_back({"positions along " + l.to_string(), compute(polygon, genus, type, scheme, {Engine::Brute, 1, l})});
  }
  if (report.rows.size() < 2) throw UnsupportedConfiguration("fewer than two configurations");
  finish(report);
  return report;
}

InvarianceReport sweep_pair(const LatticePolygon& polygon, int genus, int jobs) {
  const int total = static_cast<int>(boundary_points(polygon)) + genus - 1;
  if (total < 2) throw DimensionMismatch("no room for an interior pair");
  const int n = total - 1;  // one pair plus total - 2 simple points
  InvarianceReport report;
  for (int pos = 1; pos <= n; ++pos) {
    PointConditionType type;
    type.conditions.assign(n, Condition{});
    type.conditions[pos - 1].kind = ConditionKind::InteriorPair;
    report.rows.push_back({"pair@" + std::to_string(pos), compute(polygon, genus, type, Scheme::Mixed, {Engine::Path, jobs, {}})});
  }
  finish(report);
  return report;
}

Counterexample counterexample(int jobs) {
  Counterexample out;
  out.sweep = sweep_pair(LatticePolygon::triangle(4), 1, jobs);
  const auto& rows = out.sweep.rows;
  if (rows.size() != 11) throw std::runtime_error("expected 11 pair positions, got " + std::to_string(rows.size()));
  for (int i = 0; i < 11; ++i) {
    const mpq_class want = i == 5 ? 63 : 69;
    if (rows[i].value.value != want) {
      throw std::runtime_error(rows[i].label + " gives " + rows[i].value.value.get_str() + ", expected " +
                               want.get_str());
    }
  }
  out.special_position = 6;
  out.special_value = 63;
  out.generic_value = 69;
  return out;
}

nlohmann::json to_json(const InvariantValue& v) {
  using nlohmann::json;
  json j;
  j["scheme"] = to_string(v.scheme);
  j["engine"] = v.provenance.engine;
  if (v.scheme == Scheme::Refined) {
    if (v.polynomial) {
      j["value"] = {{"polynomial", to_json(*v.polynomial)}};
    } else {
      j["value"] = {{"numerator", to_json(v.numerator)}, {"denominator_qints", v.denominator}};
    }
  } else {
    j["value"] = {{"rational", v.value.get_str()}};
  }
  j["at_y1"] = v.at_y1 ? json(v.at_y1->get_str()) : json(nullptr);
  j["at_yneg1"] = v.pole ? json("pole") : v.at_yneg1 ? json(v.at_yneg1->get_str()) : json(nullptr);
  j["curves_enumerated"] = v.provenance.curves;
  json prov{{"polygon", v.provenance.polygon}, {"genus", v.provenance.genus},
            {"conditions", v.provenance.conditions}, {"order", v.provenance.order}};
  prov["lambda"] = v.provenance.lambda ? json(v.provenance.lambda->to_string()) : json(nullptr);
  j["provenance"] = prov;
  return j;
}

nlohmann::json to_json(const InvarianceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) rows.push_back({{"label", row.label}, {"result", to_json(row.value)}});
  return {{"rows", rows}, {"verdict", r.equal ? "equal" : "unequal"}, {"distinct_values", r.distinct}};
}

}  // namespace tropcount
