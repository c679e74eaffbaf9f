#include "qdt/io.hpp"

#include <fstream>
#include <sstream>

namespace qdt::io {

namespace {

const Json& field(const Json& j, const char* name, const char* what) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidInput(std::string(what) + ": missing field \"" + name + "\"");
  }
  return j.at(name);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw InvalidInput(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw InvalidInput(std::string(what) + ": bad exponent '" + text + "'");
  return v;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw InvalidInput("malformed rational '" + text + "'");
  }
  r.canonicalize();
  return r;
}

Quiver quiver_from_json(const Json& j) {
  try {
    std::vector<std::string> vertices;
    for (const auto& v : field(j, "vertices", "quiver")) vertices.push_back(as_string(v, "quiver vertex"));
    std::vector<ArrowSpec> arrows;
    if (j.contains("arrows")) {
      for (const auto& a : j.at("arrows")) {
        arrows.push_back({as_string(field(a, "label", "arrow"), "arrow label"),
                          as_string(field(a, "src", "arrow"), "arrow src"),
                          as_string(field(a, "tgt", "arrow"), "arrow tgt")});
      }
    }
    return Quiver(std::move(vertices), arrows);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("quiver: ") + e.what());
  }
}

Json to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrow_specs()) arrows.push_back({{"label", a.label}, {"src", a.source}, {"tgt", a.target}});
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

StabilityCondition stability_from_json(const Json& j, const Quiver& q) {
  const Json& re = field(j, "re", "stability");
  if (!re.is_object()) throw InvalidInput("stability: \"re\" must be an object");
  std::vector<Rational> parts(q.vertex_count());
  std::vector<char> seen(q.vertex_count(), 0);
  for (const auto& [name, value] : re.items()) {
    const std::size_t i = q.vertex_index(name);
    parts[i] = value.is_number_integer() ? Rational(value.get<long>()) : parse_rational(as_string(value, "stability"));
    seen[i] = 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InvalidInput("stability: no value for vertex " + q.vertices()[i]);
  }
  return StabilityCondition(std::move(parts));
}

Json to_json(const StabilityCondition& z, const Quiver& q) {
  Json re = Json::object();
  for (std::size_t i = 0; i < q.vertex_count(); ++i) re[q.vertices()[i]] = rational_string(z.real_parts()[i]);
  return {{"re", re}};
}

SerreConstraint constraint_from_json(const Json& j) {
  SerreConstraint s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw InvalidInput("constraint: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "clauses" && key != "nilpotent_module") throw InvalidInput("constraint: unknown key '" + key + "'");
  }
  if (j.contains("clauses")) {
    for (const auto& c : j.at("clauses")) {
      CycleClause clause;
      for (const auto& label : field(c, "cycle", "constraint clause")) {
        clause.cycle.push_back(as_string(label, "cycle label"));
      }
      if (clause.cycle.empty()) throw InvalidInput("constraint: empty cycle");
      const std::string kind = as_string(field(c, "kind", "constraint clause"), "clause kind");
      if (kind == "nilpotent") {
        clause.kind = CycleKind::nilpotent;
      } else if (kind == "invertible") {
        clause.kind = CycleKind::invertible;
      } else {
        throw InvalidInput("constraint: unknown kind '" + kind + "'");
      }
      s.clauses.push_back(std::move(clause));
    }
  }
  if (j.contains("nilpotent_module")) {
    if (!j.at("nilpotent_module").is_boolean()) throw InvalidInput("constraint: nilpotent_module must be a boolean");
    s.nilpotent_module = j.at("nilpotent_module").get<bool>();
  }
  return s;
}

Json to_json(const SerreConstraint& s) {
  Json clauses = Json::array();
  for (const auto& c : s.clauses) {
    clauses.push_back({{"cycle", c.cycle}, {"kind", c.kind == CycleKind::nilpotent ? "nilpotent" : "invertible"}});
  }
  return {{"clauses", clauses}, {"nilpotent_module", s.nilpotent_module}};
}

LaurentPoly poly_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial: expected an object");
  LaurentPoly p;
  for (const auto& [exp, c] : j.items()) {
    p += LaurentPoly::monomial(parse_int(exp, "polynomial"), parse_rational(as_string(c, "polynomial coefficient")));
  }
  return p;
}

Json to_json(const LaurentPoly& p) {
  Json j = Json::object();
  for (const auto& [e, c] : p.coeffs()) j[std::to_string(e)] = rational_string(c);
  return j;
}

LaurentPoly q_poly_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial: expected an object");
  LaurentPoly p;
  for (const auto& [exp, c] : j.items()) {
    p += LaurentPoly::q_power(parse_int(exp, "polynomial"), parse_rational(as_string(c, "polynomial coefficient")));
  }
  return p;
}

Json to_q_json(const LaurentPoly& p) {
  if (!p.even_powers_only()) throw InvalidInput("polynomial " + p.to_string() + " is not a polynomial in q");
  Json j = Json::object();
  for (const auto& [e, c] : p.coeffs()) j[std::to_string(e / 2)] = rational_string(c);
  return j;
}

TruncSeries series_from_json(const Json& j) {
  std::vector<std::string> vars;
  for (const auto& v : field(j, "variables", "series")) vars.push_back(as_string(v, "series variable"));
  const Json& order = field(j, "order", "series");
  if (!order.is_number_integer()) throw InvalidInput("series: order must be an integer");
  TruncSeries s(vars, order.get<int>());
  for (const auto& t : field(j, "terms", "series")) {
    std::vector<int> d;
    for (const auto& e : field(t, "dim", "series term")) {
      if (!e.is_number_integer() || e.get<int>() < 0) throw InvalidInput("series: bad exponent");
      d.push_back(e.get<int>());
    }
    const LaurentPoly den = t.contains("den") ? poly_from_json(t.at("den")) : LaurentPoly(1);
    if (den.is_zero()) throw InvalidInput("series: zero denominator");
    s.set_coeff(DimVector(d), RationalFunction(poly_from_json(field(t, "num", "series term")), den));
  }
  return s;
}

Json to_json(const TruncSeries& s) {
  Json terms = Json::array();
  for (const auto& d : s.monomials()) {
    const RationalFunction c = s.coeff(d);
    if (c.is_zero()) continue;
    terms.push_back({{"dim", d.entries()}, {"num", to_json(c.num())}, {"den", to_json(c.den())}, {"text", c.to_string()}});
  }
  return {{"variables", s.variables()}, {"order", s.order()}, {"terms", terms}};
}

KacTable kac_table_from_json(const Json& j, const std::filesystem::path& base) {
  auto resolve = [&](const Json& v) { return v.is_string() ? read_json_file(base / v.get<std::string>()) : v; };
  KacTable k;
  k.quiver = quiver_from_json(resolve(field(j, "quiver", "Kac table")));
  if (j.contains("constraint") && !j.at("constraint").is_null()) {
    k.constraint = constraint_from_json(resolve(j.at("constraint")));
    k.constraint.validate(k.quiver);
  }
  const Json& order = field(j, "order", "Kac table");
  if (!order.is_number_integer() || order.get<int>() < 0) throw InvalidInput("Kac table: bad order");
  k.order = order.get<int>();
  k.laurent = j.value("laurent", false);
  const Json& entries = field(j, "entries", "Kac table");
  for (const auto& [key, value] : entries.items()) {
    const DimVector d = DimVector::parse(key);
    Provenance how = Provenance::user_supplied;
    if (j.contains("provenance") && j.at("provenance").contains(key)) {
      how = parse_provenance(as_string(j.at("provenance").at(key), "provenance"));
    }
    k.set(d, q_poly_from_json(value), how);
  }
  return k;
}

Json to_json(const KacTable& k) {
  Json entries = Json::object(), provenance = Json::object();
  for (const auto& [d, a] : k.entries) {
    entries[d.key()] = to_q_json(a);
    provenance[d.key()] = to_string(k.provenance.at(d));
  }
  return {{"quiver", to_json(k.quiver)},
          {"constraint", k.constraint.empty() ? Json(nullptr) : to_json(k.constraint)},
          {"order", k.order},
          {"laurent", k.laurent},
          {"entries", entries},
          {"provenance", provenance}};
}

Json to_json(const CensusReport& r) {
  Json j = {{"p", r.p},
            {"dim", r.dim.entries()},
            {"relations", to_string(r.relations)},
            {"constraint", r.constraint},
            {"point_count", r.point_count.get_str()},
            {"stack_count", rational_string(r.stack_count)}};
  if (r.semistable_count) j["semistable_count"] = r.semistable_count->get_str();
  if (r.iso_classes) j["iso_classes"] = r.iso_classes->get_str();
  if (r.indecomposable_classes) j["indecomposable_classes"] = r.indecomposable_classes->get_str();
  if (r.abs_indecomposable_classes) j["abs_indecomposable_classes"] = r.abs_indecomposable_classes->get_str();
  return j;
}

Json to_json(const WallcrossReport& r) {
  Json coeffs = Json::array();
  for (const auto& c : r.coefficients) {
    coeffs.push_back({{"dim", c.d.entries()},
                      {"lhs", rational_string(c.lhs)},
                      {"rhs", rational_string(c.rhs)},
                      {"decompositions_match", c.decompositions_match},
                      {"result", c.pass && c.decompositions_match ? "pass" : "fail"}});
  }
  Json j = {{"p", r.p},
            {"order", r.order},
            {"relations", to_string(r.relations)},
            {"perturbation", r.perturbation},
            {"result", r.pass() ? "pass" : "fail"},
            {"coefficients", coeffs}};
  if (auto f = r.first_failure()) j["first_failure"] = f->entries();
  return j;
}

}  // namespace qdt::io
