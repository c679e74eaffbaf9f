#include "qdt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qdt/acceptance.hpp"
#include "qdt/io.hpp"
#include "qdt/kac.hpp"

namespace qdt::cli {

namespace {

using io::Json;
using Table = std::vector<std::vector<std::string>>;

struct Report {
  Json json;
  Table csv;  // first row is the header
  bool pass = true;
};

struct Flags {
  std::string quiver, stability, constraint, restriction = "none", dim, primes, relations = "none";
  std::string framing, classify = "none", normalization = "standard", kac, from_series, at_q;
  std::string out, format = "json";
  long p = 0;
  int order = -1;
  long perturb = 0;
  bool verify = false, raw_census = false;
  std::uint64_t point_budget = CensusOptions{}.point_budget;
  std::uint64_t end_budget = CensusOptions{}.end_budget;
  int workers = CensusOptions::default_workers();
};

// Rethrows InvalidInput from `fn` prefixed with the flag that supplied it.
template <class Fn>
auto from_flag(const char* flag, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string(flag) + ": " + e.what());
  }
}

Quiver load_quiver(const Flags& f) {
  if (f.quiver.empty()) throw InvalidInput("--quiver is required");
  return from_flag("--quiver", [&] {
    const std::string prefix = "builtin:";
    if (f.quiver.rfind(prefix, 0) != 0) return io::quiver_from_json(io::read_json_file(f.quiver));
    const std::string name = f.quiver.substr(prefix.size());
    if (name == "jordan") return quivers::jordan();
    if (name == "a2") return quivers::a2();
    if (name == "point") return quivers::point();
    if (name.rfind("loops", 0) == 0 && name.size() > 5) {
      const std::string count = name.substr(5);
      if (count.find_first_not_of("0123456789") == std::string::npos && count.size() < 3) {
        return quivers::loops(std::stoi(count));
      }
    }
    throw InvalidInput("unknown builtin quiver '" + name + "' (jordan, a2, point, loopsN)");
  });
}

Relations load_relations(const Flags& f) {
  return from_flag("--relations", [&] { return parse_relations(f.relations); });
}

// Clauses may name the starred arrows when the census runs on the double quiver.
SerreConstraint load_constraint(const Flags& f, const Quiver& q) {
  if (!f.constraint.empty()) {
    if (f.restriction != "none") throw InvalidInput("--constraint and --restriction are mutually exclusive");
    return from_flag("--constraint", [&] {
      const SerreConstraint s = io::constraint_from_json(io::read_json_file(f.constraint));
      s.validate(load_relations(f) == Relations::preprojective ? double_quiver(q) : q);
      return s;
    });
  }
  if (f.restriction == "none") return SerreConstraint::none();
  SerreConstraint s = SerreConstraint::loops_nilpotent(q);
  s.nilpotent_module = f.restriction == "ssn";
  return s;
}

// A JSON file, or comma-separated real parts in vertex order.
std::optional<StabilityCondition> load_stability(const Flags& f, const Quiver& q) {
  if (f.stability.empty()) return std::nullopt;
  return from_flag("--stability", [&] {
    if (std::filesystem::exists(f.stability)) return io::stability_from_json(io::read_json_file(f.stability), q);
    std::vector<Rational> parts;
    std::stringstream in(f.stability);
    for (std::string item; std::getline(in, item, ',');) parts.push_back(io::parse_rational(item));
    if (parts.size() != q.vertex_count()) {
      throw InvalidInput("expected a file or " + std::to_string(q.vertex_count()) + " comma-separated values");
    }
    return StabilityCondition(std::move(parts));
  });
}

StabilityCondition require_stability(const Flags& f, const Quiver& q) {
  auto z = load_stability(f, q);
  if (!z) throw InvalidInput("--stability is required");
  return *z;
}

DimVector parse_dim(const char* flag, const std::string& text, const Quiver& q) {
  return from_flag(flag, [&] {
    const DimVector d = DimVector::parse(text);
    q.check_dim(d);
    return d;
  });
}

// --p and --primes merged; primes must be strictly increasing.
std::vector<std::uint32_t> load_primes(const Flags& f) {
  std::vector<std::uint32_t> out;
  if (f.p != 0) out.push_back(static_cast<std::uint32_t>(f.p));
  if (!f.primes.empty()) {
    if (f.p != 0) throw InvalidInput("--p and --primes are mutually exclusive");
    std::stringstream in(f.primes);
    for (std::string item; std::getline(in, item, ',');) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size() || v > 0xffffffffUL) throw InvalidInput("--primes: bad entry '" + item + "'");
      out.push_back(static_cast<std::uint32_t>(v));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_prime(out[i])) throw InvalidInput("--p/--primes: " + std::to_string(out[i]) + " is not prime");
    if (i > 0 && out[i] <= out[i - 1]) throw InvalidInput("--primes must be strictly increasing");
  }
  return out;
}

std::uint32_t require_prime(const Flags& f) {
  const auto primes = load_primes(f);
  if (primes.size() != 1) throw InvalidInput("exactly one prime is required (--p)");
  return primes.front();
}

int require_order(const Flags& f) {
  if (f.order < 0) throw InvalidInput("--order is required");
  return f.order;
}

CensusOptions census_options(const Flags& f) {
  CensusOptions o;
  o.point_budget = f.point_budget;
  o.end_budget = f.end_budget;
  o.workers = f.workers;
  return o;
}


Json strings(const std::vector<std::uint32_t>& v) {
  Json j = Json::array();
  for (auto x : v) j.push_back(x);
  return j;
}

Table series_csv(const TruncSeries& s) {
  Table t{{"dim", "num", "den", "text"}};
  for (const auto& d : s.monomials()) {
    const RationalFunction c = s.coeff(d);
    if (!c.is_zero()) t.push_back({d.key(), c.num().to_string(), c.den().to_string(), c.to_string()});
  }
  return t;
}

// `at` is "1" (the limit q -> 1) or an integer >= 2.
std::optional<Rational> evaluate(const RationalFunction& c, const std::string& at) {
  if (at.empty()) return std::nullopt;
  if (at == "1") return c.eval_at_one();
  return from_flag("--at-q", [&] {
    const Rational v = io::parse_rational(at);
    if (v.get_den() != 1 || v < 2) throw InvalidInput("expected 1 or an integer >= 2");
    return eval_at_q(c, v.get_num().get_si());
  });
}

Report kac_cmd(const Flags& f) {
  const Quiver q = load_quiver(f);
  const SerreConstraint s = load_constraint(f, q);
  const auto primes = load_primes(f);
  const std::optional<std::vector<std::uint32_t>> nodes =
      primes.empty() ? std::nullopt : std::optional<std::vector<std::uint32_t>>(primes);
  const CensusOptions o = census_options(f);
  Report r;
  r.csv = {{"dim", "kac"}};
  if (!f.dim.empty()) {
    if (f.order >= 0) throw InvalidInput("--dim and --order are mutually exclusive");
    const DimVector d = parse_dim("--dim", f.dim, q);
    const PolynomialFit fit = kac_polynomial_fit(q, d, s, nodes, o);
    r.json = {{"quiver", io::to_json(q)},
              {"constraint", s.empty() ? Json(nullptr) : io::to_json(s)},
              {"dim", d.entries()},
              {"kac", io::to_q_json(fit.poly)},
              {"text", fit.poly.to_string()},
              {"nodes", strings(fit.nodes)},
              {"check_nodes", strings(fit.check_nodes)}};
    r.csv.push_back({d.key(), fit.poly.to_string()});
    return r;
  }
  const int order = require_order(f);
  KacTable table;
  table.quiver = q;
  table.constraint = s;
  table.order = order;
  Json text = Json::object();
  for (const auto& d : dimension_vectors(q.vertex_count(), order)) {
    const LaurentPoly a = kac_polynomial(q, d, s, nodes, o);
    table.set(d, a, Provenance::oracle);
    text[d.key()] = a.to_string();
    r.csv.push_back({d.key(), a.to_string()});
  }
  r.json = io::to_json(table);
  r.json["text"] = text;
  return r;
}

Report census_cmd(const Flags& f) {
  CensusQuery query;
  query.quiver = load_quiver(f);
  if (f.dim.empty()) throw InvalidInput("--dim is required");
  query.dim = parse_dim("--dim", f.dim, query.quiver);
  query.relations = load_relations(f);
  query.constraint = load_constraint(f, query.quiver);
  query.stability = load_stability(f, query.quiver);
  if (f.classify == "absolute") query.classification = Classification::absolute;
  if (f.classify == "full") query.classification = Classification::full;
  const auto primes = load_primes(f);
  if (primes.empty()) throw InvalidInput("--p or --primes is required");
  const CensusOptions o = census_options(f);
  Report r;
  r.csv = {{"p", "dim", "relations", "constraint", "point_count", "stack_count", "semistable_count", "iso_classes",
            "indecomposable_classes", "abs_indecomposable_classes"}};
  Json reports = Json::array();
  auto opt = [](const std::optional<Integer>& v) { return v ? v->get_str() : std::string(); };
  for (auto p : primes) {
    query.p = p;
    const CensusReport c = run_census(query, o);
    reports.push_back(io::to_json(c));
    r.csv.push_back({std::to_string(c.p), c.dim.key(), to_string(c.relations), c.constraint, c.point_count.get_str(),
                     io::rational_string(c.stack_count), opt(c.semistable_count), opt(c.iso_classes),
                     opt(c.indecomposable_classes), opt(c.abs_indecomposable_classes)});
  }
  r.json = reports.size() == 1 ? reports.front() : Json{{"reports", reports}};
  return r;
}

StackNormalization load_normalization(const Flags& f) {
  if (f.normalization == "kacy") return StackNormalization::kacy;
  return StackNormalization::standard;
}

Report series_cmd(const Flags& f) {
  const int sources = !f.kac.empty() + !f.from_series.empty();
  if (sources > 1) throw InvalidInput("--kac and --from-series are mutually exclusive");
  Report r;
  if (!f.kac.empty()) {
    const KacTable table = from_flag("--kac", [&] {
      return io::kac_table_from_json(io::read_json_file(f.kac), std::filesystem::path(f.kac).parent_path());
    });
    const TruncSeries s = stack_series_from_kac(table, f.order >= 0 ? f.order : table.order, load_normalization(f));
    r.json = io::to_json(s);
    r.csv = series_csv(s);
    return r;
  }
  const Quiver q = load_quiver(f);
  if (!f.from_series.empty()) {
    const TruncSeries g =
        from_flag("--from-series", [&] { return io::series_from_json(io::read_json_file(f.from_series)); });
    const KacTable table = kac_from_stack_series(g, q, f.raw_census);
    r.json = io::to_json(table);
    r.csv = {{"dim", "kac"}};
    for (const auto& [d, a] : table.entries) r.csv.push_back({d.key(), a.to_string()});
    return r;
  }
  const TruncSeries s =
      census_stack_series(q, require_order(f), load_relations(f), load_constraint(f, q), census_options(f));
  r.json = io::to_json(s);
  r.csv = series_csv(s);
  return r;
}

Report hn_cmd(const Flags& f) {
  const Quiver q = load_quiver(f);
  const StabilityCondition z = require_stability(f, q);
  if (f.dim.empty()) throw InvalidInput("--dim is required");
  const DimVector d = parse_dim("--dim", f.dim, q);
  const Relations relations = load_relations(f);
  Report r;
  r.csv = {{"type", "twist"}};
  Json types = Json::array();
  for (const auto& alpha : hn_types(q, z, d)) {
    Json parts = Json::array();
    std::string key;
    for (const auto& part : alpha.parts) {
      parts.push_back(part.entries());
      key += (key.empty() ? "" : "|") + part.key();
    }
    const long twist = hn_twist(q, alpha, relations);
    types.push_back({{"parts", parts}, {"twist", twist}});
    r.csv.push_back({key, std::to_string(twist)});
  }
  r.json = {{"dim", d.entries()}, {"relations", to_string(relations)}, {"types", types}};
  const auto primes = load_primes(f);
  if (primes.empty()) {
    if (f.verify) throw InvalidInput("--verify needs --p");
    return r;
  }
  if (primes.size() != 1) throw InvalidInput("exactly one prime is required (--p)");
  const std::uint32_t p = primes.front();
  const SerreConstraint s = load_constraint(f, q);
  if (!s.empty()) throw InvalidInput("--constraint/--restriction is not supported by hn");
  const CensusOptions o = census_options(f);
  std::map<DimVector, Rational> total;
  for (const auto& e : dimension_vectors(q.vertex_count(), d.total())) {
    if (e.leq(d)) total[e] = stack_count(q, e, p, relations, s, o);
  }
  const Rational sst = hn_semistable_series(total, q, z, d, p, relations);
  r.json["p"] = p;
  r.json["semistable_stack_count"] = io::rational_string(sst);
  if (f.verify) {
    CensusQuery query{q, d, p, relations, s, z, Classification::none};
    const CensusReport c = run_census(query, o);
    const Rational brute(*c.semistable_count, gl_order(d, p));
    r.pass = Rational(sst - brute) == 0;
    r.json["brute_force"] = io::rational_string(brute);
    r.json["result"] = r.pass ? "pass" : "fail";
  }
  return r;
}

Report wallcross_cmd(const Flags& f) {
  const Quiver q = load_quiver(f);
  const StabilityCondition z = require_stability(f, q);
  const WallcrossReport w = wallcross_check(q, z, require_prime(f), require_order(f), load_relations(f),
                                            load_constraint(f, q), census_options(f), f.perturb);
  Report r;
  r.json = io::to_json(w);
  r.pass = w.pass();
  r.csv = {{"dim", "lhs", "rhs", "result"}};
  for (const auto& c : w.coefficients) {
    r.csv.push_back({c.d.key(), io::rational_string(c.lhs), io::rational_string(c.rhs),
                     c.pass && c.decompositions_match ? "pass" : "fail"});
  }
  return r;
}

Report nakajima_cmd(const Flags& f) {
  const Quiver q = load_quiver(f);
  if (f.framing.empty()) throw InvalidInput("--framing is required");
  const DimVector framing = parse_dim("--framing", f.framing, q);
  const auto series = nakajima_series(q, framing, require_order(f), census_options(f));
  Report r;
  r.csv = {{"dim", "weight_polynomial"}};
  Json entries = Json::object(), text = Json::object();
  for (const auto& [d, poly] : series) {
    entries[d.key()] = io::to_json(poly);
    text[d.key()] = poly.to_string();
    r.csv.push_back({d.key(), poly.to_string()});
  }
  r.json = {{"quiver", io::to_json(q)}, {"framing", framing.entries()}, {"order", f.order}, {"entries", entries},
            {"text", text}};
  return r;
}

// Shared by hilb3 and charstack: the series plus optional values at q.
Report one_variable_series(const Flags& f, const TruncSeries& s) {
  Report r;
  r.json = io::to_json(s);
  r.csv = {{"n", "coefficient"}};
  if (!f.at_q.empty()) r.csv.front().push_back("value");
  Json values = Json::array();
  for (int n = 0; n <= s.order(); ++n) {
    const RationalFunction c = s.coeff(DimVector({n}));
    std::vector<std::string> row{std::to_string(n), c.to_string()};
    if (auto v = evaluate(c, f.at_q)) {
      values.push_back(io::rational_string(*v));
      row.push_back(io::rational_string(*v));
    }
    r.csv.push_back(std::move(row));
  }
  if (!f.at_q.empty()) {
    r.json["at_q"] = f.at_q;
    r.json["values"] = values;
  }
  return r;
}

Report hilb3_cmd(const Flags& f) {
  const int order = require_order(f);
  Report r = one_variable_series(f, hilb3_series(order));
  Json weights = Json::array();
  for (const auto& w : hilb3_weights(order)) weights.push_back(w.to_string());
  r.json["weights"] = weights;
  return r;
}

Report charstack_cmd(const Flags& f) {
  const int order = require_order(f);
  const TruncSeries s = char_stack_series(order);
  Report r = one_variable_series(f, s);
  r.pass = s == char_stack_product(order);
  r.json["product_form"] = r.pass ? "pass" : "fail";
  return r;
}

Report check_cmd(const Flags& f, std::ostream& err) {
  Report r;
  r.csv = {{"criterion", "title", "result", "detail"}};
  Json criteria = Json::array();
  int passed = 0;
  // Timings are run metadata and go to the log, never into the report.
  const auto results = run_acceptance(census_options(f), [&](const CriterionResult& c) {
    err << format_result_line(c) << " [" << c.seconds << " s]\n";
  });
  for (const auto& c : results) {
    passed += c.pass;
    criteria.push_back({{"criterion", c.id}, {"title", c.title}, {"result", c.pass ? "pass" : "fail"},
                        {"detail", c.detail}});
    r.csv.push_back({std::to_string(c.id), c.title, c.pass ? "pass" : "fail", c.detail});
  }
  r.pass = passed == static_cast<int>(results.size());
  r.json = {{"passed", passed}, {"total", results.size()}, {"criteria", criteria}};
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return io::dump(r.json);
  std::string text;
  for (const auto& row : r.csv) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_field(row[i]);
    text += "\n";
  }
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact DT invariants of preprojective algebras from finite-field counts", "qdt"};
  app.require_subcommand(1);

  auto quiver = [&](CLI::App* s) {
    s->add_option("--quiver", f.quiver, "quiver JSON file or builtin:jordan|a2|point|loopsN");
  };
  auto constraint = [&](CLI::App* s) {
    s->add_option("--constraint", f.constraint, "Serre constraint JSON file");
    s->add_option("--restriction", f.restriction, "loop restriction")
        ->check(CLI::IsMember({"none", "sn", "ssn"}));
  };
  auto stability = [&](CLI::App* s) {
    s->add_option("--stability", f.stability, "stability JSON file or comma-separated real parts");
  };
  auto relations = [&](CLI::App* s) {
    s->add_option("--relations", f.relations, "none or preprojective")
        ->check(CLI::IsMember({"none", "preprojective"}));
  };
  auto primes = [&](CLI::App* s, bool several) {
    s->add_option("--p", f.p, "prime")->check(CLI::PositiveNumber);
    if (several) s->add_option("--primes", f.primes, "comma-separated increasing primes");
  };
  auto order = [&](CLI::App* s) { s->add_option("--order", f.order, "truncation order")->check(CLI::NonNegativeNumber); };
  auto dim = [&](CLI::App* s) { s->add_option("--dim", f.dim, "dimension vector, comma-separated"); };
  auto at_q = [&](CLI::App* s) { s->add_option("--at-q", f.at_q, "evaluate coefficients at q (1 or a prime power)"); };

  auto* kac = app.add_subcommand("kac", "Kac polynomials by interpolating census counts");
  quiver(kac), constraint(kac), dim(kac), order(kac), primes(kac, true);
  auto* census = app.add_subcommand("census", "brute-force finite-field census");
  quiver(census), constraint(census), dim(census), relations(census), stability(census), primes(census, true);
  census->add_option("--classify", f.classify, "classification")->check(CLI::IsMember({"none", "absolute", "full"}));
  auto* series = app.add_subcommand("series", "stack point-count series");
  quiver(series), constraint(series), order(series), relations(series);
  series->add_option("--kac", f.kac, "Kac table JSON file");
  series->add_option("--from-series", f.from_series, "series JSON file to extract Kac polynomials from");
  series->add_flag("--raw-census", f.raw_census, "series coefficients are untwisted stack counts");
  series->add_option("--normalization", f.normalization, "stack series normalization")
      ->check(CLI::IsMember({"standard", "kacy"}));
  auto* hn = app.add_subcommand("hn", "Harder-Narasimhan types and semistable counts");
  quiver(hn), constraint(hn), stability(hn), dim(hn), relations(hn), primes(hn, false);
  hn->add_flag("--verify", f.verify, "compare with the brute-force semistable count");
  auto* wallcross = app.add_subcommand("wallcross", "wall-crossing factorization check");
  quiver(wallcross), constraint(wallcross), stability(wallcross), relations(wallcross), primes(wallcross, false),
      order(wallcross);
  wallcross->add_option("--perturb", f.perturb, "added to every twist exponent");
  auto* nakajima = app.add_subcommand("nakajima", "weight polynomials of Nakajima quiver varieties");
  quiver(nakajima), order(nakajima);
  nakajima->add_option("--framing", f.framing, "framing vector, comma-separated");
  auto* hilb3 = app.add_subcommand("hilb3", "Hilbert schemes of points on C^3");
  order(hilb3), at_q(hilb3);
  auto* charstack = app.add_subcommand("charstack", "genus-one character stack series");
  order(charstack), at_q(charstack);
  auto* check = app.add_subcommand("check", "run the acceptance suite");

  for (auto* s : app.get_subcommands({})) {
    s->add_option("--out", f.out, "write the report here instead of stdout");
    s->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--point-budget", f.point_budget, "max census points per count")->check(CLI::PositiveNumber);
    s->add_option("--end-budget", f.end_budget, "max endomorphism algebra size")->check(CLI::PositiveNumber);
    s->add_option("--workers", f.workers, "OpenMP threads (default QDT_WORKERS or 1)")->check(CLI::PositiveNumber);
  }

  const auto subcommands = app.get_subcommands({});
  if (!args.empty() && args.front().rfind('-', 0) != 0 &&
      std::none_of(subcommands.begin(), subcommands.end(),
                   [&](const CLI::App* s) { return s->get_name() == args.front(); })) {
    err << "error: unknown subcommand '" << args.front()
        << "' (expected kac, census, series, hn, wallcross, nakajima, hilb3, charstack or check)\n";
    return kUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  std::string rendered;
  bool pass = true;
  try {
    Report r;
    if (kac->parsed()) r = kac_cmd(f);
    else if (census->parsed()) r = census_cmd(f);
    else if (series->parsed()) r = series_cmd(f);
    else if (hn->parsed()) r = hn_cmd(f);
    else if (wallcross->parsed()) r = wallcross_cmd(f);
    else if (nakajima->parsed()) r = nakajima_cmd(f);
    else if (hilb3->parsed()) r = hilb3_cmd(f);
    else if (charstack->parsed()) r = charstack_cmd(f);
    else if (check->parsed()) r = check_cmd(f, err);
    rendered = render(r, f.format);
    pass = r.pass;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (needs a budget of " << e.required
        << "; raise --point-budget or --end-budget)\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  if (f.out.empty()) {
    out << rendered;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!(file << rendered)) {
      err << "error: --out: cannot write " << f.out << "\n";
      return kUsage;
    }
  }
  return pass ? kOk : kCheckFailed;
}

}  // namespace qdt::cli
