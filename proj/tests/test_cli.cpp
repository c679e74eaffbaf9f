#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdt/cli.hpp"
#include "qdt/io.hpp"

using namespace qdt;
namespace fs = std::filesystem;

namespace {

const std::string data = QDT_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

io::Json json(const Run& r) { return io::Json::parse(r.out); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qdt_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

DimVector dv(std::vector<int> e) { return DimVector(std::move(e)); }

}  // namespace

TEST_CASE("kac subcommand") {
  const Run r = run({"kac", "--quiver", data + "/jordan.json", "--dim", "2"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json(r);
  CHECK(j["text"] == "q");
  CHECK(j["kac"] == io::Json{{"1", "1"}});
  CHECK(j["check_nodes"].size() >= 1);

  const Run table = run({"kac", "--quiver", "builtin:a2", "--order", "2"});
  REQUIRE(table.code == cli::kOk);
  const KacTable k = io::kac_table_from_json(json(table));
  CHECK(k.entries.size() == 3);
  CHECK(k.at(dv({1, 1})) == LaurentPoly(1));

  const Run sn = run({"kac", "--quiver", "builtin:jordan", "--dim", "2", "--restriction", "sn"});
  CHECK(json(sn)["text"] == "1");
  const Run nodes = run({"kac", "--quiver", "builtin:jordan", "--dim", "2", "--primes", "3,5,7"});
  CHECK(json(nodes)["nodes"] == io::Json::array({3, 5}));
  CHECK(json(nodes)["check_nodes"] == io::Json::array({7}));
}

TEST_CASE("census subcommand") {
  const Run r = run({"census", "--quiver", data + "/jordan.json", "--dim", "2", "--p", "2", "--relations", "preprojective"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json(r);
  CHECK(j["point_count"] == "88");
  CHECK(j["stack_count"] == "44/3");
  CHECK_FALSE(j.contains("iso_classes"));

  const Run inv = run({"census", "--quiver", "builtin:jordan", "--dim", "2", "--p", "2", "--relations", "preprojective",
                       "--constraint", data + "/jordan_invertible_pair.json"});
  REQUIRE(inv.code == cli::kOk);
  CHECK(json(inv)["point_count"] == "18");

  const Run many = run({"census", "--quiver", "builtin:a2", "--dim", "1,1", "--primes", "2,3", "--stability",
                        data + "/a2_stability.json", "--classify", "absolute"});
  REQUIRE(many.code == cli::kOk);
  const auto reports = json(many)["reports"];
  REQUIRE(reports.size() == 2);
  CHECK(reports[0]["semistable_count"] == "1");
  CHECK(reports[1]["semistable_count"] == "2");
  CHECK(reports[1]["abs_indecomposable_classes"] == "1");

  const Run csv = run({"census", "--quiver", "builtin:jordan", "--dim", "2", "--p", "2", "--relations", "preprojective",
                       "--format", "csv"});
  CHECK(csv.out ==
        "p,dim,relations,constraint,point_count,stack_count,semistable_count,iso_classes,indecomposable_classes,"
        "abs_indecomposable_classes\n2,2,preprojective,none,88,44/3,,,,\n");
}

TEST_CASE("series subcommand and Kac extraction") {
  const Run s = run({"series", "--kac", data + "/jordan_kac.json", "--order", "2"});
  REQUIRE(s.code == cli::kOk);
  const TruncSeries series = io::series_from_json(json(s));
  CHECK(eval_at_q(series.coeff(dv({2})), 3) == Rational(315, 16));

  const fs::path file = scratch("series.json");
  REQUIRE(run({"series", "--kac", data + "/jordan_kac.json", "--out", file.string()}).code == cli::kOk);
  const Run back = run({"series", "--quiver", "builtin:jordan", "--from-series", file.string()});
  REQUIRE(back.code == cli::kOk);
  const KacTable k = io::kac_table_from_json(json(back));
  for (int d = 1; d <= 3; ++d) CHECK(k.at(dv({d})) == LaurentPoly::q());

  const Run census = run({"series", "--quiver", "builtin:a2", "--order", "1", "--relations", "preprojective"});
  REQUIRE(census.code == cli::kOk);
  const TruncSeries c = io::series_from_json(json(census));
  CHECK(c.coeff(dv({1, 0})) == RationalFunction(LaurentPoly(1), LaurentPoly::q() - LaurentPoly(1)));
}

TEST_CASE("hn, wallcross and nakajima subcommands") {
  const Run hn = run({"hn", "--quiver", "builtin:a2", "--stability", "-1,0", "--dim", "1,1", "--p", "3", "--verify"});
  REQUIRE(hn.code == cli::kOk);
  CHECK(json(hn)["types"].size() == 2);
  CHECK(json(hn)["semistable_stack_count"] == "1/2");
  CHECK(json(hn)["brute_force"] == "1/2");

  const std::vector<std::string> wc{"wallcross", "--quiver", "builtin:a2", "--stability", data + "/a2_stability.json",
                                    "--p", "2", "--order", "2", "--relations", "preprojective"};
  const Run ok = run(wc);
  CHECK(ok.code == cli::kOk);
  CHECK(json(ok)["result"] == "pass");
  auto perturbed = wc;
  perturbed.insert(perturbed.end(), {"--perturb", "1"});
  const Run bad = run(perturbed);
  CHECK(bad.code == cli::kCheckFailed);
  CHECK(json(bad)["first_failure"] == io::Json::array({1, 1}));

  const Run nak = run({"nakajima", "--quiver", "builtin:jordan", "--framing", "1", "--order", "2"});
  REQUIRE(nak.code == cli::kOk);
  CHECK(json(nak)["text"]["2"] == "q^4 + q^3");
}

TEST_CASE("hilb3 and charstack subcommands") {
  const Run h = run({"hilb3", "--order", "5", "--at-q", "1"});
  REQUIRE(h.code == cli::kOk);
  CHECK(json(h)["values"] == io::Json::array({"1", "1", "3", "6", "13", "24"}));
  const Run c = run({"charstack", "--order", "4", "--at-q", "2"});
  REQUIRE(c.code == cli::kOk);
  CHECK(json(c)["values"][2] == "3");
  CHECK(json(c)["product_form"] == "pass");
  CHECK(run({"hilb3", "--order", "2", "--at-q", "1/2"}).code == cli::kUsage);
}

TEST_CASE("output is deterministic and --out matches stdout") {
  const std::vector<std::string> args{"census", "--quiver", "builtin:a2", "--dim", "2,1", "--p", "3", "--relations",
                                      "preprojective", "--classify", "full"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  auto with_workers = args;
  with_workers.insert(with_workers.end(), {"--workers", "3"});
  CHECK(run(with_workers).out == a.out);
  const fs::path file = scratch("census.json");
  auto to_file = args;
  to_file.insert(to_file.end(), {"--out", file.string()});
  const Run c = run(to_file);
  CHECK(c.code == cli::kOk);
  CHECK(c.out.empty());
  CHECK(slurp(file) == a.out);
}

TEST_CASE("errors exit nonzero and write nothing") {
  const fs::path file = scratch("never.json");
  auto failing = [&](std::vector<std::string> args) {
    args.insert(args.end(), {"--out", file.string()});
    const Run r = run(args);
    CHECK_FALSE(fs::exists(file));
    CHECK_FALSE(r.err.empty());
    return r;
  };
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).err.find("unknown subcommand") != std::string::npos);
  CHECK(run({}).code == cli::kUsage);
  const Run missing = failing({"kac", "--quiver", data + "/nope.json", "--dim", "1"});
  CHECK(missing.code == cli::kUsage);
  CHECK(missing.err.find("nope.json") != std::string::npos);
  CHECK(failing({"kac", "--quiver", "builtin:jordan"}).code == cli::kUsage);
  CHECK(failing({"kac", "--quiver", "builtin:jordan", "--dim", "1,1"}).code == cli::kUsage);
  CHECK(failing({"census", "--quiver", "builtin:jordan", "--dim", "1", "--p", "4"}).code == cli::kUsage);
  CHECK(failing({"census", "--quiver", "builtin:jordan", "--dim", "1", "--primes", "3,2"}).code == cli::kUsage);
  CHECK(failing({"census", "--quiver", "builtin:jordan", "--dim", "1", "--p", "2", "--format", "xml"}).code == cli::kUsage);
  CHECK(failing({"census", "--quiver", "builtin:jordan", "--dim", "1", "--p", "2", "--point-budget", "0"}).code ==
        cli::kUsage);
  const Run cap = failing({"census", "--quiver", "builtin:loops2", "--dim", "2", "--p", "3", "--point-budget", "100"});
  CHECK(cap.code == cli::kCapExceeded);
  CHECK(cap.err.find("--point-budget") != std::string::npos);
  CHECK(failing({"kac", "--quiver", "builtin:jordan", "--dim", "2", "--constraint", data + "/a2_stability.json"}).code ==
        cli::kUsage);

  const fs::path broken = scratch("broken.json");
  std::ofstream(broken) << "{\"vertices\": [\"0\"";
  const Run parse = failing({"kac", "--quiver", broken.string(), "--dim", "1"});
  CHECK(parse.code == cli::kUsage);
  CHECK(parse.err.find("broken.json") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const Run r = run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("census") != std::string::npos);
}

TEST_CASE("JSON round trips") {
  const Quiver q = io::quiver_from_json(io::read_json_file(data + "/a2.json"));
  CHECK(q == quivers::a2());
  CHECK(io::quiver_from_json(io::to_json(q)) == q);
  CHECK_THROWS_AS(io::quiver_from_json(io::Json{{"arrows", io::Json::array()}}), InvalidInput);

  const StabilityCondition z = io::stability_from_json(io::read_json_file(data + "/a2_stability.json"), q);
  CHECK(z.real_parts() == std::vector<Rational>{-1, 0});
  CHECK(io::stability_from_json(io::to_json(z, q), q).real_parts() == z.real_parts());
  CHECK_THROWS_AS(io::stability_from_json(io::Json{{"re", {{"1", "1"}}}}, q), InvalidInput);

  const SerreConstraint s = io::constraint_from_json(io::read_json_file(data + "/jordan_invertible_pair.json"));
  CHECK(s.clauses.size() == 2);
  CHECK(io::constraint_from_json(io::to_json(s)) == s);
  SerreConstraint ssn = SerreConstraint::loops_nilpotent(quivers::loops(2));
  ssn.nilpotent_module = true;
  CHECK(io::constraint_from_json(io::to_json(ssn)) == ssn);

  CHECK(io::rational_string(Rational(6, 4)) == "3/2");
  CHECK(io::parse_rational("-4/6") == Rational(-2, 3));
  CHECK_THROWS_AS(io::parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(io::parse_rational("abc"), InvalidInput);

  const LaurentPoly p = LaurentPoly::monomial(-3, Rational(1, 2)) + LaurentPoly::monomial(4, 7);
  CHECK(io::poly_from_json(io::to_json(p)) == p);
  CHECK(io::q_poly_from_json(io::to_q_json(LaurentPoly::q_power(2) + 1)) == LaurentPoly::q_power(2) + 1);
  CHECK_THROWS_AS(io::to_q_json(LaurentPoly::u()), InvalidInput);

  TruncSeries series({"1", "2"}, 3);
  series.set_coeff(dv({1, 0}), RationalFunction(LaurentPoly::u(), LaurentPoly::q() - 1));
  series.set_coeff(dv({1, 2}), RationalFunction(LaurentPoly(5)));
  CHECK(io::series_from_json(io::to_json(series)) == series);

  const KacTable k = io::kac_table_from_json(io::read_json_file(data + "/jordan_kac.json"), data);
  CHECK(k.quiver == quivers::jordan());
  CHECK(k.at(dv({3})) == LaurentPoly::q());
  CHECK(k.provenance.at(dv({2})) == Provenance::oracle);
  CHECK(io::kac_table_from_json(io::to_json(k)) == k);
}
