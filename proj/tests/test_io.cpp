#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "quadpat/config.hpp"
#include "quadpat/json_io.hpp"
#include "quadpat/registry.hpp"
#include "quadpat/report.hpp"

using namespace quadpat;

namespace {
std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

TEST_SUITE("io") {

TEST_CASE("command names round-trip") {
  for (auto c : {Command::Search, Command::Count, Command::Threshold, Command::Analyze,
                 Command::Cover, Command::Walk, Command::ExportCnf})
    CHECK(command_from_name(command_name(c)) == c);
  CHECK(command_name(Command::ExportCnf) == "export-cnf");
  CHECK_FALSE(command_from_name("explore"));
}

TEST_CASE("config serialization round-trips exactly") {
  RunConfig cfg;
  cfg.command = Command::Walk;
  cfg.ground = "fp:53";
  cfg.colors = 3;
  cfg.walk_N = 4;
  cfg.width = 1;
  cfg.coloring_seed = 7;
  cfg.use_coloring_seed = true;
  cfg.primes = {5, 7};
  cfg.alpha_floor = "1/100";

  const std::string text = serialize_config(cfg);
  RunConfig back;
  apply_json_config(back, text);
  CHECK(serialize_config(back) == text);
  CHECK(config_digest(back) == config_digest(cfg));
  CHECK_NOTHROW(validate_config(back));
}

TEST_CASE("config digests are stable, sensitive, and 16 hex characters") {
  RunConfig a, b;
  CHECK(config_digest(a) == config_digest(b));
  b.colors = 3;
  CHECK(config_digest(a) != config_digest(b));

  const std::string hex = digest_hex(config_digest(a));
  CHECK(hex.size() == 16);
  CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(digest_hex(0) == "0000000000000000");
  CHECK(digest_hex(0x1a2b3c4d5e6f7081ull) == "1a2b3c4d5e6f7081");
}

TEST_CASE("config parsing rejects unknown and ill-typed keys by name") {
  RunConfig cfg;
  try {
    apply_json_config(cfg, R"({"colrs": 3})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field == "colrs");
  }
  try {
    apply_json_config(cfg, R"({"colors": "three"})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field == "colors");
  }
  try {
    apply_json_config(cfg, "[1,2]");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field == "<file>");
  }
  CHECK_THROWS_AS(apply_json_config(cfg, "{nope"), ValidationError);
  CHECK_THROWS_AS(apply_json_config(cfg, R"({"command": "explore"})"), ValidationError);
  CHECK_THROWS_AS(apply_json_config(cfg, R"({"primes": [5, "7"]})"), ValidationError);
  CHECK_THROWS_AS(apply_json_config(cfg, R"({"coloringSeed": -1})"), ValidationError);
}

TEST_CASE("semantic validation names the offending field") {
  auto field_of = [](RunConfig cfg) -> std::string {
    try {
      validate_config(cfg);
    } catch (const ValidationError& e) {
      return e.field;
    }
    return "";
  };
  RunConfig ok;
  CHECK(field_of(ok) == "");

  RunConfig c = ok;
  c.ground = "int:5..1";
  CHECK(field_of(c) == "ground");
  c = ok;
  c.template_spec = "nope";
  CHECK(field_of(c) == "template");
  c = ok;
  c.template_spec = "quad-ap";
  c.k = 0;
  CHECK(field_of(c) == "k");
  c = ok;
  c.colors = 0;
  CHECK(field_of(c) == "colors");
  c = ok;
  c.method = "dpll";
  CHECK(field_of(c) == "method");
  c = ok;
  c.expect = "maybe";
  CHECK(field_of(c) == "expect");
  c = ok;
  c.format = "xml";
  CHECK(field_of(c) == "format");
  c = ok;
  c.coloring = "0101";
  c.use_coloring_seed = true;
  CHECK(field_of(c) == "coloring");
  c = ok;
  c.width = 0;
  CHECK(field_of(c) == "width");
  c = ok;
  c.walk_mode = "zigzag";
  CHECK(field_of(c) == "walkMode");
  c = ok;
  c.walk_N = 1;
  CHECK(field_of(c) == "walkN");
  c = ok;
  c.walk_r = 0;
  CHECK(field_of(c) == "walkR");
  c = ok;
  c.alpha_floor = "-1/2";
  CHECK(field_of(c) == "alphaFloor");
  c = ok;
  c.command = Command::Threshold;
  c.scan_lo = 5;
  c.scan_from = 2;
  CHECK(field_of(c) == "scanFrom");
  c.scan_from = 9;
  c.scan_to = 8;
  CHECK(field_of(c) == "scanTo");
  // per-prime mode ignores the interval scan bounds
  c.primes = {5, 7};
  CHECK(field_of(c) == "");
  c.primes = {1};
  CHECK(field_of(c) == "primes");
  c = ok;
  c.threads = 0;
  CHECK(field_of(c) == "threads");
  c = ok;
  c.budget_bits = 0.0;
  CHECK(field_of(c) == "budgetBits");
}

TEST_CASE("csv reports use the fixed column set with minimal quoting") {
  ResultRow plain{"int:1..5", 2, "schur", "sat", "forced", 10, 0.5, "ignored in csv"};
  ResultRow quoted{"int:1..5", 2, "odd,\"name\"", "sat", "avoiding", 0, 1.0 / 3.0, ""};
  const std::string csv = render_report({plain, quoted}, ReportFormat::Csv);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "ground,n,template,method,verdict,count,seconds");
  std::getline(in, line);
  CHECK(line == "int:1..5,2,schur,sat,forced,10,0.500000");
  std::getline(in, line);
  CHECK(line == "int:1..5,2,\"odd,\"\"name\"\"\",sat,avoiding,0,0.333333");
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("jsonl and pretty reports carry the note when present") {
  ResultRow row{"fp:7", 2, "quad", "exhaustive", "avoiding", 0, 0.25, "boundary probe"};
  const std::string jsonl = render_report({row, row}, ReportFormat::Jsonl);
  std::istringstream in(jsonl);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    const auto j = nlohmann::json::parse(line);
    CHECK(j["ground"] == "fp:7");
    CHECK(j["count"] == 0);
    CHECK(j["note"] == "boundary probe");
  }
  CHECK(lines == 2);

  ResultRow bare = row;
  bare.note.clear();
  const auto j = nlohmann::json::parse(render_report({bare}, ReportFormat::Jsonl));
  CHECK_FALSE(j.contains("note"));

  const std::string pretty = render_report({row}, ReportFormat::Pretty);
  CHECK(pretty.find("quad over fp:7 with 2 colors [exhaustive]: avoiding") != std::string::npos);
  CHECK(pretty.find("(count 0, 0.250000 s)") != std::string::npos);
  CHECK(pretty.find("boundary probe") != std::string::npos);
}

TEST_CASE("write_output writes files and reports failures by path") {
  const auto path = tmp("quadpat_test_report.csv");
  write_output("hello\n", path.string());
  CHECK(slurp(path) == "hello\n");
  std::filesystem::remove(path);

  const std::string bad = (tmp("quadpat_no_such_dir") / "x.csv").string();
  try {
    write_output("x", bad);
    FAIL("expected runtime_error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
}

TEST_CASE("registry appends whole JSON lines and reads them back") {
  const auto path = tmp("quadpat_test_registry.jsonl");
  std::filesystem::remove(path);

  RunRecord a{"2026-01-02T03:04:05Z", digest_hex(config_digest(RunConfig{})), "search",
              "forced", 1.5, {"out.csv", "formula.cnf"}};
  RunRecord b{"2026-01-02T03:04:06Z", "00000000deadbeef", "walk", "success", 0.25, {}};
  append_run(a, path.string());
  append_run(b, path.string());

  // wedge malformed and blank lines between appends
  {
    std::ofstream f(path, std::ios::app | std::ios::binary);
    f << "not json\n";
    f << "\n";
    f << "[1,2,3]\n";
  }
  append_run(b, path.string());

  const auto r = read_registry(path.string());
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].timestamp == a.timestamp);
  CHECK(r.records[0].digest == a.digest);
  CHECK(r.records[0].command == "search");
  CHECK(r.records[0].summary == "forced");
  CHECK(r.records[0].seconds == 1.5);
  CHECK(r.records[0].artifacts == a.artifacts);
  CHECK(r.records[1].command == "walk");
  // the blank line is skipped silently; the two junk lines are reported
  CHECK(r.bad_lines == std::vector<std::size_t>{3, 5});

  CHECK_THROWS_AS(read_registry((tmp("quadpat_missing.jsonl")).string()), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("registry path honors the environment override") {
  setenv("QUADPAT_REGISTRY", "/tmp/quadpat-env.jsonl", 1);
  CHECK(default_registry_path() == "/tmp/quadpat-env.jsonl");
  unsetenv("QUADPAT_REGISTRY");
  CHECK(default_registry_path() == "quadpat-runs.jsonl");

  const std::string ts = current_utc_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("structure serializers emit parseable JSON with exact rationals") {
  const GroundSet g = GroundSet::prime_field(5);
  const Coloring c = Coloring::from_digits(g, 2, "00001");
  const IndexSet ambient = nonzero_set(g);
  const ThickTestFamily fam = make_thick_family(g, {Rational(1), Rational(2)}, 2, 2);

  const CoverDecomposition cover = cover_decomposition(c, 3, ambient, fam);
  const auto cj = nlohmann::json::parse(cover_to_json(cover, g));
  CHECK(cj["numColors"] == 2);
  CHECK(cj["F"] == nlohmann::json({"1", "2", "3"}));
  CHECK(cj["elementCerts"].size() == 4);

  const DerivedColoring d = build_derived_coloring(c, cover, ambient);
  const auto dj = nlohmann::json::parse(derived_summary_to_json(d));
  CHECK(dj["K"] == 2);
  CHECK(dj["tuples"][0]["shifts"] == nlohmann::json({"1"}));
  CHECK(dj["tuples"][0]["size"] == 3);

  MonochromeCounts counts;
  counts.per_color = {3, 0};
  counts.total = 3;
  const auto kj = nlohmann::json::parse(counts_to_json(counts));
  CHECK(kj["perColor"] == nlohmann::json({3, 0}));
  CHECK(kj["total"] == 3);
}

TEST_CASE("result serializers cover both verdict shapes") {
  const PatternTemplate schur = builtin_pattern(BuiltinPattern::Schur);
  const auto forced =
      avoidance_search(GroundSet::interval(1, 5), 2, schur, SearchMethod::Exhaustive);
  const auto fj = nlohmann::json::parse(avoidance_to_json(forced));
  CHECK(fj["verdict"] == "forced");
  CHECK(fj["instances"] == 10);
  CHECK_FALSE(fj.contains("coloring"));

  const auto open =
      avoidance_search(GroundSet::interval(1, 4), 2, schur, SearchMethod::Exhaustive);
  const auto oj = nlohmann::json::parse(avoidance_to_json(open));
  CHECK(oj["verdict"] == "avoiding");
  CHECK(oj["coloring"].get<std::string>().size() == 4);

  const auto t = threshold_scan(1, 4, 6, 2, schur, SearchMethod::Exhaustive);
  const auto tj = nlohmann::json::parse(threshold_to_json(t));
  CHECK(tj["minimalForced"] == 5);
  CHECK(tj["rows"].size() == 3);
  CHECK(tj["rows"][0]["verdict"] == "avoiding");

  const auto rows = field_threshold(2, builtin_pattern(BuiltinPattern::Quad), {3, 5},
                                    SearchMethod::Exhaustive);
  const auto rj = nlohmann::json::parse(field_threshold_to_json(rows));
  REQUIRE(rj.size() == 2);
  CHECK(rj[0]["p"] == 3);
}

TEST_CASE("walk serializers label outcomes and stages") {
  const GroundSet g = GroundSet::prime_field(7);
  const Coloring c = Coloring::from_digits(g, 2, "0101010");
  const ThickTestFamily fam = make_thick_family(g, {Rational(1), Rational(2)}, 2, 2);
  WalkParams p;
  p.r = 1;

  const ThickWalkResult tw = walk_thick_pair(c, p, fam);
  const auto twj = nlohmann::json::parse(thick_walk_to_json(tw));
  CHECK(twj["success"] == true);
  CHECK(twj["branch"] == 1);
  CHECK(twj["quad"] == nlohmann::json({"2", "2", "4", "4"}));

  WalkParams wq;
  wq.N = 4;
  const GroundSet g53 = GroundSet::prime_field(53);
  const Coloring c3 = Coloring::uniform_random(g53, 3, 0);
  const ThickTestFamily fam53 = make_thick_family(g53, {Rational(1), Rational(2)}, 2, 2);
  const WalkQuadResult res = walk_quadruple(c3, wq, 1, fam53);
  const auto wj = nlohmann::json::parse(walk_result_to_json(res, c3.ground()));
  CHECK(wj.contains("outcome"));
  CHECK(wj["outcome"] == std::string(walk_outcome_name(res.outcome)));
}

}  // TEST_SUITE
