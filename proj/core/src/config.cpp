#include "quadpat/config.hpp"

#include <json.hpp>

#include "quadpat/avoidance.hpp"
#include "quadpat/pattern.hpp"

namespace quadpat {

namespace {

using Json = nlohmann::ordered_json;

const char* kCommandNames[] = {"search", "count", "threshold", "analyze",
                               "cover",  "walk",  "export-cnf"};

std::string want(const char* type, const std::string& key) {
  return std::string("expected ") + type + " for key '" + key + "'";
}

}  // namespace

std::string_view command_name(Command c) { return kCommandNames[static_cast<int>(c)]; }

std::optional<Command> command_from_name(std::string_view name) {
  for (int i = 0; i < 7; ++i)
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  return std::nullopt;
}

void apply_json_config(RunConfig& cfg, const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("<file>", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("<file>", "config must be a JSON object");

  auto str = [&](const Json& v, const std::string& key) {
    if (!v.is_string()) throw ValidationError(key, want("string", key));
    return v.get<std::string>();
  };
  auto integer = [&](const Json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ValidationError(key, want("integer", key));
    return v.get<std::int64_t>();
  };
  auto uinteger = [&](const Json& v, const std::string& key) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ValidationError(key, want("nonnegative integer", key));
    return v.get<std::uint64_t>();
  };

  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      auto c = command_from_name(str(value, key));
      if (!c) throw ValidationError(key, "unknown command");
      cfg.command = *c;
    } else if (key == "ground") {
      cfg.ground = str(value, key);
    } else if (key == "template") {
      cfg.template_spec = str(value, key);
    } else if (key == "k") {
      cfg.k = int(integer(value, key));
    } else if (key == "colors") {
      cfg.colors = int(integer(value, key));
    } else if (key == "method") {
      cfg.method = str(value, key);
    } else if (key == "expect") {
      cfg.expect = str(value, key);
    } else if (key == "format") {
      cfg.format = str(value, key);
    } else if (key == "out") {
      cfg.out = str(value, key);
    } else if (key == "traceOut") {
      cfg.trace_out = str(value, key);
    } else if (key == "dimacsOut") {
      cfg.dimacs_out = str(value, key);
    } else if (key == "solverOutput") {
      cfg.solver_output = str(value, key);
    } else if (key == "registry") {
      cfg.registry = str(value, key);
    } else if (key == "coloring") {
      cfg.coloring = str(value, key);
    } else if (key == "coloringSeed") {
      cfg.coloring_seed = uinteger(value, key);
      cfg.use_coloring_seed = true;
    } else if (key == "width") {
      cfg.width = int(integer(value, key));
    } else if (key == "familySubsetSize") {
      cfg.family_subset = int(integer(value, key));
    } else if (key == "familyGeoLen") {
      cfg.family_geo = int(integer(value, key));
    } else if (key == "walkMode") {
      cfg.walk_mode = str(value, key);
    } else if (key == "walkN") {
      cfg.walk_N = int(integer(value, key));
    } else if (key == "walkS") {
      cfg.walk_s = int(integer(value, key));
    } else if (key == "walkR") {
      cfg.walk_r = int(integer(value, key));
    } else if (key == "alphaFloor") {
      cfg.alpha_floor = str(value, key);
    } else if (key == "seed") {
      cfg.seed = uinteger(value, key);
    } else if (key == "scanLo") {
      cfg.scan_lo = integer(value, key);
    } else if (key == "scanFrom") {
      cfg.scan_from = integer(value, key);
    } else if (key == "scanTo") {
      cfg.scan_to = integer(value, key);
    } else if (key == "primes") {
      if (!value.is_array()) throw ValidationError(key, want("array of integers", key));
      cfg.primes.clear();
      for (const auto& e : value) {
        if (!e.is_number_integer()) throw ValidationError(key, want("array of integers", key));
        cfg.primes.push_back(e.get<std::int64_t>());
      }
    } else if (key == "maxDecisions") {
      cfg.max_decisions = uinteger(value, key);
    } else if (key == "threads") {
      cfg.threads = int(integer(value, key));
    } else if (key == "budgetBits") {
      if (!value.is_number()) throw ValidationError(key, want("number", key));
      cfg.budget_bits = value.get<double>();
    } else {
      throw ValidationError(key, "unknown key");
    }
  }
}

void validate_config(const RunConfig& cfg) {
  if (!GroundSet::parse(cfg.ground))
    throw ValidationError("ground", "cannot parse '" + cfg.ground + "' (int:LO..HI | fp:P | qgrid:N/D)");
  if (cfg.template_spec.rfind("file:", 0) != 0 && !builtin_from_name(cfg.template_spec))
    throw ValidationError("template",
                          "unknown template '" + cfg.template_spec +
                              "' (builtin schur|moreira|quad|quad-ap, or file:PATH)");
  if (cfg.template_spec == "quad-ap" && cfg.k < 1)
    throw ValidationError("k", "quad-ap needs k >= 1");
  if (cfg.colors < 1 || cfg.colors > 64) throw ValidationError("colors", "need 1 <= colors <= 64");
  if (!method_from_name(cfg.method))
    throw ValidationError("method", "unknown method '" + cfg.method + "'");
  if (!cfg.expect.empty() && cfg.expect != "forced" && cfg.expect != "avoiding")
    throw ValidationError("expect", "must be empty, 'forced', or 'avoiding'");
  if (cfg.format != "csv" && cfg.format != "jsonl" && cfg.format != "pretty")
    throw ValidationError("format", "must be csv, jsonl, or pretty");
  if (!cfg.coloring.empty() && cfg.use_coloring_seed)
    throw ValidationError("coloring", "give either explicit digits or a seed, not both");
  if (cfg.width < 1) throw ValidationError("width", "need width >= 1");
  if (cfg.family_subset < 1) throw ValidationError("familySubsetSize", "need >= 1");
  if (cfg.family_geo < 1) throw ValidationError("familyGeoLen", "need >= 1");
  if (cfg.walk_mode != "induction" && cfg.walk_mode != "thick-pair")
    throw ValidationError("walkMode", "must be induction or thick-pair");
  if (cfg.walk_N < 2) throw ValidationError("walkN", "need N >= 2");
  if (cfg.walk_s < 0) throw ValidationError("walkS", "need s >= 0 (0 derives it)");
  if (cfg.walk_r < 1) throw ValidationError("walkR", "need r >= 1");
  if (!cfg.alpha_floor.empty()) {
    auto r = Rational::parse(cfg.alpha_floor);
    if (!r || r->sign() <= 0) throw ValidationError("alphaFloor", "must be a positive rational");
  }
  if (cfg.command == Command::Threshold && cfg.primes.empty()) {
    if (cfg.scan_from < cfg.scan_lo)
      throw ValidationError("scanFrom", "must be at least scanLo");
    if (cfg.scan_to < cfg.scan_from) throw ValidationError("scanTo", "must be at least scanFrom");
  }
  for (auto p : cfg.primes)
    if (p < 2) throw ValidationError("primes", "entries must be >= 2");
  if (cfg.threads < 1 || cfg.threads > 64) throw ValidationError("threads", "need 1 <= threads <= 64");
  if (cfg.budget_bits <= 0) throw ValidationError("budgetBits", "must be positive");
}

std::string serialize_config(const RunConfig& cfg) {
  Json j;
  j["command"] = std::string(command_name(cfg.command));
  j["ground"] = cfg.ground;
  j["template"] = cfg.template_spec;
  j["k"] = cfg.k;
  j["colors"] = cfg.colors;
  j["method"] = cfg.method;
  j["expect"] = cfg.expect;
  j["format"] = cfg.format;
  j["out"] = cfg.out;
  j["traceOut"] = cfg.trace_out;
  j["dimacsOut"] = cfg.dimacs_out;
  j["solverOutput"] = cfg.solver_output;
  j["registry"] = cfg.registry;
  j["coloring"] = cfg.coloring;
  if (cfg.use_coloring_seed) j["coloringSeed"] = cfg.coloring_seed;
  j["width"] = cfg.width;
  j["familySubsetSize"] = cfg.family_subset;
  j["familyGeoLen"] = cfg.family_geo;
  j["walkMode"] = cfg.walk_mode;
  j["walkN"] = cfg.walk_N;
  j["walkS"] = cfg.walk_s;
  j["walkR"] = cfg.walk_r;
  j["alphaFloor"] = cfg.alpha_floor;
  j["seed"] = cfg.seed;
  j["scanLo"] = cfg.scan_lo;
  j["scanFrom"] = cfg.scan_from;
  j["scanTo"] = cfg.scan_to;
  j["primes"] = cfg.primes;
  j["maxDecisions"] = cfg.max_decisions;
  j["threads"] = cfg.threads;
  j["budgetBits"] = cfg.budget_bits;
  return j.dump();
}

std::uint64_t config_digest(const RunConfig& cfg) {
  const std::string bytes = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = hex[digest & 0xf];
    digest >>= 4;
  }
  return out;
}

}  // namespace quadpat
