#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadpat {

enum class Command { Search, Count, Threshold, Analyze, Cover, Walk, ExportCnf };
std::string_view command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

struct ValidationError : std::runtime_error {
  ValidationError(std::string field_, const std::string& msg)
      : std::runtime_error(field_ + ": " + msg), field(std::move(field_)) {}
  std::string field;
};

/*
 * One flat bag of settings shared by every subcommand. A config file is a
 * flat JSON object over the documented keys (unknown keys are rejected);
 * command-line flags are applied after the file and win.
 */
struct RunConfig {
  Command command = Command::Search;
  std::string ground = "int:1..20";     // mini-grammar: int:LO..HI | fp:P | qgrid:N/D
  std::string template_spec = "quad";   // builtin name or file:PATH
  int k = 2;                            // progression length for quad-ap
  int colors = 2;
  std::string method = "sat";           // exhaustive | sat | sat-external
  std::string expect;                   // "" | forced | avoiding (search exit-code contract)
  std::string format = "pretty";        // csv | jsonl | pretty
  std::string out;                      // report destination; "" = stdout
  std::string trace_out;                // walk trace path
  std::string dimacs_out;               // export-cnf / sat-external DIMACS path
  std::string solver_output;            // sat-external ingestion path
  std::string registry;                 // "" = env default
  std::string coloring;                 // explicit digit string
  std::uint64_t coloring_seed = 0;      // random coloring when no digits given
  bool use_coloring_seed = false;
  int width = 3;                        // syndetic width bound
  int family_subset = 3;                // thick test family: max generator-subset size
  int family_geo = 3;                   //   and geometric progression length
  std::string walk_mode = "induction";  // induction | thick-pair
  int walk_N = 6;
  int walk_s = 0;  // 0 = derive from the cover
  int walk_r = 3;
  std::string alpha_floor;  // rational; "" = 1/(2*|ground|)
  std::uint64_t seed = 0;
  std::int64_t scan_lo = 1;  // threshold: intervals [scan_lo .. N]
  std::int64_t scan_from = 2;
  std::int64_t scan_to = 12;
  std::vector<std::int64_t> primes;  // nonempty switches threshold to per-prime mode
  std::uint64_t max_decisions = 0;
  int threads = 1;
  double budget_bits = 26.0;  // exhaustive search cap
};

/* Merge a flat JSON object into cfg. Unknown or ill-typed keys raise
 * ValidationError naming the key. */
void apply_json_config(RunConfig& cfg, const std::string& json_text);

/* Semantic validation; raises ValidationError with the offending field. */
void validate_config(const RunConfig& cfg);

/* Canonical JSON with every key present; parse(serialize(c)) == c. */
std::string serialize_config(const RunConfig& cfg);

/* FNV-1a over the canonical serialization; stable across platforms. */
std::uint64_t config_digest(const RunConfig& cfg);
std::string digest_hex(std::uint64_t digest);

}  // namespace quadpat
