#pragma once

#include <string>
#include <vector>

namespace quadpat {

struct RunRecord {
  std::string timestamp;  // UTC, ISO 8601
  std::string digest;     // config digest, 16 hex chars
  std::string command;
  std::string summary;  // verdict or short outcome line
  double seconds = 0.0;
  std::vector<std::string> artifacts;  // paths written by the run
};

/* QUADPAT_REGISTRY if set, else "quadpat-runs.jsonl" in the working
 * directory. */
std::string default_registry_path();

/* Appends one JSON line with a single O_APPEND write, so concurrent
 * appenders interleave whole records. Creates the file if absent; IO
 * failures raise std::runtime_error naming the path. */
void append_run(const RunRecord& record, const std::string& path);

struct RegistryReadResult {
  std::vector<RunRecord> records;
  std::vector<std::size_t> bad_lines;  // 1-based numbers of unparseable lines
};

/* Skips malformed lines but reports where they are. */
RegistryReadResult read_registry(const std::string& path);

std::string current_utc_timestamp();

}  // namespace quadpat
