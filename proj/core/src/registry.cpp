#include "quadpat/registry.hpp"

#include <json.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace quadpat {

namespace {

using Json = nlohmann::ordered_json;

}  // namespace

std::string default_registry_path() {
  if (const char* env = std::getenv("QUADPAT_REGISTRY"); env && *env) return env;
  return "quadpat-runs.jsonl";
}

std::string current_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void append_run(const RunRecord& record, const std::string& path) {
  Json j;
  j["timestamp"] = record.timestamp;
  j["digest"] = record.digest;
  j["command"] = record.command;
  j["summary"] = record.summary;
  j["seconds"] = record.seconds;
  j["artifacts"] = record.artifacts;
  const std::string line = j.dump() + "\n";

  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0)
    throw std::runtime_error("cannot open registry '" + path + "': " + std::strerror(errno));
  std::size_t off = 0;
  while (off < line.size()) {
    const ssize_t n = ::write(fd, line.data() + off, line.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw std::runtime_error("failed appending to registry '" + path + "': " + std::strerror(err));
    }
    off += std::size_t(n);
  }
  ::close(fd);
}

RegistryReadResult read_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read registry '" + path + "'");
  RegistryReadResult out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      out.bad_lines.push_back(lineno);
      continue;
    }
    RunRecord r;
    try {
      r.timestamp = j.value("timestamp", std::string());
      r.digest = j.value("digest", std::string());
      r.command = j.value("command", std::string());
      r.summary = j.value("summary", std::string());
      r.seconds = j.value("seconds", 0.0);
      if (j.contains("artifacts"))
        for (const auto& a : j["artifacts"]) r.artifacts.push_back(a.get<std::string>());
    } catch (const Json::exception&) {
      out.bad_lines.push_back(lineno);
      continue;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace quadpat
