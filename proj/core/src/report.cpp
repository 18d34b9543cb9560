#include "quadpat/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace quadpat {

namespace {

std::string fixed_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

/* RFC 4180 quoting, applied only when needed so plain rows stay plain. */
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::optional<ReportFormat> report_format_from_name(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "jsonl") return ReportFormat::Jsonl;
  if (name == "pretty") return ReportFormat::Pretty;
  return std::nullopt;
}

std::string render_report(const std::vector<ResultRow>& rows, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Csv: {
      out << "ground,n,template,method,verdict,count,seconds\n";
      for (const auto& r : rows)
        out << csv_field(r.ground) << ',' << r.n << ',' << csv_field(r.template_name) << ','
            << csv_field(r.method) << ',' << csv_field(r.verdict) << ',' << r.count << ','
            << fixed_seconds(r.seconds) << '\n';
      break;
    }
    case ReportFormat::Jsonl: {
      for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["ground"] = r.ground;
        j["n"] = r.n;
        j["template"] = r.template_name;
        j["method"] = r.method;
        j["verdict"] = r.verdict;
        j["count"] = r.count;
        j["seconds"] = r.seconds;
        if (!r.note.empty()) j["note"] = r.note;
        out << j.dump() << '\n';
      }
      break;
    }
    case ReportFormat::Pretty: {
      for (const auto& r : rows) {
        out << r.template_name << " over " << r.ground << " with " << r.n << " colors ["
            << r.method << "]: " << r.verdict << " (count " << r.count << ", "
            << fixed_seconds(r.seconds) << " s)";
        if (!r.note.empty()) out << "\n  " << r.note;
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

void write_output(const std::string& bytes, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << bytes;
  f.flush();
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace quadpat
