#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quadpat {

enum class ReportFormat { Csv, Jsonl, Pretty };
std::optional<ReportFormat> report_format_from_name(std::string_view name);

/* One result line; the CSV column set is fixed:
 * ground,n,template,method,verdict,count,seconds */
struct ResultRow {
  std::string ground;
  int n = 0;
  std::string template_name;
  std::string method;
  std::string verdict;
  std::uint64_t count = 0;
  double seconds = 0.0;
  std::string note;  // jsonl/pretty only; never in CSV
};

/* Byte-stable for identical inputs; seconds printed with six decimals. */
std::string render_report(const std::vector<ResultRow>& rows, ReportFormat format);

/* path "" or "-" writes to stdout; IO failures raise std::runtime_error
 * naming the path. */
void write_output(const std::string& bytes, const std::string& path);

}  // namespace quadpat
