#include "gkritz/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace gkritz {

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Human: return "human";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::JsonLines: return "json";
  }
  return "human";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "human") return OutputFormat::Human;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json" || text == "json-lines" || text == "jsonl") return OutputFormat::JsonLines;
  return std::nullopt;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

namespace {

using nlohmann::json;

// Non-finite values are written as missing, as in JSON.
std::string opt_text(const std::optional<double>& x) {
  return x && std::isfinite(*x) ? format_number(*x) : std::string();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_fields(const ReportRow& r) {
  return {csv_field(r.row),      std::to_string(r.N),   std::to_string(r.l),    std::to_string(r.D),
          std::to_string(r.level), opt_text(r.A_star),  opt_text(r.B_star),     opt_text(r.bound),
          opt_text(r.oracle),    opt_text(r.reference), opt_text(r.deviation), r.pass ? "true" : "false",
          format_number(r.wall_ms)};
}

// Numbers go through format_number so that JSON and CSV carry the same digits.
json json_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return json::parse(format_number(*x));
}

void emit_csv(const TableReport& report, std::ostream& out) {
  bool first = true;
  for (const char* c : kReportColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
  for (const auto& r : report.rows) {
    const auto fields = csv_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  }
}

void emit_json_lines(const TableReport& report, std::ostream& out) {
  for (const auto& r : report.rows) {
    // ordered_json keeps the documented column order.
    nlohmann::ordered_json j;
    j["row"] = r.row;
    j["N"] = r.N;
    j["l"] = r.l;
    j["D"] = r.D;
    j["level"] = r.level;
    j["A_star"] = json_number(r.A_star);
    j["B_star"] = json_number(r.B_star);
    j["bound"] = json_number(r.bound);
    j["oracle"] = json_number(r.oracle);
    j["reference"] = json_number(r.reference);
    j["deviation"] = json_number(r.deviation);
    j["pass"] = r.pass;
    j["wall_ms"] = json_number(r.wall_ms);
    out << j.dump() << '\n';
  }
}

void emit_human(const TableReport& report, std::ostream& out) {
  const std::vector<std::string> head{"row", "N", "l", "D", "A*", "B*", "bound", "reference", "oracle", "deviation", "pass", "ms"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : report.rows) {
    cells.push_back({r.row, std::to_string(r.N), std::to_string(r.l), std::to_string(r.D), opt_text(r.A_star),
                     opt_text(r.B_star), opt_text(r.bound), opt_text(r.reference), opt_text(r.oracle),
                     opt_text(r.deviation), r.pass ? "PASS" : "FAIL", format_number(r.wall_ms)});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  };
  out << report.title << '\n';
  line(head);
  for (const auto& row : cells) line(row);
  for (const auto& r : report.rows) {
    if (!r.error.empty()) out << "error in " << r.row << ": " << r.error << '\n';
  }
  std::size_t passed = 0;
  for (const auto& r : report.rows) passed += r.pass ? 1 : 0;
  out << passed << "/" << report.rows.size() << " rows pass\n";
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string> split_csv(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("line " + std::to_string(lineno) + ": unterminated quote");
  return out;
}

[[noreturn]] void bad(std::size_t lineno, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
}

double to_double(const std::string& s, std::size_t lineno) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(lineno, "not a number: '" + s + "'");
  return x;
}

int to_int(const std::string& s, std::size_t lineno) {
  int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad(lineno, "not an integer: '" + s + "'");
  return x;
}

std::optional<double> to_opt(const std::string& s, std::size_t lineno) {
  if (s.empty()) return std::nullopt;
  return to_double(s, lineno);
}

std::optional<double> json_opt(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

void emit_results(const TableReport& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Human: emit_human(report, out); break;
    case OutputFormat::Csv: emit_csv(report, out); break;
    case OutputFormat::JsonLines: emit_json_lines(report, out); break;
  }
}

std::string emit_results(const TableReport& report, OutputFormat format) {
  std::ostringstream out;
  emit_results(report, format, out);
  return out.str();
}

void write_results(const TableReport& report, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_results(report, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TableReport parse_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("line 1: missing csv header");
  const auto header = split_csv(lines[0], 1);
  const std::vector<std::string> expected(std::begin(kReportColumns), std::end(kReportColumns));
  if (header != expected) bad(1, "unexpected csv header");

  TableReport report;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv(lines[i], i + 1);
    if (f.size() != expected.size()) bad(i + 1, "expected " + std::to_string(expected.size()) + " fields");
    ReportRow r;
    r.row = f[0];
    r.N = to_int(f[1], i + 1);
    r.l = to_int(f[2], i + 1);
    r.D = to_int(f[3], i + 1);
    r.level = to_int(f[4], i + 1);
    r.A_star = to_opt(f[5], i + 1);
    r.B_star = to_opt(f[6], i + 1);
    r.bound = to_opt(f[7], i + 1);
    r.oracle = to_opt(f[8], i + 1);
    r.reference = to_opt(f[9], i + 1);
    r.deviation = to_opt(f[10], i + 1);
    if (f[11] != "true" && f[11] != "false") bad(i + 1, "pass must be true or false");
    r.pass = f[11] == "true";
    r.wall_ms = to_double(f[12], i + 1);
    report.rows.push_back(std::move(r));
  }
  return report;
}

TableReport parse_json_lines(std::string_view text) {
  TableReport report;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      const json j = json::parse(lines[i]);
      ReportRow r;
      r.row = j.at("row").get<std::string>();
      r.N = j.at("N").get<int>();
      r.l = j.at("l").get<int>();
      r.D = j.at("D").get<int>();
      r.level = j.at("level").get<int>();
      r.A_star = json_opt(j, "A_star");
      r.B_star = json_opt(j, "B_star");
      r.bound = json_opt(j, "bound");
      r.oracle = json_opt(j, "oracle");
      r.reference = json_opt(j, "reference");
      r.deviation = json_opt(j, "deviation");
      r.pass = j.at("pass").get<bool>();
      r.wall_ms = j.at("wall_ms").get<double>();
      report.rows.push_back(std::move(r));
    } catch (const json::exception& e) {
      bad(i + 1, e.what());
    }
  }
  return report;
}

}  // namespace gkritz
