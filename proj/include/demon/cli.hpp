#pragma once

// Command-line front end. Every subcommand produces one table, written as
// CSV (header row first) or JSON lines, plus a run manifest.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace demon::cli {

using Value = std::variant<bool, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  /// Lines emitted as "# ..." before the CSV header; not part of JSON output.
  std::vector<std::string> preamble;

  void add(std::vector<Value> row);
};

/// Scientific notation with 12 significant digits.
std::string format_float(double x);

void write_csv(const Table& table, std::ostream& out);
void write_json_lines(const Table& table, std::ostream& out);

std::uint64_t fnv1a64(std::string_view bytes);

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kPropertyViolation = 1;
inline constexpr int kUsageError = 2;

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// unless --out is given; the manifest goes to <out>.manifest.json, or to
/// `err` as one JSON line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace demon::cli
