#pragma once

// Tick CSV files: a `time,price` header followed by one `time,price` row per
// observation. Times are plain reals; `.` is the decimal separator.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hyf/core.hpp"

namespace hyf::tickfile {

struct TickRow {
  double time;
  double price;
};

struct TickFile {
  std::string path;
  std::vector<TickRow> rows;

  /// Throws the validation errors of ObservationSeries::validate.
  ObservationSeries to_series(Leg leg) const;
};

/// Throws hyf::Error(ParseError) whose message names the 1-based line.
TickFile parse_tick_csv(std::string_view text, std::string path = "<memory>");

/// Reads and parses a file; unreadable files raise IoError.
TickFile read_tick_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form of every value.
std::string format_tick_csv(const ObservationSeries& series);

void write_tick_file(const std::filesystem::path& path, const ObservationSeries& series);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace hyf::tickfile
