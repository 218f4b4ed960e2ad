#include "hyf/tickfile.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hyf/error.hpp"

namespace hyf::tickfile {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, const std::string& path, std::size_t line,
                    const char* column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
  if (field.empty() || ec != std::errc() || ptr != end) {
    fail(path, line, std::string("invalid ") + column + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ObservationSeries TickFile::to_series(Leg leg) const {
  std::vector<double> times;
  std::vector<double> prices;
  times.reserve(rows.size());
  prices.reserve(rows.size());
  for (const auto& r : rows) {
    times.push_back(r.time);
    prices.push_back(r.price);
  }
  return ObservationSeries::validate(std::move(times), std::move(prices), leg);
}

TickFile parse_tick_csv(std::string_view text, std::string path) {
  TickFile file;
  file.path = std::move(path);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!seen_header) {
      if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (line != "time,price") fail(file.path, line_no, "expected header 'time,price'");
      seen_header = true;
      continue;
    }
    if (line.empty()) {
      if (pos >= text.size()) break;  // trailing newline
      fail(file.path, line_no, "empty row");
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      fail(file.path, line_no, "expected exactly two fields");
    }
    file.rows.push_back({parse_number(line.substr(0, comma), file.path, line_no, "time"),
                         parse_number(line.substr(comma + 1), file.path, line_no, "price")});
  }
  if (!seen_header) fail(file.path, 1, "expected header 'time,price'");
  return file;
}

TickFile read_tick_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tick_csv(buffer.str(), path.string());
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::string format_tick_csv(const ObservationSeries& series) {
  std::string out = "time,price\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out += format_number(series.time(k));
    out += ',';
    out += format_number(series.value(k));
    out += '\n';
  }
  return out;
}

void write_tick_file(const std::filesystem::path& path, const ObservationSeries& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot open for writing");
  out << format_tick_csv(series);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

}  // namespace hyf::tickfile
