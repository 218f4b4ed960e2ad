#include "hyf/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyf/error.hpp"

namespace hyf {

namespace {

std::string describe_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonMonotoneTimes: return "NonMonotoneTimes";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::CrossSeriesTie: return "CrossSeriesTie";
    case ErrorCode::LegConflict: return "LegConflict";
    case ErrorCode::MissingLeg: return "MissingLeg";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::ZeroOverlaps: return "ZeroOverlaps";
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::TooFewRuns: return "TooFewRuns";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonMonotoneTimes:
    case ErrorCode::LengthMismatch:
    case ErrorCode::TooFewPoints:
    case ErrorCode::NonFiniteValue:
    case ErrorCode::CrossSeriesTie:
    case ErrorCode::LegConflict:
    case ErrorCode::MissingLeg:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// ObservationSeries

ObservationSeries ObservationSeries::validate(std::vector<double> times,
                                              std::vector<double> values, Leg leg) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "series " + std::string(1, to_char(leg)) + ": " + std::to_string(times.size()) +
                    " times but " + std::to_string(values.size()) + " values");
  }
  if (times.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "series " + std::string(1, to_char(leg)) +
                                             ": at least two observations are required");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || !std::isfinite(values[k])) {
      throw Error(ErrorCode::NonFiniteValue, "series " + std::string(1, to_char(leg)) +
                                                 ": non-finite entry at index " +
                                                 std::to_string(k));
    }
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw Error(ErrorCode::NonMonotoneTimes,
                  "series " + std::string(1, to_char(leg)) + ": time " + describe_time(times[k]) +
                      " at index " + std::to_string(k) + " does not exceed its predecessor " +
                      describe_time(times[k - 1]));
    }
  }
  return ObservationSeries(std::move(times), std::move(values), leg);
}

double ObservationSeries::increment(std::size_t interval) const {
  if (interval == 0 || interval >= times_.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "interval " + std::to_string(interval) + " outside [1, " +
                    std::to_string(last_index()) + "]");
  }
  return values_[interval] - values_[interval - 1];
}

ObservationSeries ObservationSeries::with_value(std::size_t k, double value) const {
  if (k >= values_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "point index " + std::to_string(k) + " outside [0, " +
                                                std::to_string(last_index()) + "]");
  }
  auto copy = *this;
  copy.values_[k] = value;
  return copy;
}

ObservationSeries ObservationSeries::with_values(std::vector<double> values) const {
  return validate(times_, std::move(values), leg_);
}

ObservationSeries ObservationSeries::relabelled(Leg leg) const {
  auto copy = *this;
  copy.leg_ = leg;
  return copy;
}

// ---------------------------------------------------------------------------
// LabelSequence

LabelSequence LabelSequence::from_string(std::string_view labels) {
  std::vector<LabelEntry> entries;
  entries.reserve(labels.size());
  std::size_t next_a = 0;
  std::size_t next_b = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const char c = labels[k];
    if (c == 'A') {
      entries.push_back({static_cast<double>(k), Leg::A, next_a++});
    } else if (c == 'B') {
      entries.push_back({static_cast<double>(k), Leg::B, next_b++});
    } else {
      throw Error(ErrorCode::ParseError,
                  "label sequence may only contain 'A' and 'B', found '" + std::string(1, c) + "'");
    }
  }
  if (next_a == 0 || next_b == 0) {
    throw Error(ErrorCode::MissingLeg, "label sequence must contain both A and B entries");
  }
  return LabelSequence(std::move(entries));
}

std::size_t LabelSequence::count(Leg leg) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [leg](const LabelEntry& e) { return e.leg == leg; }));
}

std::string LabelSequence::to_string() const {
  std::string out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(to_char(e.leg));
  return out;
}

void require_tie_free(std::span<const double> first, std::span<const double> second) {
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < first.size() && b < second.size()) {
    if (first[a] < second[b]) {
      ++a;
    } else if (second[b] < first[a]) {
      ++b;
    } else {
      throw Error(ErrorCode::CrossSeriesTie,
                  "time " + describe_time(first[a]) + " appears in both series");
    }
  }
}

LabelSequence merge_labels(const ObservationSeries& first, const ObservationSeries& second) {
  if (first.leg() == second.leg()) {
    throw Error(ErrorCode::LegConflict, "both series are labelled " +
                                            std::string(1, to_char(first.leg())));
  }
  const auto ta = first.times();
  const auto tb = second.times();
  std::vector<LabelEntry> merged;
  merged.reserve(ta.size() + tb.size());
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < ta.size() || b < tb.size()) {
    if (b == tb.size() || (a < ta.size() && ta[a] < tb[b])) {
      merged.push_back({ta[a], first.leg(), a});
      ++a;
    } else if (a == ta.size() || tb[b] < ta[a]) {
      merged.push_back({tb[b], second.leg(), b});
      ++b;
    } else {
      throw Error(ErrorCode::CrossSeriesTie,
                  "time " + describe_time(ta[a]) + " appears in both series");
    }
  }
  return LabelSequence(std::move(merged));
}

// ---------------------------------------------------------------------------
// Overlaps

std::vector<IntervalRange> overlap_ranges(std::span<const double> first,
                                          std::span<const double> second) {
  const std::size_t intervals = first.empty() ? 0 : first.size() - 1;
  const std::size_t last = second.empty() ? 0 : second.size() - 1;
  std::vector<IntervalRange> ranges(intervals + 1);

  // lo: first j >= 1 with t_j^(2) > t_{i-1}^(1); before: #{t^(2) < t_i^(1)}.
  std::size_t lo = 1;
  std::size_t before = 0;
  for (std::size_t i = 1; i <= intervals; ++i) {
    while (lo <= last && second[lo] <= first[i - 1]) ++lo;
    while (before < second.size() && second[before] < first[i]) ++before;
    ranges[i] = IntervalRange{lo, std::min(before, last)};
  }
  return ranges;
}

OverlapSet enumerate_overlaps(const ObservationSeries& first, const ObservationSeries& second) {
  require_tie_free(first.times(), second.times());
  const auto ranges = overlap_ranges(first.times(), second.times());
  OverlapSet out;
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    for (std::size_t j = ranges[i].lo; j <= ranges[i].hi; ++j) out.pairs.push_back({i, j});
  }
  return out;
}

bool has_boundary_alignment(std::span<const double> first, std::span<const double> second) {
  if (first.size() < 2 || second.size() < 2) return false;
  const auto overlaps = [](double a0, double a1, double b0, double b1) {
    return a1 > b0 && a0 < b1;
  };
  const std::size_t m1 = first.size() - 1;
  const std::size_t m2 = second.size() - 1;
  return overlaps(first[0], first[1], second[0], second[1]) &&
         overlaps(first[m1 - 1], first[m1], second[m2 - 1], second[m2]);
}

}  // namespace hyf
