#pragma once

// Domain model shared by every module: validated observation series, the
// merged A/B label sequence, and the set of overlapping interval pairs.
//
// Indexing follows the estimator's notation. A series with points
// t_0 < t_1 < ... < t_M has M intervals, and interval i (1-based) is the
// left-open, right-closed span (t_{i-1}, t_i].

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyf {

/// Which leg a series plays. Positional functions taking (first, second)
/// treat `first` as leg A (the Pi^(1) role) and `second` as leg B.
enum class Leg : std::uint8_t { A, B };

constexpr Leg opposite(Leg leg) noexcept { return leg == Leg::A ? Leg::B : Leg::A; }
constexpr char to_char(Leg leg) noexcept { return leg == Leg::A ? 'A' : 'B'; }

class ObservationSeries {
 public:
  /// Throws hyf::Error with NonMonotoneTimes, LengthMismatch, TooFewPoints
  /// or NonFiniteValue.
  static ObservationSeries validate(std::vector<double> times, std::vector<double> values,
                                    Leg leg);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  Leg leg() const noexcept { return leg_; }

  std::size_t size() const noexcept { return times_.size(); }
  /// M: index of the last observation, equal to the number of intervals.
  std::size_t last_index() const noexcept { return times_.size() - 1; }

  double time(std::size_t k) const { return times_.at(k); }
  double value(std::size_t k) const { return values_.at(k); }

  /// Price increment over interval i, P_{t_i} - P_{t_{i-1}}; i in [1, M].
  double increment(std::size_t interval) const;

  ObservationSeries with_value(std::size_t k, double value) const;
  ObservationSeries with_values(std::vector<double> values) const;
  ObservationSeries relabelled(Leg leg) const;

 private:
  ObservationSeries(std::vector<double> times, std::vector<double> values, Leg leg)
      : times_(std::move(times)), values_(std::move(values)), leg_(leg) {}

  std::vector<double> times_;
  std::vector<double> values_;
  Leg leg_;
};

inline ObservationSeries validate_series(std::vector<double> times, std::vector<double> values,
                                         Leg leg) {
  return ObservationSeries::validate(std::move(times), std::move(values), leg);
}

struct LabelEntry {
  double time;
  Leg leg;
  std::size_t source_index;
};

class LabelSequence {
 public:
  /// Builds a sequence from a string over {A, B}; entry k gets time k.
  /// Both letters must be present (MissingLeg otherwise).
  static LabelSequence from_string(std::string_view labels);

  const std::vector<LabelEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t count(Leg leg) const noexcept;
  std::string to_string() const;

 private:
  friend LabelSequence merge_labels(const ObservationSeries&, const ObservationSeries&);
  explicit LabelSequence(std::vector<LabelEntry> entries) : entries_(std::move(entries)) {}

  std::vector<LabelEntry> entries_;
};

/// Linear merge of two validated series into one ascending sequence, each
/// entry tagged with the leg of the series it came from. Throws
/// CrossSeriesTie when a time appears in both series and LegConflict when
/// both series carry the same leg.
LabelSequence merge_labels(const ObservationSeries& first, const ObservationSeries& second);

struct OverlapPair {
  std::size_t i;  // interval of the first series
  std::size_t j;  // interval of the second series
  auto operator<=>(const OverlapPair&) const = default;
};

struct OverlapSet {
  std::vector<OverlapPair> pairs;
  std::size_t m() const noexcept { return pairs.size(); }
};

/// Closed range [lo, hi] of 1-based opposite-series interval indices; empty
/// when lo > hi.
struct IntervalRange {
  std::size_t lo = 1;
  std::size_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  std::size_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const IntervalRange& other) const noexcept {
    return (empty() && other.empty()) || (lo == other.lo && hi == other.hi);
  }
};

/// For every interval i of `first` (result index i, entry 0 unused), the
/// contiguous range of `second` intervals it intersects. Both inputs must be
/// strictly increasing and mutually tie-free. Runs in O(|first| + |second|).
std::vector<IntervalRange> overlap_ranges(std::span<const double> first,
                                          std::span<const double> second);

/// All (i, j) with t_i^(1) > t_{j-1}^(2) and t_{i-1}^(1) < t_j^(2), sorted
/// lexicographically. Throws CrossSeriesTie on a shared time.
OverlapSet enumerate_overlaps(const ObservationSeries& first, const ObservationSeries& second);

/// Throws CrossSeriesTie naming the first time present in both inputs.
void require_tie_free(std::span<const double> first, std::span<const double> second);

/// True when the first overlapping pair is (1, 1) and the last one is
/// (M^(1), M^(2)).
bool has_boundary_alignment(std::span<const double> first, std::span<const double> second);

}  // namespace hyf
