#pragma once

// Nonextant data points: observations whose value has a zero coefficient in
// the H-Y sum because every term containing them telescopes away.
//
// Three detectors are provided and are expected to agree on inputs whose
// first and last overlaps are (1, 1) and (M^(1), M^(2)):
//   * interval rule: adjacent-interval containment against the opposite leg,
//   * label rule: neighbourhood patterns in the merged A/B sequence,
//   * oracle: numerically zero estimator coefficients.
//
// The second and penultimate point of each leg are boundary points. They
// are always evaluated; the report's boundary mode only decides whether
// they count towards the selected loss ratio. The first and last point of a
// leg are never reported.

#include <cstddef>
#include <string_view>
#include <vector>

#include "hyf/core.hpp"

namespace hyf::nonextant {

enum class Method { IntervalRule, LabelRule, Oracle };
enum class BoundaryMode { Interior, Total };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(BoundaryMode mode) noexcept;

struct NonextantReport {
  std::vector<std::size_t> nonextant_1;  // point indices of leg A, ascending
  std::vector<std::size_t> nonextant_2;  // point indices of leg B, ascending
  std::size_t last_index_1 = 0;          // M^(1)
  std::size_t last_index_2 = 0;          // M^(2)
  std::size_t f_interior = 0;
  std::size_t f_total = 0;
  std::size_t m = 0;
  double loss_interior = 0.0;  // NaN when m == 0
  double loss_total = 0.0;     // NaN when m == 0
  Method method = Method::IntervalRule;
  BoundaryMode mode = BoundaryMode::Interior;

  /// Indices of one leg that count under the report's boundary mode.
  std::vector<std::size_t> selected(Leg leg) const;
  std::size_t f_selected() const noexcept {
    return mode == BoundaryMode::Total ? f_total : f_interior;
  }
  /// Same point sets, ignoring method and mode.
  bool same_points(const NonextantReport& other) const noexcept {
    return nonextant_1 == other.nonextant_1 && nonextant_2 == other.nonextant_2;
  }
};

NonextantReport detect_interval_rule(const ObservationSeries& first,
                                     const ObservationSeries& second, bool include_boundary);

/// Times-only variant used by the Monte Carlo harness.
NonextantReport detect_interval_rule(std::span<const double> first, std::span<const double> second,
                                     bool include_boundary);

NonextantReport detect_label_rule(const LabelSequence& labels, bool include_boundary);

/// Ground-truth detector: a point is nonextant when its analytic coefficient
/// is at most 1e-12 times the median absolute opposite-leg increment, both
/// for the given values and for a fixed random-walk surrogate.
NonextantReport oracle_detect(const ObservationSeries& first, const ObservationSeries& second,
                              bool include_boundary = true);

/// Overlapping occurrences of `pattern` in the merged label string (KMP).
std::size_t count_pattern(const LabelSequence& labels, std::string_view pattern);
std::size_t count_pattern(std::string_view text, std::string_view pattern);

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool is_empty = true;

  bool empty() const noexcept { return is_empty || !(lo < hi); }
  bool contains(double t) const noexcept { return !empty() && lo < t && t < hi; }
};

/// Open time interval whose strictly interior `second`-leg points are
/// nonextant because they sit inside interval i of `first`. Interval 1 and
/// interval M^(1) extend their outer bound to the opposite point on the far
/// side of the leg's first or last observation.
OpenInterval nonextant_interval(const ObservationSeries& first, const ObservationSeries& second,
                                std::size_t interval);

/// f/m under the report's boundary mode. Throws ZeroOverlaps when m == 0.
double data_loss_ratio(const NonextantReport& report);

NonextantReport with_mode(NonextantReport report, BoundaryMode mode);

}  // namespace hyf::nonextant
