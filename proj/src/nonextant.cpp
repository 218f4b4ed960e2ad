#include "hyf/nonextant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hyf/error.hpp"
#include "hyf/estimator.hpp"

namespace hyf::nonextant {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::IntervalRule: return "interval";
    case Method::LabelRule: return "label";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

std::string_view to_string(BoundaryMode mode) noexcept {
  return mode == BoundaryMode::Total ? "total" : "interior";
}

std::vector<std::size_t> NonextantReport::selected(Leg leg) const {
  const auto& all = leg == Leg::A ? nonextant_1 : nonextant_2;
  if (mode == BoundaryMode::Total) return all;
  const std::size_t last = leg == Leg::A ? last_index_1 : last_index_2;
  std::vector<std::size_t> out;
  for (std::size_t k : all) {
    if (k >= 2 && k + 2 <= last) out.push_back(k);
  }
  return out;
}

namespace {

constexpr double kOracleRelativeZero = 1e-12;
constexpr std::uint64_t kSurrogateSeed = 0x9E3779B97F4A7C15ULL;

std::vector<std::size_t> flagged(const std::vector<bool>& flags) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k]) out.push_back(k);
  }
  return out;
}

std::size_t count_interior(const std::vector<std::size_t>& points, std::size_t last) {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(), [last](std::size_t k) { return k >= 2 && k + 2 <= last; }));
}

NonextantReport build_report(const std::vector<bool>& flags_1, const std::vector<bool>& flags_2,
                             std::size_t m, Method method, bool include_boundary) {
  NonextantReport r;
  r.nonextant_1 = flagged(flags_1);
  r.nonextant_2 = flagged(flags_2);
  r.last_index_1 = flags_1.size() - 1;
  r.last_index_2 = flags_2.size() - 1;
  r.f_total = r.nonextant_1.size() + r.nonextant_2.size();
  r.f_interior = count_interior(r.nonextant_1, r.last_index_1) +
                 count_interior(r.nonextant_2, r.last_index_2);
  r.m = m;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.loss_interior = m > 0 ? static_cast<double>(r.f_interior) / static_cast<double>(m) : nan;
  r.loss_total = m > 0 ? static_cast<double>(r.f_total) / static_cast<double>(m) : nan;
  r.method = method;
  r.mode = include_boundary ? BoundaryMode::Total : BoundaryMode::Interior;
  return r;
}

std::size_t overlap_count(std::span<const double> first, std::span<const double> second) {
  std::size_t m = 0;
  for (const auto& r : overlap_ranges(first, second)) m += r.size();
  return m;
}

// Flags for the points of `own` judged against the intervals of `other`.
std::vector<bool> interval_rule_flags(std::span<const double> own, std::span<const double> other) {
  const std::size_t last = own.size() - 1;
  const std::size_t other_last = other.size() - 1;
  const auto ranges = overlap_ranges(own, other);

  // before[k]: number of opposite points strictly earlier than own[k].
  std::vector<std::size_t> before(own.size());
  std::size_t c = 0;
  for (std::size_t k = 0; k < own.size(); ++k) {
    while (c < other.size() && other[c] < own[k]) ++c;
    before[k] = c;
  }

  std::vector<bool> flags(own.size(), false);
  for (std::size_t k = 1; k < last; ++k) {
    // I_k u I_{k+1} = (own[k-1], own[k+1]] lies inside one opposite interval
    // iff no opposite point falls between its ends and some opposite point
    // exists on either side.
    const bool contained =
        before[k - 1] == before[k + 1] && before[k - 1] >= 1 && before[k - 1] <= other_last;

    // Exactly one opposite interval meets the union, and it meets both
    // halves; or none meets it at all. With aligned boundaries these only
    // add points at k == 1 and k == M - 1.
    const IntervalRange& left = ranges[k];
    const IntervalRange& right = ranges[k + 1];
    const bool single = !left.empty() && left == right && left.size() == 1;
    const bool untouched = left.empty() && right.empty();

    flags[k] = contained || single || untouched;
  }
  return flags;
}

}  // namespace

NonextantReport detect_interval_rule(std::span<const double> first, std::span<const double> second,
                                     bool include_boundary) {
  if (first.size() < 2 || second.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "each leg needs at least two observations");
  }
  require_tie_free(first, second);
  return build_report(interval_rule_flags(first, second), interval_rule_flags(second, first),
                      overlap_count(first, second), Method::IntervalRule, include_boundary);
}

NonextantReport detect_interval_rule(const ObservationSeries& first,
                                     const ObservationSeries& second, bool include_boundary) {
  return detect_interval_rule(first.times(), second.times(), include_boundary);
}

NonextantReport detect_label_rule(const LabelSequence& labels, bool include_boundary) {
  const auto& entries = labels.entries();
  std::vector<std::size_t> pos_a;
  std::vector<std::size_t> pos_b;
  std::vector<double> times_a;
  std::vector<double> times_b;
  for (std::size_t p = 0; p < entries.size(); ++p) {
    const bool is_a = entries[p].leg == Leg::A;
    (is_a ? pos_a : pos_b).push_back(p);
    (is_a ? times_a : times_b).push_back(static_cast<double>(p));
  }
  if (pos_a.empty() || pos_b.empty()) {
    throw Error(ErrorCode::MissingLeg, "label sequence must contain both A and B entries");
  }
  if (pos_a.size() < 2 || pos_b.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "each leg needs at least two observations");
  }

  // A point is nonextant when each gap to its same-leg neighbours is empty
  // or holds only the opposite leg's first point (left gap) or last point
  // (right gap). Empty gaps on both sides are the XXX middles.
  const auto flags_for = [&](const std::vector<std::size_t>& pos, std::size_t other_last) {
    std::vector<bool> flags(pos.size(), false);
    for (std::size_t k = 1; k + 1 < pos.size(); ++k) {
      const std::size_t left_gap = pos[k] - pos[k - 1] - 1;
      const std::size_t right_gap = pos[k + 1] - pos[k] - 1;
      const bool left_ok =
          left_gap == 0 || (left_gap == 1 && entries[pos[k] - 1].source_index == 0);
      const bool right_ok =
          right_gap == 0 || (right_gap == 1 && entries[pos[k] + 1].source_index == other_last);
      flags[k] = left_ok && right_ok;
    }
    return flags;
  };

  return build_report(flags_for(pos_a, pos_b.size() - 1), flags_for(pos_b, pos_a.size() - 1),
                      overlap_count(times_a, times_b), Method::LabelRule, include_boundary);
}

NonextantReport oracle_detect(const ObservationSeries& first, const ObservationSeries& second,
                              bool include_boundary) {
  // Integer-valued inputs can cancel by coincidence, so a point must also
  // vanish under a fixed continuous surrogate of the opposite-leg values.
  std::mt19937_64 rng(kSurrogateSeed);
  std::normal_distribution<double> step;
  const auto surrogate = [&](const ObservationSeries& s) {
    std::vector<double> walk(s.size());
    double level = 0.0;
    for (double& v : walk) v = (level += step(rng));
    return s.with_values(std::move(walk));
  };
  const ObservationSeries first_s = surrogate(first);
  const ObservationSeries second_s = surrogate(second);

  const auto zero_flags = [](const ObservationSeries& own, const ObservationSeries& other,
                             const std::vector<double>& coef) {
    std::vector<double> increments;
    for (std::size_t j = 1; j <= other.last_index(); ++j) {
      increments.push_back(std::abs(other.increment(j)));
    }
    const auto mid = increments.begin() + static_cast<std::ptrdiff_t>(increments.size() / 2);
    std::nth_element(increments.begin(), mid, increments.end());
    const double threshold = kOracleRelativeZero * *mid;

    std::vector<bool> flags(own.size(), false);
    for (std::size_t k = 1; k < own.last_index(); ++k) flags[k] = std::abs(coef[k]) <= threshold;
    return flags;
  };

  const auto flags_for = [&](Leg leg) {
    const bool a = leg == Leg::A;
    auto flags = zero_flags(a ? first : second, a ? second : first,
                            estimator::coefficients(first, second, leg));
    const auto generic = zero_flags(a ? first_s : second_s, a ? second_s : first_s,
                                    estimator::coefficients(first_s, second_s, leg));
    for (std::size_t k = 0; k < flags.size(); ++k) flags[k] = flags[k] && generic[k];
    return flags;
  };

  return build_report(flags_for(Leg::A), flags_for(Leg::B),
                      overlap_count(first.times(), second.times()), Method::Oracle,
                      include_boundary);
}

std::size_t count_pattern(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) throw Error(ErrorCode::EmptyPattern, "pattern must not be empty");

  // failure[q]: length of the longest proper border of pattern[0..q].
  std::vector<std::size_t> failure(pattern.size(), 0);
  for (std::size_t q = 1, k = 0; q < pattern.size(); ++q) {
    while (k > 0 && pattern[q] != pattern[k]) k = failure[k - 1];
    if (pattern[q] == pattern[k]) ++k;
    failure[q] = k;
  }

  std::size_t matches = 0;
  std::size_t q = 0;
  for (char c : text) {
    while (q > 0 && c != pattern[q]) q = failure[q - 1];
    if (c == pattern[q]) ++q;
    if (q == pattern.size()) {
      ++matches;
      q = failure[q - 1];
    }
  }
  return matches;
}

std::size_t count_pattern(const LabelSequence& labels, std::string_view pattern) {
  return count_pattern(labels.to_string(), pattern);
}

OpenInterval nonextant_interval(const ObservationSeries& first, const ObservationSeries& second,
                                std::size_t interval) {
  const std::size_t last = first.last_index();
  if (interval == 0 || interval > last) {
    throw Error(ErrorCode::IndexOutOfRange, "interval " + std::to_string(interval) +
                                                " outside [1, " + std::to_string(last) + "]");
  }
  require_tie_free(first.times(), second.times());
  const auto other = second.times();

  struct Bound {
    double t = 0.0;
    bool found = false;
  };
  // Nearest opposite observation strictly after / before t.
  const auto after = [&](double t) {
    const auto it = std::upper_bound(other.begin(), other.end(), t);
    return it == other.end() ? Bound{} : Bound{*it, true};
  };
  const auto before = [&](double t) {
    const auto it = std::lower_bound(other.begin(), other.end(), t);
    return it == other.begin() ? Bound{} : Bound{*std::prev(it), true};
  };
  const auto pick = [](Bound a, Bound b, bool take_min) {
    if (!a.found) return b;
    if (!b.found) return a;
    return Bound{take_min ? std::min(a.t, b.t) : std::max(a.t, b.t), true};
  };

  const double start = first.time(interval - 1);
  const double end = first.time(interval);
  const Bound lo = interval == 1 ? pick(before(start), after(start), true) : after(start);
  const Bound hi = interval == last ? pick(before(end), after(end), false) : before(end);

  if (!lo.found || !hi.found || !(lo.t < hi.t)) return OpenInterval{};
  return OpenInterval{lo.t, hi.t, false};
}

double data_loss_ratio(const NonextantReport& report) {
  if (report.m == 0) {
    throw Error(ErrorCode::ZeroOverlaps, "no overlapping intervals, loss ratio undefined");
  }
  return static_cast<double>(report.f_selected()) / static_cast<double>(report.m);
}

NonextantReport with_mode(NonextantReport report, BoundaryMode mode) {
  report.mode = mode;
  return report;
}

}  // namespace hyf::nonextant
