#include "hyf/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyf/error.hpp"

namespace hyf::estimator {

namespace {

// Error-free transforms: a + b == s + e and a * b == p + e exactly.
struct Split {
  double hi;
  double lo;
};

Split two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Split two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace

double hy_covariance(const ObservationSeries& first, const ObservationSeries& second) {
  require_tie_free(first.times(), second.times());
  const auto ranges = overlap_ranges(first.times(), second.times());
  const auto p1 = first.values();
  const auto p2 = second.values();

  // Increments and products are carried as unevaluated hi + lo pairs and the
  // running sum keeps its rounding error separately, so values that cancel
  // between neighbouring terms drop out before the final rounding.
  double sum = 0.0;
  double err = 0.0;
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    const Split d1 = two_sum(p1[i], -p1[i - 1]);
    for (std::size_t j = ranges[i].lo; j <= ranges[i].hi; ++j) {
      const Split d2 = two_sum(p2[j], -p2[j - 1]);
      const Split prod = two_prod(d1.hi, d2.hi);
      const Split acc = two_sum(sum, prod.hi);
      sum = acc.hi;
      err += acc.lo + prod.lo + (d1.hi * d2.lo + d1.lo * d2.hi);
    }
  }
  return sum + err;
}

double TermList::raw_sum() const noexcept {
  double sum = 0.0;
  for (const auto& t : raw_terms) sum += t.first_increment * t.second_increment;
  return sum;
}

double TermList::grouped_sum() const noexcept {
  double sum = 0.0;
  for (const auto& g : grouped_terms) sum += g.value();
  return sum;
}

namespace {

// Pairs [begin, end) of the staircase share the anchor: a B-anchored run
// keeps j fixed and walks i, an A-anchored run keeps i fixed and walks j.
GroupedTerm make_group(const std::vector<RawTerm>& path, std::size_t begin, std::size_t end,
                       Leg anchor, const ObservationSeries& first,
                       const ObservationSeries& second) {
  const RawTerm& head = path[begin];
  const RawTerm& tail = path[end - 1];
  GroupedTerm g{};
  g.anchor_leg = anchor;
  g.pair_count = end - begin;
  if (anchor == Leg::B) {
    g.anchor_interval = head.j;
    g.multiplier = head.second_increment;
    g.span_first = head.i - 1;
    g.span_last = tail.i;
    g.endpoint_difference = first.value(g.span_last) - first.value(g.span_first);
  } else {
    g.anchor_interval = head.i;
    g.multiplier = head.first_increment;
    g.span_first = head.j - 1;
    g.span_last = tail.j;
    g.endpoint_difference = second.value(g.span_last) - second.value(g.span_first);
  }
  return g;
}

std::size_t run_length(const std::vector<RawTerm>& path, std::size_t from, Leg anchor) {
  std::size_t end = from + 1;
  while (end < path.size() && (anchor == Leg::B ? path[end].j == path[from].j
                                                : path[end].i == path[from].i)) {
    ++end;
  }
  return end - from;
}

std::vector<GroupedTerm> group_row_major(const std::vector<RawTerm>& path,
                                         const ObservationSeries& first,
                                         const ObservationSeries& second) {
  std::vector<GroupedTerm> groups;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t along_b = run_length(path, pos, Leg::B);
    const std::size_t along_a = run_length(path, pos, Leg::A);
    const Leg anchor = along_a > along_b ? Leg::A : Leg::B;
    const std::size_t len = std::max(along_a, along_b);
    groups.push_back(make_group(path, pos, pos + len, anchor, first, second));
    pos += len;
  }
  return groups;
}

struct Segment {
  std::size_t begin;  // inclusive
  std::size_t end;    // inclusive
  Leg anchor;
};

std::vector<GroupedTerm> group_corner_split(const std::vector<RawTerm>& path,
                                            const ObservationSeries& first,
                                            const ObservationSeries& second) {
  if (path.size() == 1) return {make_group(path, 0, 1, Leg::B, first, second)};

  std::vector<Segment> segments;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const Leg anchor = path[k + 1].j == path[k].j ? Leg::B : Leg::A;
    if (!segments.empty() && segments.back().anchor == anchor) {
      segments.back().end = k + 1;
    } else {
      segments.push_back({k, k + 1, anchor});
    }
  }

  // Corner between segment s and s + 1 is the pair segments[s].end.
  std::vector<std::size_t> begin(segments.size());
  std::vector<std::size_t> end(segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    begin[s] = segments[s].begin;
    end[s] = segments[s].end + 1;
  }
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const std::size_t left_len = segments[s].end - segments[s].begin + 1;
    const std::size_t right_len = segments[s + 1].end - segments[s + 1].begin + 1;
    if (right_len < left_len) {
      end[s] -= 1;
    } else {
      begin[s + 1] += 1;
    }
  }

  std::vector<GroupedTerm> groups;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (begin[s] < end[s]) {
      groups.push_back(make_group(path, begin[s], end[s], segments[s].anchor, first, second));
    }
  }
  return groups;
}

void check_point(const ObservationSeries& series, std::size_t point_index) {
  if (point_index > series.last_index()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "point index " + std::to_string(point_index) + " outside [0, " +
                    std::to_string(series.last_index()) + "]");
  }
}

}  // namespace

TermList telescope_rows(const ObservationSeries& first, const ObservationSeries& second,
                        Anchoring anchoring) {
  const auto overlaps = enumerate_overlaps(first, second);
  TermList out;
  out.raw_terms.reserve(overlaps.m());
  for (const auto& [i, j] : overlaps.pairs) {
    out.raw_terms.push_back({i, j, first.increment(i), second.increment(j)});
  }
  if (out.raw_terms.empty()) return out;
  out.grouped_terms = anchoring == Anchoring::RowMajor
                          ? group_row_major(out.raw_terms, first, second)
                          : group_corner_split(out.raw_terms, first, second);
  return out;
}

std::vector<double> coefficients(const ObservationSeries& first,
                                 const ObservationSeries& second, Leg leg) {
  require_tie_free(first.times(), second.times());
  const ObservationSeries& own = leg == Leg::A ? first : second;
  const ObservationSeries& other = leg == Leg::A ? second : first;
  const auto ranges = overlap_ranges(own.times(), other.times());
  const auto p = other.values();

  const auto range_sum = [&](std::size_t interval) {
    double s = 0.0;
    if (interval == 0 || interval >= ranges.size()) return s;
    for (std::size_t j = ranges[interval].lo; j <= ranges[interval].hi; ++j) s += p[j] - p[j - 1];
    return s;
  };

  // Point k ends interval k (sign +) and starts interval k + 1 (sign -).
  std::vector<double> out(own.size());
  for (std::size_t k = 0; k < own.size(); ++k) out[k] = range_sum(k) - range_sum(k + 1);
  return out;
}

double coefficient_of(const ObservationSeries& first, const ObservationSeries& second, Leg leg,
                      std::size_t point_index) {
  check_point(leg == Leg::A ? first : second, point_index);
  return coefficients(first, second, leg)[point_index];
}

}  // namespace hyf::estimator
