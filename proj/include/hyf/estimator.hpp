#pragma once

// Hayashi-Yoshida cumulative covariance over all available observations:
//
//   sum over overlapping (i, j) of  dP_i^(1) * dP_j^(2)
//
// plus two views of its term structure: telescoped groupings of the double
// sum and the per-point linear coefficients.

#include <cstddef>
#include <vector>

#include "hyf/core.hpp"

namespace hyf::estimator {

/// Sum of increment products over overlapping interval pairs, accumulated
/// in ascending (i, j) order with compensated arithmetic.
double hy_covariance(const ObservationSeries& first, const ObservationSeries& second);

struct RawTerm {
  std::size_t i;
  std::size_t j;
  double first_increment;
  double second_increment;
};

/// A run of consecutive overlapping pairs that share one anchor interval.
/// The opposite-leg increments inside the run telescope, so the run equals
///   multiplier * (P_opposite[span_last] - P_opposite[span_first]).
struct GroupedTerm {
  Leg anchor_leg;
  std::size_t anchor_interval;
  double multiplier;
  std::size_t span_first;  // opposite-leg point index
  std::size_t span_last;   // opposite-leg point index
  double endpoint_difference;
  std::size_t pair_count;

  double value() const noexcept { return multiplier * endpoint_difference; }
};

enum class Anchoring {
  /// Greedy walk along the overlap staircase, always taking the longest
  /// run from the current pair; ties anchor on leg B.
  RowMajor,
  /// Split the staircase into its straight segments; each corner pair joins
  /// the shorter of its two segments (ties keep it in the earlier one).
  CornerSplit,
};

struct TermList {
  std::vector<RawTerm> raw_terms;
  std::vector<GroupedTerm> grouped_terms;

  double raw_sum() const noexcept;
  double grouped_sum() const noexcept;
};

TermList telescope_rows(const ObservationSeries& first, const ObservationSeries& second,
                        Anchoring anchoring = Anchoring::RowMajor);

/// d hy / d P_leg[point_index]. The estimator is affine in every value, so
/// moving that point by delta moves the output by exactly coefficient*delta.
double coefficient_of(const ObservationSeries& first, const ObservationSeries& second, Leg leg,
                      std::size_t point_index);

/// All coefficients of one leg at once, in O(n + m).
std::vector<double> coefficients(const ObservationSeries& first,
                                 const ObservationSeries& second, Leg leg);

}  // namespace hyf::estimator
