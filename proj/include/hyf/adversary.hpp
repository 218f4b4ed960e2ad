#pragma once

// (a, b)-asynchronous adversary: two independent homogeneous Poisson
// processes on (0, T], conditioned on aligned boundaries (the first overlap
// is (1, 1) and the last is (M^(1), M^(2))).

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "hyf/core.hpp"

namespace hyf::adversary {

struct AdversaryConfig {
  double rate_a = 1.0;
  double rate_b = 1.0;
  double horizon = 100.0;
  std::uint64_t seed = 0;
  std::size_t min_points = 2;
  std::size_t rejection_budget = 1000;

  /// Throws NonPositiveRate or InvalidConfig.
  void validate() const;
};

/// Named substreams of one master seed. Each (trial, stream, attempt) key
/// maps to an independent std::mt19937_64 through std::seed_seq, so results
/// do not depend on the order in which trials are evaluated.
enum class Stream : std::uint32_t { TimesA = 0, TimesB = 1, ValuesA = 2, ValuesB = 3 };

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial, Stream stream,
                          std::uint64_t attempt = 0);

/// Uniform draw on the open interval (0, 1).
double open_unit(std::mt19937_64& rng);

/// Event times of a rate-`rate` Poisson process on (0, horizon], built from
/// cumulative inverse-CDF exponential gaps -ln(u) / rate.
std::vector<double> generate_poisson(double rate, double horizon, std::mt19937_64& rng);

struct GeneratedInputs {
  ObservationSeries first;
  ObservationSeries second;
  std::size_t attempts;
};

/// Rejection-samples until both legs have at least min_points, are tie-free
/// and have aligned boundaries. Values are all zero; see attach_random_walk.
/// Throws RejectionBudgetExceeded.
GeneratedInputs generate_inputs(const AdversaryConfig& config, std::uint64_t trial = 0);

/// Copy of `series` whose values follow a standard-normal random walk
/// starting at `start`.
ObservationSeries attach_random_walk(const ObservationSeries& series, std::mt19937_64& rng,
                                     double start = 0.0);

/// Same, drawing from the (seed, trial) value substream of the series' leg.
ObservationSeries attach_random_walk(const ObservationSeries& series, std::uint64_t seed,
                                     std::uint64_t trial, double start = 0.0);

/// Expected share of nonextant points, (a/(a+b))^3 + (b/(a+b))^3.
/// Throws NonPositiveRate.
double theoretical_loss(double a, double b);

}  // namespace hyf::adversary
