#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyf/adversary.hpp"
#include "hyf/nonextant.hpp"

namespace hyf::montecarlo {

using adversary::AdversaryConfig;
using nonextant::BoundaryMode;

/// Sample mean and (n - 1) standard deviation of per-trial f/m.
struct TrialSummary {
  AdversaryConfig config;
  std::size_t runs = 0;
  double mean_loss = 0.0;
  double std_loss = 0.0;
  double theoretical = 0.0;
  BoundaryMode boundary_mode = BoundaryMode::Interior;
  double mean_points = 0.0;  // |Pi^(1)| + |Pi^(2)| averaged over trials
};

/// Per-trial loss ratios in trial order. Trial k draws from substream k of
/// config.seed, so the output is independent of `threads`.
std::vector<double> trial_losses(const AdversaryConfig& config, std::size_t runs,
                                 BoundaryMode mode, unsigned threads = 0);

/// Throws TooFewRuns for runs < 2, otherwise propagates generation errors.
TrialSummary run_experiment(const AdversaryConfig& config, std::size_t runs, BoundaryMode mode,
                            unsigned threads = 0);

struct RatePair {
  double a;
  double b;
};

struct Table1Report {
  std::vector<RatePair> rates;
  std::vector<double> horizons;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  BoundaryMode boundary_mode = BoundaryMode::Interior;
  std::vector<TrialSummary> cells;   // horizon-major: cells[h * rates.size() + r]
  std::vector<double> theoretical;   // one per rate pair

  const TrialSummary& at(std::size_t horizon_index, std::size_t rate_index) const {
    return cells.at(horizon_index * rates.size() + rate_index);
  }
};

/// The four rate pairs of the reference loss table.
std::vector<RatePair> reference_rates();

/// Throws EmptyGrid when either list is empty.
Table1Report table1(const std::vector<RatePair>& rates, const std::vector<double>& horizons,
                    std::size_t runs, std::uint64_t seed,
                    BoundaryMode mode = BoundaryMode::Interior, unsigned threads = 0);

}  // namespace hyf::montecarlo
