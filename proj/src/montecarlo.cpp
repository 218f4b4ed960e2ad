#include "hyf/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "hyf/error.hpp"

namespace hyf::montecarlo {

namespace {

struct TrialResult {
  double loss = 0.0;
  std::size_t points = 0;
  std::exception_ptr error;
};

TrialResult run_trial(const AdversaryConfig& config, std::uint64_t trial, BoundaryMode mode) {
  TrialResult out;
  try {
    const auto inputs = adversary::generate_inputs(config, trial);
    const auto report = nonextant::detect_interval_rule(inputs.first.times(), inputs.second.times(),
                                                        mode == BoundaryMode::Total);
    out.loss = nonextant::data_loss_ratio(report);
    out.points = inputs.first.size() + inputs.second.size();
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

std::vector<TrialResult> run_trials(const AdversaryConfig& config, std::size_t runs,
                                    BoundaryMode mode, unsigned threads) {
  config.validate();
  std::vector<TrialResult> results(runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < runs; k = next++) results[k] = run_trial(config, k, mode);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Surface the failure of the lowest trial index so errors are reproducible.
  for (const auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
  }
  return results;
}

}  // namespace

std::vector<double> trial_losses(const AdversaryConfig& config, std::size_t runs,
                                 BoundaryMode mode, unsigned threads) {
  std::vector<double> out;
  out.reserve(runs);
  for (const auto& r : run_trials(config, runs, mode, threads)) out.push_back(r.loss);
  return out;
}

TrialSummary run_experiment(const AdversaryConfig& config, std::size_t runs, BoundaryMode mode,
                            unsigned threads) {
  if (runs < 2) {
    throw Error(ErrorCode::TooFewRuns, "at least two runs are needed for a standard deviation");
  }
  const auto results = run_trials(config, runs, mode, threads);

  const double n = static_cast<double>(runs);
  double sum = 0.0;
  double points = 0.0;
  for (const auto& r : results) {
    sum += r.loss;
    points += static_cast<double>(r.points);
  }
  const double mean = sum / n;
  double squares = 0.0;
  for (const auto& r : results) squares += (r.loss - mean) * (r.loss - mean);

  TrialSummary s;
  s.config = config;
  s.runs = runs;
  s.mean_loss = mean;
  s.std_loss = std::sqrt(squares / (n - 1.0));
  s.theoretical = adversary::theoretical_loss(config.rate_a, config.rate_b);
  s.boundary_mode = mode;
  s.mean_points = points / n;
  return s;
}

std::vector<RatePair> reference_rates() {
  return {{1.0, 1.0}, {1.0, 0.5}, {1.0, 0.25}, {1.0, 0.1}};
}

Table1Report table1(const std::vector<RatePair>& rates, const std::vector<double>& horizons,
                    std::size_t runs, std::uint64_t seed, BoundaryMode mode, unsigned threads) {
  if (rates.empty() || horizons.empty()) {
    throw Error(ErrorCode::EmptyGrid, "rate and horizon lists must be non-empty");
  }
  Table1Report report;
  report.rates = rates;
  report.horizons = horizons;
  report.runs = runs;
  report.seed = seed;
  report.boundary_mode = mode;
  for (const auto& r : rates) report.theoretical.push_back(adversary::theoretical_loss(r.a, r.b));
  for (double horizon : horizons) {
    for (const auto& r : rates) {
      AdversaryConfig config;
      config.rate_a = r.a;
      config.rate_b = r.b;
      config.horizon = horizon;
      config.seed = seed;
      report.cells.push_back(run_experiment(config, runs, mode, threads));
    }
  }
  return report;
}

}  // namespace hyf::montecarlo
