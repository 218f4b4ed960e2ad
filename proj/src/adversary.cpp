#include "hyf/adversary.hpp"

#include <cmath>
#include <string>

#include "hyf/error.hpp"

namespace hyf::adversary {

void AdversaryConfig::validate() const {
  if (!(rate_a > 0.0) || !(rate_b > 0.0) || !std::isfinite(rate_a) || !std::isfinite(rate_b)) {
    throw Error(ErrorCode::NonPositiveRate, "rates must be positive and finite");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::InvalidConfig, "horizon must be positive and finite");
  }
  if (min_points < 2) {
    throw Error(ErrorCode::InvalidConfig, "min_points must be at least 2");
  }
  if (rejection_budget == 0) {
    throw Error(ErrorCode::InvalidConfig, "rejection budget must be at least 1");
  }
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial, Stream stream,
                          std::uint64_t attempt) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed),    hi(seed),    lo(trial), hi(trial), static_cast<std::uint32_t>(stream),
                    lo(attempt), hi(attempt)};
  return std::mt19937_64(seq);
}

double open_unit(std::mt19937_64& rng) {
  // 53 random bits centred in their cell: never 0, never 1.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> generate_poisson(double rate, double horizon, std::mt19937_64& rng) {
  if (!(rate > 0.0)) throw Error(ErrorCode::NonPositiveRate, "rate must be positive");
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidConfig, "horizon must be positive");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(rate * horizon * 1.1) + 16);
  double t = 0.0;
  for (;;) {
    t += -std::log(open_unit(rng)) / rate;
    if (t > horizon) break;
    times.push_back(t);
  }
  return times;
}

namespace {

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] > v[k - 1])) return false;
  }
  return true;
}

bool tie_free(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

GeneratedInputs generate_inputs(const AdversaryConfig& config, std::uint64_t trial) {
  config.validate();
  for (std::size_t attempt = 0; attempt < config.rejection_budget; ++attempt) {
    auto rng_a = substream(config.seed, trial, Stream::TimesA, attempt);
    auto rng_b = substream(config.seed, trial, Stream::TimesB, attempt);
    auto ta = generate_poisson(config.rate_a, config.horizon, rng_a);
    auto tb = generate_poisson(config.rate_b, config.horizon, rng_b);

    if (ta.size() < config.min_points || tb.size() < config.min_points) continue;
    if (!strictly_increasing(ta) || !strictly_increasing(tb) || !tie_free(ta, tb)) continue;
    if (!has_boundary_alignment(ta, tb)) continue;

    std::vector<double> zeros_a(ta.size(), 0.0);
    std::vector<double> zeros_b(tb.size(), 0.0);
    return GeneratedInputs{ObservationSeries::validate(std::move(ta), std::move(zeros_a), Leg::A),
                           ObservationSeries::validate(std::move(tb), std::move(zeros_b), Leg::B),
                           attempt + 1};
  }
  throw Error(ErrorCode::RejectionBudgetExceeded,
              "no admissible input pair after " + std::to_string(config.rejection_budget) +
                  " attempts (rates " + std::to_string(config.rate_a) + ", " +
                  std::to_string(config.rate_b) + ", horizon " + std::to_string(config.horizon) +
                  ")");
}

ObservationSeries attach_random_walk(const ObservationSeries& series, std::mt19937_64& rng,
                                     double start) {
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> values(series.size());
  double level = start;
  for (auto& v : values) {
    v = level;
    level += step(rng);
  }
  return series.with_values(std::move(values));
}

ObservationSeries attach_random_walk(const ObservationSeries& series, std::uint64_t seed,
                                     std::uint64_t trial, double start) {
  auto rng = substream(seed, trial, series.leg() == Leg::A ? Stream::ValuesA : Stream::ValuesB);
  return attach_random_walk(series, rng, start);
}

double theoretical_loss(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::NonPositiveRate, "rates must be positive");
  }
  const double pa = a / (a + b);
  const double pb = b / (a + b);
  return pa * pa * pa + pb * pb * pb;
}

}  // namespace hyf::adversary
