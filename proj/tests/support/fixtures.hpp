#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "hyf/adversary.hpp"
#include "hyf/core.hpp"

namespace fixture {

inline hyf::ObservationSeries golden_a() {
  return hyf::validate_series({2, 3, 4, 5, 7, 8, 11.5}, {10, 15, 25, 10, 5, 1, 5}, hyf::Leg::A);
}

inline hyf::ObservationSeries golden_b() {
  return hyf::validate_series({1, 6, 9, 10, 11, 12}, {5, 10, 15, 20, 25, 20}, hyf::Leg::B);
}

// Sorted distinct uniform times with standard-normal walk values. Not
// boundary-aligned in general.
inline hyf::ObservationSeries random_series(std::mt19937_64& rng, std::size_t n, hyf::Leg leg,
                                            double span = 100.0) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::normal_distribution<double> z;
  std::vector<double> t(n);
  for (double& x : t) x = u(rng);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::vector<double> p(t.size());
  double level = 0.0;
  for (double& x : p) x = (level += z(rng));
  return hyf::validate_series(std::move(t), std::move(p), leg);
}

struct Pair {
  hyf::ObservationSeries a;
  hyf::ObservationSeries b;
};

inline Pair random_pair(std::mt19937_64& rng, std::size_t max_points = 40) {
  std::uniform_int_distribution<std::size_t> n(2, max_points);
  return {random_series(rng, n(rng), hyf::Leg::A), random_series(rng, n(rng), hyf::Leg::B)};
}

// Boundary-aligned adversary instance with random-walk values.
inline Pair adversary_pair(std::uint64_t seed, std::uint64_t trial, double a = 1.0,
                           double b = 1.0, double horizon = 50.0) {
  hyf::adversary::AdversaryConfig c;
  c.rate_a = a;
  c.rate_b = b;
  c.horizon = horizon;
  c.seed = seed;
  const auto g = hyf::adversary::generate_inputs(c, trial);
  return {hyf::adversary::attach_random_walk(g.first, seed, trial),
          hyf::adversary::attach_random_walk(g.second, seed, trial)};
}

}  // namespace fixture
