#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "hyf/error.hpp"
#include "hyf/montecarlo.hpp"

using Catch::Matchers::WithinAbs;
using hyf::ErrorCode;
using hyf::montecarlo::BoundaryMode;
namespace mc = hyf::montecarlo;

namespace {

mc::AdversaryConfig config(double a, double b, double horizon, std::uint64_t seed = 77) {
  mc::AdversaryConfig c;
  c.rate_a = a;
  c.rate_b = b;
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("results do not depend on the thread count", "[montecarlo]") {
  const auto c = config(1, 0.5, 200);
  const auto one = mc::trial_losses(c, 64, BoundaryMode::Interior, 1);
  const auto four = mc::trial_losses(c, 64, BoundaryMode::Interior, 4);
  CHECK(one == four);
}

TEST_CASE("summary statistics match the per-trial losses", "[montecarlo]") {
  const auto c = config(1, 1, 100);
  const auto losses = mc::trial_losses(c, 50, BoundaryMode::Interior, 2);
  const auto s = mc::run_experiment(c, 50, BoundaryMode::Interior, 3);
  const double mean = std::accumulate(losses.begin(), losses.end(), 0.0) / 50.0;
  double sq = 0.0;
  for (double x : losses) sq += (x - mean) * (x - mean);
  CHECK_THAT(s.mean_loss, WithinAbs(mean, 1e-15));
  CHECK_THAT(s.std_loss, WithinAbs(std::sqrt(sq / 49.0), 1e-15));
  CHECK(s.runs == 50);
  CHECK(s.theoretical == 0.25);
  CHECK(s.boundary_mode == BoundaryMode::Interior);
  CHECK(s.mean_points > 150.0);
  CHECK(s.mean_points < 250.0);
}

TEST_CASE("boundary points only add to the loss", "[montecarlo]") {
  const auto c = config(1, 1, 100);
  const auto interior = mc::trial_losses(c, 40, BoundaryMode::Interior);
  const auto total = mc::trial_losses(c, 40, BoundaryMode::Total);
  for (std::size_t k = 0; k < interior.size(); ++k) REQUIRE(total[k] >= interior[k]);
}

TEST_CASE("mean loss approaches the closed form", "[montecarlo][property]") {
  for (const auto& r : mc::reference_rates()) {
    const auto s = mc::run_experiment(config(r.a, r.b, 3000), 100, BoundaryMode::Interior);
    CHECK_THAT(s.mean_loss, WithinAbs(s.theoretical, 0.01));
  }
}

TEST_CASE("experiment errors", "[montecarlo][errors]") {
  try {
    (void)mc::run_experiment(config(1, 1, 10), 1, BoundaryMode::Interior);
    FAIL("no throw");
  } catch (const hyf::Error& e) {
    CHECK(e.code() == ErrorCode::TooFewRuns);
  }
  try {
    (void)mc::table1({}, {100}, 10, 1);
    FAIL("no throw");
  } catch (const hyf::Error& e) {
    CHECK(e.code() == ErrorCode::EmptyGrid);
  }
  auto bad = config(1, 1, 1);
  bad.rate_a = 1e-4;
  bad.rate_b = 1e-4;
  bad.rejection_budget = 3;
  try {
    (void)mc::run_experiment(bad, 5, BoundaryMode::Interior);
    FAIL("no throw");
  } catch (const hyf::Error& e) {
    CHECK(e.code() == ErrorCode::RejectionBudgetExceeded);
  }
}

TEST_CASE("table layout", "[montecarlo]") {
  const auto t = mc::table1(mc::reference_rates(), {50, 100}, 10, 3);
  REQUIRE(t.cells.size() == 8);
  CHECK(t.theoretical.size() == 4);
  CHECK(t.at(1, 2).config.horizon == 100);
  CHECK(t.at(1, 2).config.rate_b == 0.25);
  CHECK(t.at(0, 3).config.rate_b == 0.1);
  CHECK(t.at(0, 0).config.seed == 3);
  CHECK_THROWS(t.at(2, 0));
}
