#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "hyf/adversary.hpp"
#include "hyf/error.hpp"
#include "hyf/estimator.hpp"
#include "hyf/montecarlo.hpp"
#include "hyf/nonextant.hpp"
#include "hyf/tickfile.hpp"
#include "json.hpp"

#ifndef HYF_VERSION
#define HYF_VERSION "0.0.0"
#endif

namespace hyf::cli {

namespace {

using json = nlohmann::json;
using nonextant::BoundaryMode;
using nonextant::Method;
using nonextant::NonextantReport;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Disagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  if (is_validation_error(code)) return kValidation;
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return kParse;
    case ErrorCode::RejectionBudgetExceeded:
      return kRejection;
    default:
      return kUsage;
  }
}

json envelope(std::string_view command, json inputs, json results, std::optional<std::uint64_t> seed) {
  json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["version"] = HYF_VERSION;
  return j;
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

// "0.25" or "1/4".
double parse_rate(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text);
  const double num = parse_real(text.substr(0, slash));
  const double den = parse_real(text.substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

// "1:1,1:1/2" -> {(1, 1), (1, 0.5)}.
std::vector<montecarlo::RatePair> parse_rate_pairs(const std::string& spec) {
  std::vector<montecarlo::RatePair> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string_view item(spec.data() + pos, comma - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("rate pair '" + std::string(item) + "' is not of the form a:b");
    }
    out.push_back({parse_rate(item.substr(0, colon)), parse_rate(item.substr(colon + 1))});
    pos = comma + 1;
  }
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UsageError(std::string(kSeedEnv) + " is not an unsigned integer: '" + env + "'");
    }
    return value;
  }
  return kDefaultSeed;
}

// Nudges leg-B times that coincide with a leg-A time by 1e-9 of the median
// leg-B inter-arrival time. Returns the number of shifted points.
std::size_t jitter_ties(const tickfile::TickFile& a, tickfile::TickFile& b) {
  if (b.rows.size() < 2) return 0;
  std::vector<double> gaps;
  for (std::size_t k = 1; k < b.rows.size(); ++k) {
    gaps.push_back(std::abs(b.rows[k].time - b.rows[k - 1].time));
  }
  const auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
  std::nth_element(gaps.begin(), mid, gaps.end());
  const double epsilon = 1e-9 * *mid;

  std::vector<double> times_a;
  for (const auto& r : a.rows) times_a.push_back(r.time);
  std::sort(times_a.begin(), times_a.end());
  std::size_t shifted = 0;
  for (auto& r : b.rows) {
    if (std::binary_search(times_a.begin(), times_a.end(), r.time)) {
      r.time += epsilon;
      ++shifted;
    }
  }
  return shifted;
}

struct LoadedPair {
  ObservationSeries a;
  ObservationSeries b;
  std::size_t jittered = 0;
};

LoadedPair load_pair(const std::string& path_a, const std::string& path_b, bool jitter) {
  const auto file_a = tickfile::read_tick_file(path_a);
  auto file_b = tickfile::read_tick_file(path_b);
  const std::size_t shifted = jitter ? jitter_ties(file_a, file_b) : 0;
  auto a = file_a.to_series(Leg::A);
  auto b = file_b.to_series(Leg::B);
  require_tie_free(a.times(), b.times());
  return {std::move(a), std::move(b), shifted};
}

std::string fmt(double v) { return tickfile::format_number(v); }

// ---------------------------------------------------------------------------
// estimate

struct EstimateOptions {
  std::string file_a;
  std::string file_b;
  bool as_json = false;
  bool jitter = false;
};

int cmd_estimate(const EstimateOptions& o, std::ostream& out) {
  const auto pair = load_pair(o.file_a, o.file_b, o.jitter);
  const double cov = estimator::hy_covariance(pair.a, pair.b);
  const auto rows = estimator::telescope_rows(pair.a, pair.b, estimator::Anchoring::RowMajor);
  const auto corners = estimator::telescope_rows(pair.a, pair.b, estimator::Anchoring::CornerSplit);

  if (o.as_json) {
    json inputs{{"file_a", o.file_a},        {"file_b", o.file_b},
                {"points_a", pair.a.size()}, {"points_b", pair.b.size()},
                {"jitter", o.jitter},        {"jittered_points", pair.jittered}};
    json results{{"covariance", cov},
                 {"overlaps", rows.raw_terms.size()},
                 {"raw_terms", rows.raw_terms.size()},
                 {"grouped_terms_row_major", rows.grouped_terms.size()},
                 {"grouped_terms_corner_split", corners.grouped_terms.size()}};
    out << envelope("estimate", std::move(inputs), std::move(results), std::nullopt).dump(2)
        << '\n';
    return kOk;
  }
  out << "covariance      " << fmt(cov) << '\n'
      << "overlaps        " << rows.raw_terms.size() << '\n'
      << "points          " << pair.a.size() << " (A), " << pair.b.size() << " (B)\n"
      << "raw terms       " << rows.raw_terms.size() << '\n'
      << "grouped terms   " << rows.grouped_terms.size() << " (row-major), "
      << corners.grouped_terms.size() << " (corner-split)\n";
  if (pair.jittered > 0) out << "jittered        " << pair.jittered << " leg-B point(s)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// detect

struct DetectOptions {
  std::string file_a;
  std::string file_b;
  bool include_boundary = false;
  std::string method = "interval";
  bool as_json = false;
  bool jitter = false;
};

NonextantReport run_method(std::string_view method, const LoadedPair& pair, bool boundary) {
  if (method == "interval") return nonextant::detect_interval_rule(pair.a, pair.b, boundary);
  if (method == "label") {
    return nonextant::detect_label_rule(merge_labels(pair.a, pair.b), boundary);
  }
  return nonextant::oracle_detect(pair.a, pair.b, boundary);
}

json points_json(const NonextantReport& r, const ObservationSeries& s, Leg leg) {
  json list = json::array();
  for (std::size_t k : r.selected(leg)) list.push_back({{"index", k}, {"time", s.time(k)}});
  return list;
}

int cmd_detect(const DetectOptions& o, std::ostream& out, std::ostream& err) {
  const auto pair = load_pair(o.file_a, o.file_b, o.jitter);

  NonextantReport report;
  if (o.method == "all") {
    const auto interval = run_method("interval", pair, o.include_boundary);
    const auto label = run_method("label", pair, o.include_boundary);
    const auto oracle = run_method("oracle", pair, o.include_boundary);
    if (!interval.same_points(label) || !interval.same_points(oracle)) {
      err << "detectors disagree: interval f=" << interval.f_total << ", label f=" << label.f_total
          << ", oracle f=" << oracle.f_total << '\n';
      return kDisagreement;
    }
    report = interval;
  } else {
    report = run_method(o.method, pair, o.include_boundary);
  }

  const std::size_t f = report.f_selected();
  const std::optional<double> loss =
      report.m > 0 ? std::optional<double>(nonextant::data_loss_ratio(report)) : std::nullopt;

  if (o.as_json) {
    json inputs{{"file_a", o.file_a},
                {"file_b", o.file_b},
                {"points_a", pair.a.size()},
                {"points_b", pair.b.size()},
                {"method", o.method},
                {"include_boundary", o.include_boundary},
                {"jitter", o.jitter},
                {"jittered_points", pair.jittered}};
    json results{{"boundary_mode", nonextant::to_string(report.mode)},
                 {"nonextant_a", points_json(report, pair.a, Leg::A)},
                 {"nonextant_b", points_json(report, pair.b, Leg::B)},
                 {"f", f},
                 {"f_interior", report.f_interior},
                 {"f_total", report.f_total},
                 {"m", report.m},
                 {"loss", loss ? json(*loss) : json(nullptr)},
                 {"loss_interior", report.loss_interior},
                 {"loss_total", report.loss_total}};
    out << envelope("detect", std::move(inputs), std::move(results), std::nullopt).dump(2) << '\n';
    return kOk;
  }

  out << "method          " << o.method << '\n'
      << "boundary mode   " << nonextant::to_string(report.mode) << '\n';
  const auto list = [&](Leg leg, const ObservationSeries& s) {
    const auto points = report.selected(leg);
    out << "leg " << to_char(leg) << " nonextant   " << points.size() << '\n';
    for (std::size_t k : points) out << "  index " << k << "  time " << fmt(s.time(k)) << '\n';
  };
  list(Leg::A, pair.a);
  list(Leg::B, pair.b);
  out << "f               " << f << '\n'
      << "m               " << report.m << '\n'
      << "f/m             " << (loss ? fmt(*loss) : std::string("undefined (no overlaps)")) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  double rate_a = 1.0;
  double rate_b = 1.0;
  double horizon = 100.0;
  std::optional<std::uint64_t> seed;
  std::string out_prefix;
  bool as_json = false;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  adversary::AdversaryConfig config;
  config.rate_a = o.rate_a;
  config.rate_b = o.rate_b;
  config.horizon = o.horizon;
  config.seed = resolve_seed(o.seed);
  config.validate();

  const auto inputs = adversary::generate_inputs(config, 0);
  const auto a = adversary::attach_random_walk(inputs.first, config.seed, 0, 100.0);
  const auto b = adversary::attach_random_walk(inputs.second, config.seed, 0, 100.0);
  const std::string path_a = o.out_prefix + "_a.csv";
  const std::string path_b = o.out_prefix + "_b.csv";
  tickfile::write_tick_file(path_a, a);
  tickfile::write_tick_file(path_b, b);

  if (o.as_json) {
    json in{{"rate_a", o.rate_a}, {"rate_b", o.rate_b}, {"horizon", o.horizon},
            {"out_prefix", o.out_prefix}};
    json results{{"file_a", path_a},      {"file_b", path_b},
                 {"points_a", a.size()},  {"points_b", b.size()},
                 {"attempts", inputs.attempts}};
    out << envelope("simulate", std::move(in), std::move(results), config.seed).dump(2) << '\n';
    return kOk;
  }
  out << "wrote " << path_a << " (" << a.size() << " points)\n"
      << "wrote " << path_b << " (" << b.size() << " points)\n"
      << "seed " << config.seed << ", accepted after " << inputs.attempts << " attempt(s)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// table1

struct Table1Options {
  std::size_t runs = 1000;
  std::vector<double> horizons;
  bool full_ladder = false;
  std::string rates = "1:1,1:1/2,1:1/4,1:1/10";
  std::optional<std::uint64_t> seed;
  bool include_boundary = false;
  bool as_json = false;
  unsigned threads = 0;
};

json summary_json(const montecarlo::TrialSummary& s) {
  return json{{"config",
               {{"rate_a", s.config.rate_a},
                {"rate_b", s.config.rate_b},
                {"horizon", s.config.horizon},
                {"seed", s.config.seed},
                {"min_points", s.config.min_points},
                {"rejection_budget", s.config.rejection_budget}}},
              {"runs", s.runs},
              {"mean_loss", s.mean_loss},
              {"std_loss", s.std_loss},
              {"theoretical", s.theoretical},
              {"boundary_mode", nonextant::to_string(s.boundary_mode)},
              {"mean_points", s.mean_points}};
}

int cmd_table1(const Table1Options& o, std::ostream& out) {
  const auto rates = parse_rate_pairs(o.rates);
  std::vector<double> horizons = o.horizons;
  if (horizons.empty()) {
    horizons = {100.0, 1000.0, 10000.0};
    if (o.full_ladder) horizons.push_back(100000.0);
  }
  const std::uint64_t seed = resolve_seed(o.seed);
  const auto mode = o.include_boundary ? BoundaryMode::Total : BoundaryMode::Interior;
  const auto report = montecarlo::table1(rates, horizons, o.runs, seed, mode, o.threads);

  if (o.as_json) {
    json rate_list = json::array();
    for (const auto& r : rates) rate_list.push_back({r.a, r.b});
    json in{{"runs", o.runs},
            {"horizons", horizons},
            {"rates", rate_list},
            {"include_boundary", o.include_boundary}};
    json summaries = json::array();
    for (const auto& cell : report.cells) summaries.push_back(summary_json(cell));
    json results{{"summaries", summaries}, {"theoretical", report.theoretical}};
    out << envelope("table1", std::move(in), std::move(results), seed).dump(2) << '\n';
    return kOk;
  }

  constexpr int kWidth = 18;
  out << "f/m over " << o.runs << " runs, " << nonextant::to_string(mode)
      << " points, seed " << seed << "\n\n";
  out << std::left << std::setw(12) << "";
  for (const auto& r : rates) out << std::setw(kWidth) << ("r=" + fmt(r.a) + "," + fmt(r.b));
  out << '\n';
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    out << std::setw(12) << ("T=" + fmt(horizons[h]));
    for (std::size_t r = 0; r < rates.size(); ++r) {
      const auto& s = report.at(h, r);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << s.mean_loss << " ± " << s.std_loss;
      // "±" is two bytes but one column wide.
      out << std::setw(kWidth + 1) << cell.str();
    }
    out << '\n';
  }
  out << std::setw(12) << "theoretical";
  for (double t : report.theoretical) {
    std::ostringstream cell;
    cell << std::fixed << std::setprecision(4) << t;
    out << std::setw(kWidth) << cell.str();
  }
  out << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hayashi-Yoshida covariance and nonextant data point analysis"};
  app.name(args.empty() ? "hyf" : args.front());
  app.require_subcommand(1);

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "H-Y covariance of two tick files");
  estimate->add_option("file_a", est.file_a, "leg A CSV (time,price)")->required();
  estimate->add_option("file_b", est.file_b, "leg B CSV (time,price)")->required();
  estimate->add_flag("--json", est.as_json, "emit a JSON report");
  estimate->add_flag("--jitter", est.jitter, "shift leg-B times that tie with leg A");

  DetectOptions det;
  auto* detect = app.add_subcommand("detect", "list nonextant data points");
  detect->add_option("file_a", det.file_a, "leg A CSV (time,price)")->required();
  detect->add_option("file_b", det.file_b, "leg B CSV (time,price)")->required();
  detect->add_flag("--include-boundary", det.include_boundary,
                   "count second and penultimate points of each leg");
  detect->add_option("--method", det.method, "interval, label, oracle or all")
      ->check(CLI::IsMember({"interval", "label", "oracle", "all"}));
  detect->add_flag("--json", det.as_json, "emit a JSON report");
  detect->add_flag("--jitter", det.jitter, "shift leg-B times that tie with leg A");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "write a synthetic asynchronous tick pair");
  simulate->add_option("--rate-a", sim.rate_a, "leg A events per time unit");
  simulate->add_option("--rate-b", sim.rate_b, "leg B events per time unit");
  simulate->add_option("--horizon", sim.horizon, "observation window (0, T]");
  simulate->add_option("--seed", sim.seed, "master seed (default: $HYF_SEED or built-in)");
  simulate->add_option("--out-prefix", sim.out_prefix, "writes <prefix>_a.csv and <prefix>_b.csv")
      ->required();
  simulate->add_flag("--json", sim.as_json, "emit a JSON report");

  Table1Options tab;
  auto* table = app.add_subcommand("table1", "Monte Carlo data-loss table");
  table->add_option("--runs", tab.runs, "trials per cell")->check(CLI::PositiveNumber);
  table->add_option("--horizon", tab.horizons, "comma-separated horizons")->delimiter(',');
  table->add_flag("--full-ladder", tab.full_ladder, "add T=100000 to the default ladder");
  table->add_option("--rates", tab.rates, "comma-separated a:b pairs, fractions allowed");
  table->add_option("--seed", tab.seed, "master seed (default: $HYF_SEED or built-in)");
  table->add_flag("--include-boundary", tab.include_boundary, "count boundary points too");
  table->add_option("--threads", tab.threads, "worker threads (0 = hardware)");
  table->add_flag("--json", tab.as_json, "emit a JSON report");

  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"hyf"} : args;
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*estimate) return cmd_estimate(est, out);
    if (*detect) return cmd_detect(det, out, err);
    if (*simulate) return cmd_simulate(sim, out);
    return cmd_table1(tab, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    if (code == kUsage) err << '\n' << app.help();
    return code;
  }
}

}  // namespace hyf::cli
