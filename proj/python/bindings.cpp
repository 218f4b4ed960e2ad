#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "hyf/adversary.hpp"
#include "hyf/core.hpp"
#include "hyf/error.hpp"
#include "hyf/estimator.hpp"
#include "hyf/montecarlo.hpp"
#include "hyf/nonextant.hpp"
#include "hyf/tickfile.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

hyf::nonextant::BoundaryMode mode_of(bool include_boundary) {
  return include_boundary ? hyf::nonextant::BoundaryMode::Total
                          : hyf::nonextant::BoundaryMode::Interior;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hayashi-Yoshida covariance and nonextant data point analysis";
  m.attr("__version__") = HYF_VERSION;

  static py::exception<hyf::Error> error(m, "HyfError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const hyf::Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      instance.attr("code") = std::string(hyf::to_string(e.code()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::enum_<hyf::Leg>(m, "Leg").value("A", hyf::Leg::A).value("B", hyf::Leg::B);

  py::class_<hyf::ObservationSeries>(m, "ObservationSeries")
      .def(py::init(&hyf::ObservationSeries::validate), "times"_a, "values"_a,
           "leg"_a = hyf::Leg::A)
      .def_property_readonly("times",
                             [](const hyf::ObservationSeries& s) { return to_vector(s.times()); })
      .def_property_readonly("values",
                             [](const hyf::ObservationSeries& s) { return to_vector(s.values()); })
      .def_property_readonly("leg", &hyf::ObservationSeries::leg)
      .def_property_readonly("last_index", &hyf::ObservationSeries::last_index)
      .def("increment", &hyf::ObservationSeries::increment, "interval"_a)
      .def("with_value", &hyf::ObservationSeries::with_value, "index"_a, "value"_a)
      .def("relabelled", &hyf::ObservationSeries::relabelled, "leg"_a)
      .def("__len__", &hyf::ObservationSeries::size)
      .def("__repr__", [](const hyf::ObservationSeries& s) {
        return "<ObservationSeries leg=" + std::string(1, hyf::to_char(s.leg())) +
               " points=" + std::to_string(s.size()) + ">";
      });

  py::class_<hyf::LabelSequence>(m, "LabelSequence")
      .def_static("from_string", &hyf::LabelSequence::from_string, "labels"_a)
      .def("count", &hyf::LabelSequence::count, "leg"_a)
      .def("__len__", &hyf::LabelSequence::size)
      .def("__str__", &hyf::LabelSequence::to_string);

  m.def("merge_labels", &hyf::merge_labels, "first"_a, "second"_a);
  m.def(
      "enumerate_overlaps",
      [](const hyf::ObservationSeries& a, const hyf::ObservationSeries& b) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& p : hyf::enumerate_overlaps(a, b).pairs) out.emplace_back(p.i, p.j);
        return out;
      },
      "first"_a, "second"_a, "Overlapping (i, j) interval pairs in ascending order.");

  // estimator
  m.def("hy_covariance", &hyf::estimator::hy_covariance, "first"_a, "second"_a);
  m.def("coefficient_of", &hyf::estimator::coefficient_of, "first"_a, "second"_a, "leg"_a,
        "index"_a);
  m.def("coefficients", &hyf::estimator::coefficients, "first"_a, "second"_a, "leg"_a);

  py::enum_<hyf::estimator::Anchoring>(m, "Anchoring")
      .value("ROW_MAJOR", hyf::estimator::Anchoring::RowMajor)
      .value("CORNER_SPLIT", hyf::estimator::Anchoring::CornerSplit);

  py::class_<hyf::estimator::GroupedTerm>(m, "GroupedTerm")
      .def_readonly("anchor_leg", &hyf::estimator::GroupedTerm::anchor_leg)
      .def_readonly("anchor_interval", &hyf::estimator::GroupedTerm::anchor_interval)
      .def_readonly("multiplier", &hyf::estimator::GroupedTerm::multiplier)
      .def_readonly("span_first", &hyf::estimator::GroupedTerm::span_first)
      .def_readonly("span_last", &hyf::estimator::GroupedTerm::span_last)
      .def_readonly("endpoint_difference", &hyf::estimator::GroupedTerm::endpoint_difference)
      .def_readonly("pair_count", &hyf::estimator::GroupedTerm::pair_count)
      .def_property_readonly("value", &hyf::estimator::GroupedTerm::value);

  py::class_<hyf::estimator::TermList>(m, "TermList")
      .def_property_readonly("raw_terms",
                             [](const hyf::estimator::TermList& t) {
                               py::list out;
                               for (const auto& r : t.raw_terms) {
                                 out.append(py::make_tuple(r.i, r.j, r.first_increment,
                                                           r.second_increment));
                               }
                               return out;
                             })
      .def_readonly("grouped_terms", &hyf::estimator::TermList::grouped_terms)
      .def("raw_sum", &hyf::estimator::TermList::raw_sum)
      .def("grouped_sum", &hyf::estimator::TermList::grouped_sum);

  m.def("telescope_rows", &hyf::estimator::telescope_rows, "first"_a, "second"_a,
        "anchoring"_a = hyf::estimator::Anchoring::RowMajor);

  // nonextant
  py::class_<hyf::nonextant::NonextantReport>(m, "NonextantReport")
      .def_readonly("nonextant_1", &hyf::nonextant::NonextantReport::nonextant_1)
      .def_readonly("nonextant_2", &hyf::nonextant::NonextantReport::nonextant_2)
      .def_readonly("f_interior", &hyf::nonextant::NonextantReport::f_interior)
      .def_readonly("f_total", &hyf::nonextant::NonextantReport::f_total)
      .def_readonly("m", &hyf::nonextant::NonextantReport::m)
      .def_readonly("loss_interior", &hyf::nonextant::NonextantReport::loss_interior)
      .def_readonly("loss_total", &hyf::nonextant::NonextantReport::loss_total)
      .def_property_readonly("method",
                             [](const hyf::nonextant::NonextantReport& r) {
                               return std::string(hyf::nonextant::to_string(r.method));
                             })
      .def_property_readonly("boundary_mode",
                             [](const hyf::nonextant::NonextantReport& r) {
                               return std::string(hyf::nonextant::to_string(r.mode));
                             })
      .def("selected", &hyf::nonextant::NonextantReport::selected, "leg"_a)
      .def_property_readonly("f", &hyf::nonextant::NonextantReport::f_selected)
      .def("loss", &hyf::nonextant::data_loss_ratio);

  m.def("detect_interval_rule",
        py::overload_cast<const hyf::ObservationSeries&, const hyf::ObservationSeries&, bool>(
            &hyf::nonextant::detect_interval_rule),
        "first"_a, "second"_a, "include_boundary"_a = false);
  m.def("detect_label_rule", &hyf::nonextant::detect_label_rule, "labels"_a,
        "include_boundary"_a = false);
  m.def("oracle_detect", &hyf::nonextant::oracle_detect, "first"_a, "second"_a,
        "include_boundary"_a = false);
  m.def("count_pattern",
        py::overload_cast<std::string_view, std::string_view>(&hyf::nonextant::count_pattern),
        "text"_a, "pattern"_a);
  m.def(
      "nonextant_interval",
      [](const hyf::ObservationSeries& a, const hyf::ObservationSeries& b, std::size_t i)
          -> std::optional<std::pair<double, double>> {
        const auto iv = hyf::nonextant::nonextant_interval(a, b, i);
        if (iv.empty()) return std::nullopt;
        return std::make_pair(iv.lo, iv.hi);
      },
      "first"_a, "second"_a, "interval"_a,
      "Open (lo, hi) time interval of second-leg points cancelled inside interval i, or None.");

  // adversary
  py::class_<hyf::adversary::AdversaryConfig>(m, "AdversaryConfig")
      .def(py::init([](double a, double b, double horizon, std::uint64_t seed,
                       std::size_t min_points, std::size_t budget) {
             hyf::adversary::AdversaryConfig c{a, b, horizon, seed, min_points, budget};
             c.validate();
             return c;
           }),
           "rate_a"_a = 1.0, "rate_b"_a = 1.0, "horizon"_a = 100.0, "seed"_a = 0,
           "min_points"_a = 2, "rejection_budget"_a = 1000)
      .def_readonly("rate_a", &hyf::adversary::AdversaryConfig::rate_a)
      .def_readonly("rate_b", &hyf::adversary::AdversaryConfig::rate_b)
      .def_readonly("horizon", &hyf::adversary::AdversaryConfig::horizon)
      .def_readonly("seed", &hyf::adversary::AdversaryConfig::seed)
      .def_readonly("min_points", &hyf::adversary::AdversaryConfig::min_points)
      .def_readonly("rejection_budget", &hyf::adversary::AdversaryConfig::rejection_budget);

  m.def(
      "generate_inputs",
      [](const hyf::adversary::AdversaryConfig& c, std::uint64_t trial, bool random_walk) {
        auto g = hyf::adversary::generate_inputs(c, trial);
        if (random_walk) {
          return std::make_pair(hyf::adversary::attach_random_walk(g.first, c.seed, trial),
                                hyf::adversary::attach_random_walk(g.second, c.seed, trial));
        }
        return std::make_pair(g.first, g.second);
      },
      "config"_a, "trial"_a = 0, "random_walk"_a = false);
  m.def("theoretical_loss", &hyf::adversary::theoretical_loss, "a"_a, "b"_a);

  // montecarlo
  py::class_<hyf::montecarlo::TrialSummary>(m, "TrialSummary")
      .def_readonly("config", &hyf::montecarlo::TrialSummary::config)
      .def_readonly("runs", &hyf::montecarlo::TrialSummary::runs)
      .def_readonly("mean_loss", &hyf::montecarlo::TrialSummary::mean_loss)
      .def_readonly("std_loss", &hyf::montecarlo::TrialSummary::std_loss)
      .def_readonly("theoretical", &hyf::montecarlo::TrialSummary::theoretical)
      .def_readonly("mean_points", &hyf::montecarlo::TrialSummary::mean_points);

  m.def(
      "run_experiment",
      [](const hyf::adversary::AdversaryConfig& c, std::size_t runs, bool include_boundary,
         unsigned threads) {
        py::gil_scoped_release release;
        return hyf::montecarlo::run_experiment(c, runs, mode_of(include_boundary), threads);
      },
      "config"_a, "runs"_a, "include_boundary"_a = false, "threads"_a = 0);
  m.def(
      "table1",
      [](const std::vector<std::pair<double, double>>& rates, const std::vector<double>& horizons,
         std::size_t runs, std::uint64_t seed, bool include_boundary, unsigned threads) {
        std::vector<hyf::montecarlo::RatePair> pairs;
        for (const auto& [a, b] : rates) pairs.push_back({a, b});
        py::gil_scoped_release release;
        const auto t = hyf::montecarlo::table1(pairs, horizons, runs, seed,
                                               mode_of(include_boundary), threads);
        return t.cells;
      },
      "rates"_a, "horizons"_a, "runs"_a = 1000, "seed"_a = 20240229,
      "include_boundary"_a = false, "threads"_a = 0,
      "Trial summaries in horizon-major order.");

  // tick files
  m.def(
      "read_tick_file",
      [](const std::string& path, hyf::Leg leg) {
        return hyf::tickfile::read_tick_file(path).to_series(leg);
      },
      "path"_a, "leg"_a = hyf::Leg::A);
  m.def(
      "write_tick_file",
      [](const std::string& path, const hyf::ObservationSeries& s) {
        hyf::tickfile::write_tick_file(path, s);
      },
      "path"_a, "series"_a);
}
