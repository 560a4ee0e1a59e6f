// Python module `scinda_iono`: parsing, preprocessing, aggregation and the
// month pipeline. Hour buckets cross the boundary as
// {(year, month, day, hour): [ScnEpoch, ...]}.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scinda/aggregate.hpp"
#include "scinda/corpus_io.hpp"
#include "scinda/error.hpp"
#include "scinda/pipeline.hpp"
#include "scinda/preprocess.hpp"
#include "scinda/scn.hpp"
#include "scinda/synth.hpp"

namespace py = pybind11;
using namespace scinda;

namespace {

using HourTuple = std::tuple<int, int, int, int>;
using HourDict = std::map<HourTuple, std::vector<ScnEpoch>>;

MonthBuckets to_buckets(const HourDict& hours, const DayRange& range)
{
    MonthBuckets b(range);
    for (const auto& [k, epochs] : hours)
        b.hours[{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)}] = epochs;
    return b;
}

HourDict from_buckets(const MonthBuckets& b)
{
    HourDict d;
    for (const auto& [k, epochs] : b.hours)
        d[{k.year, k.month, k.day, k.hour}] = epochs;
    return d;
}

py::list values_list(const ParamVector& v)
{
    py::list out;
    for (double x : v.values)
        out.append(x);
    return out;
}

py::list series_list(const MinuteSeries& s)
{
    py::list out;
    for (const auto& m : s.samples)
        out.append(py::make_tuple(m.time, values_list(m.values)));
    return out;
}

ValidityPolicy make_policy(const std::string& mode, std::optional<double> min_elevation, bool exclude_sbas)
{
    ValidityPolicy p;
    if (mode == "strict")
        p.mode = ValidityPolicy::Mode::Strict;
    else if (mode != "default")
        throw ConfigError("policy must be 'default' or 'strict', got '" + mode + "'");
    p.min_elevation = min_elevation;
    p.exclude_sbas = exclude_sbas;
    return p;
}

} // namespace

PYBIND11_MODULE(scinda_iono, m)
{
    m.doc() = "SCINDA GNSS .scn parsing, corrections and 1-minute / 1-hour aggregation";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", error);
    py::register_exception<CorpusError>(m, "CorpusError", error);
    py::register_exception<ArchiveError>(m, "ArchiveError", error);
    py::register_exception<InvalidDate>(m, "InvalidDate", error);
    py::register_exception<IoError>(m, "IoError", error);

    m.attr("PARAMS") = py::cast(std::vector<std::string>(kParamNames.begin(), kParamNames.end()));

    py::class_<Timestamp>(m, "Timestamp")
        .def(py::init<int, int, int, int>(), py::arg("year"), py::arg("month"), py::arg("day"), py::arg("utsec"))
        .def_readonly("year", &Timestamp::year)
        .def_readonly("month", &Timestamp::month)
        .def_readonly("day", &Timestamp::day)
        .def_readonly("utsec", &Timestamp::utsec)
        .def_property_readonly("day_fraction", &Timestamp::day_fraction)
        .def("iso", &Timestamp::iso)
        .def("__eq__", [](const Timestamp& a, const Timestamp& b) { return a == b; })
        .def("__repr__", [](const Timestamp& t) { return "Timestamp('" + t.iso() + "')"; });

    py::class_<DayRange>(m, "DayRange")
        .def(py::init<int, int, int, int>(), py::arg("year"), py::arg("month"), py::arg("first_day"),
             py::arg("last_day"))
        .def_static("whole_month", &DayRange::whole_month)
        .def_property_readonly("year", &DayRange::year)
        .def_property_readonly("month", &DayRange::month)
        .def_property_readonly("first_day", &DayRange::first_day)
        .def_property_readonly("last_day", &DayRange::last_day)
        .def_property_readonly("hour_count", &DayRange::hour_count);

    py::class_<EpochHeader>(m, "EpochHeader")
        .def(py::init<>())
        .def_readwrite("marker", &EpochHeader::marker)
        .def_readwrite("year2", &EpochHeader::year2)
        .def_readwrite("month", &EpochHeader::month)
        .def_readwrite("day", &EpochHeader::day)
        .def_readwrite("utsec", &EpochHeader::utsec);

    py::class_<SatObservation>(m, "SatObservation")
        .def(py::init<>())
        .def_readwrite("az", &SatObservation::az)
        .def_readwrite("el", &SatObservation::el)
        .def_readwrite("l1s4", &SatObservation::l1s4)
        .def_readwrite("sam_l1", &SatObservation::sam_l1)
        .def_readwrite("l2s4", &SatObservation::l2s4)
        .def_readwrite("sam_l2", &SatObservation::sam_l2)
        .def_readwrite("tecp", &SatObservation::tecp)
        .def_readwrite("tecf", &SatObservation::tecf)
        .def_readwrite("roti", &SatObservation::roti)
        .def_readwrite("tecr", &SatObservation::tecr)
        .def_readwrite("n_slip", &SatObservation::n_slip)
        .def_readwrite("prn", &SatObservation::prn)
        .def("__eq__", [](const SatObservation& a, const SatObservation& b) { return a == b; });

    py::class_<ScnEpoch>(m, "ScnEpoch")
        .def(py::init<>())
        .def_readwrite("header", &ScnEpoch::header)
        .def_readwrite("observations", &ScnEpoch::observations)
        .def_readwrite("malformed", &ScnEpoch::malformed)
        .def_readwrite("raw_header", &ScnEpoch::raw_header)
        .def("__eq__", [](const ScnEpoch& a, const ScnEpoch& b) { return a == b; });

    py::class_<ParseDiagnostic>(m, "ParseDiagnostic")
        .def_readonly("line", &ParseDiagnostic::line)
        .def_readonly("reason", &ParseDiagnostic::reason);

    py::class_<ParseReport>(m, "ParseReport")
        .def_readonly("epochs_ok", &ParseReport::epochs_ok)
        .def_readonly("epochs_malformed", &ParseReport::epochs_malformed)
        .def_readonly("observation_lines", &ParseReport::observation_lines)
        .def_readonly("lines_skipped", &ParseReport::lines_skipped)
        .def_readonly("total_lines", &ParseReport::total_lines)
        .def_readonly("diagnostics", &ParseReport::diagnostics);

    py::class_<CorrectionLog>(m, "CorrectionLog")
        .def_readonly("t20_removed", &CorrectionLog::t20_removed)
        .def_readonly("twd_removed", &CorrectionLog::twd_removed)
        .def_property_readonly("moved_61p", [](const CorrectionLog& l) { return l.moved_61p.size(); })
        .def_property_readonly("dropped_out_of_range",
                               [](const CorrectionLog& l) { return l.dropped_out_of_range.size(); })
        .def_property_readonly("dropped_duplicates",
                               [](const CorrectionLog& l) { return l.dropped_duplicates.size(); })
        .def("report", [](const CorrectionLog& l, const std::string& stages) {
            return l.report(StageSet::parse(stages));
        }, py::arg("stages") = "all");

    m.def("parse_scn", [](const std::string& text) {
        auto r = parse_scn(text);
        return py::make_tuple(std::move(r.epochs), std::move(r.report));
    }, py::arg("text"), "Parse .scn text; returns (epochs, report).");

    m.def("serialize_scn", &serialize_scn, py::arg("epochs"));

    m.def("epoch_timestamp", &epoch_timestamp, py::arg("header"));

    m.def("average_over_satellites", [](const ScnEpoch& e, const std::string& policy,
                                        std::optional<double> min_elevation, bool exclude_sbas) {
        return values_list(average_over_satellites(e, make_policy(policy, min_elevation, exclude_sbas)));
    }, py::arg("epoch"), py::arg("policy") = "default", py::arg("min_elevation") = py::none(),
          py::arg("exclude_sbas") = false,
          "Six per-parameter means over the epoch's rows; NaN where nothing is valid.");

    m.def("preprocess", [](const HourDict& hours, const DayRange& range, const std::string& stages) {
        auto r = preprocess_month(to_buckets(hours, range), StageSet::parse(stages));
        return py::make_tuple(from_buckets(r.buckets), std::move(r.log));
    }, py::arg("hours"), py::arg("range"), py::arg("stages") = "all",
          "Apply T20 / 61p / TwD corrections; returns (hours, log).");

    m.def("all_series", [](const HourDict& hours, const DayRange& range, const std::string& policy) {
        return series_list(build_all_series(to_buckets(hours, range), make_policy(policy, std::nullopt, false)));
    }, py::arg("hours"), py::arg("range"), py::arg("policy") = "default",
          "1-minute series averaged over satellites: [(Timestamp, [six values]), ...].");

    m.def("hourly_stats", [](const std::vector<std::pair<Timestamp, std::vector<double>>>& samples,
                             const DayRange& range) {
        MinuteSeries s;
        for (const auto& [t, v] : samples) {
            if (v.size() != kParamCount)
                throw ConfigError("each sample needs six values");
            MinuteSample ms{t, {}};
            std::copy(v.begin(), v.end(), ms.values.values.begin());
            s.samples.push_back(ms);
        }
        py::list out;
        for (const auto& row : hourly_stats(s, range).rows)
            out.append(py::make_tuple(row.time, values_list(row.mean), values_list(row.std),
                                      std::vector<int>(row.nobs.begin(), row.nobs.end())));
        return out;
    }, py::arg("samples"), py::arg("range"),
          "Dense hourly grid: [(hour start, mean, std, nobs), ...].");

    m.def("make_synthetic_corpus", [](const std::filesystem::path& root, std::uint64_t seed, const DayRange& range,
                                      std::tuple<double, double, double> rates, int satellites,
                                      int epochs_per_hour) {
        SynthConfig cfg;
        cfg.seed = seed;
        cfg.range = range;
        cfg.rates = {std::get<0>(rates), std::get<1>(rates), std::get<2>(rates)};
        cfg.gps_satellites = satellites;
        cfg.epochs_per_hour = epochs_per_hour;
        return make_synthetic_corpus(root, cfg).to_json();
    }, py::arg("root"), py::arg("seed"), py::arg("range"), py::arg("rates") = std::make_tuple(0.0, 0.0, 0.0),
          py::arg("satellites") = 8, py::arg("epochs_per_hour") = 60,
          "Write a synthetic corpus; returns the manifest as JSON text.");

    m.def("run_pipeline", [](const std::filesystem::path& corpus_root, const std::filesystem::path& output_root,
                             const DayRange& range, const std::string& stages, const std::string& policy,
                             unsigned workers, bool plots) {
        PipelineConfig cfg;
        cfg.corpus_root = corpus_root;
        cfg.output_root = output_root;
        cfg.range = range;
        cfg.stages = StageSet::parse(stages);
        cfg.policy = make_policy(policy, std::nullopt, false);
        cfg.workers = workers;
        cfg.plots = plots;
        PipelineResult r;
        {
            py::gil_scoped_release release;
            r = run_pipeline(cfg);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["epochs_loaded"] = r.epochs_loaded;
        d["epochs_kept"] = r.epochs_kept;
        d["corrections"] = r.corrections;
        d["warnings"] = r.warnings;
        d["written"] = r.written;
        d["prns"] = r.prns;
        return d;
    }, py::arg("corpus_root"), py::arg("output_root"), py::arg("range"), py::arg("stages") = "all",
          py::arg("policy") = "default", py::arg("workers") = 1, py::arg("plots") = false,
          "Full month pipeline; returns a summary dict.");
}
