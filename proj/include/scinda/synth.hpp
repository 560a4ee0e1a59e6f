#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scinda/calendar.hpp"

namespace scinda {

/// Fractions of all generated epochs that receive each defect.
struct DefectRates {
    double t20 = 0.0;
    double p61 = 0.0;
    double twd = 0.0;
};

struct SynthConfig {
    std::uint64_t seed = 1;
    DayRange range = DayRange::whole_month(2015, 3);
    DefectRates rates;
    int epochs_per_hour = 60;
    int gps_satellites = 8;
    bool include_sbas = true;   // adds PRNs 120 and 126 with zero-filled L2 rows
    int year_digits = 1;        // raw file name stem
};

struct InjectedDefect {
    std::string kind;    // "T20", "61p" or "TwD"
    HourKey file;        // hourly file the defective epoch was written to
    int utsec = 0;
};

struct SynthManifest {
    std::uint64_t seed = 0;
    std::string month;
    std::size_t files = 0;
    std::size_t epochs = 0;        // distinct epochs generated
    std::size_t t20 = 0;
    std::size_t p61 = 0;
    std::size_t twd = 0;
    std::vector<int> prns;
    std::vector<InjectedDefect> defects;

    std::string to_json() const;
    static SynthManifest from_json(const std::string& text);
};

/// Writes hourly `.scn.gz` archives under root/YYYY/MM-Mon/ plus
/// root/manifest.json. The defect counts are exact: round(rate * epochs) for
/// each kind, on disjoint epochs. 61p strays are the first epoch of an hour
/// appended to the previous hour's file.
SynthManifest make_synthetic_corpus(const std::filesystem::path& root, const SynthConfig& config);

} // namespace scinda
