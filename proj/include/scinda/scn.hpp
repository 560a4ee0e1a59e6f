#pragma once

// Reader and writer for the SCINDA ".scn" ASCII dialect.
//
// A file is a sequence of epochs. Each epoch opens with a header line
//
//     T 15 03 01 00092
//
// (marker letter, two-digit year, month, day, seconds since midnight UTC)
// followed by zero or more 12-column rows, one per receiver-satellite pair:
//
//     AZ EL L1S4 %SAM(L1) L2S4 %SAM(L2) TECP TECF ROTI TECR N PRN

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "scinda/calendar.hpp"

namespace scinda {

struct EpochHeader {
    char marker = 'T';
    int year2 = 0;   // 0..99, years 2000..2099
    int month = 1;
    int day = 1;
    int utsec = 0;   // 0..86399

    bool operator==(const EpochHeader&) const = default;
};

struct SatObservation {
    double az = 0.0;      // deg, [0, 360)
    double el = 0.0;      // deg, [-90, 90]
    double l1s4 = 0.0;
    int sam_l1 = 0;       // %
    double l2s4 = 0.0;
    int sam_l2 = 0;       // %
    double tecp = 0.0;    // TECU
    double tecf = 0.0;    // TECU
    double roti = 0.0;    // TECU/min
    double tecr = 0.0;    // TECU
    int n_slip = 0;       // minutes since last slip
    int prn = 0;

    bool operator==(const SatObservation&) const = default;
};

struct ScnEpoch {
    EpochHeader header;
    std::vector<SatObservation> observations;

    // Set when the header did not validate (e.g. "T -20 03 01 00092"). The
    // header fields then hold whatever could be read (-1 where nothing could)
    // and raw_header keeps the original tokens for re-emission.
    bool malformed = false;
    std::string raw_header;

    bool operator==(const ScnEpoch&) const = default;
};

struct ParseDiagnostic {
    std::size_t line = 0;   // 1-based
    std::string reason;

    bool operator==(const ParseDiagnostic&) const = default;
};

struct ParseReport {
    std::size_t epochs_ok = 0;
    std::size_t epochs_malformed = 0;
    std::size_t observation_lines = 0;
    std::size_t lines_skipped = 0;   // includes blank lines
    std::size_t total_lines = 0;
    std::vector<ParseDiagnostic> diagnostics;

    std::size_t header_lines() const noexcept { return epochs_ok + epochs_malformed; }
    ParseReport& operator+=(const ParseReport& other);
    bool operator==(const ParseReport&) const = default;
};

struct ParseResult {
    std::vector<ScnEpoch> epochs;
    ParseReport report;
};

ParseResult parse_scn(std::string_view text);
/// Throws IoError if the stream fails for a reason other than end of file.
ParseResult parse_scn(std::istream& in);
ParseResult parse_scn_file(const std::filesystem::path& path);

/// Header is "<marker> YY MM DD UTSEC"; rows use fixed decimals per column.
std::string serialize_scn(const std::vector<ScnEpoch>& epochs);
std::string format_header(const ScnEpoch& epoch);
std::string format_observation(const SatObservation& obs);

/// Throws InvalidDate if the header does not name a real date and second of day.
Timestamp epoch_timestamp(const EpochHeader& header);

/// Checks the per-field ranges. Returns an empty string when the row is valid,
/// otherwise the first violated constraint.
std::string check_observation(const SatObservation& obs);

} // namespace scinda
