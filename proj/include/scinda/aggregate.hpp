#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "scinda/calendar.hpp"
#include "scinda/preprocess.hpp"
#include "scinda/scn.hpp"

namespace scinda {

/// The six output parameters, in on-disk column order.
enum class Param : std::size_t { L1S4 = 0, L2S4, TECP, TECF, ROTI, TECR };

inline constexpr std::size_t kParamCount = 6;
inline constexpr std::array<std::string_view, kParamCount> kParamNames{"L1S4", "L2S4", "TECP",
                                                                       "TECF", "ROTI", "TECR"};
inline constexpr std::array<Param, kParamCount> kAllParams{Param::L1S4, Param::L2S4, Param::TECP,
                                                           Param::TECF, Param::ROTI, Param::TECR};

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) noexcept { return std::isnan(v); }

/// One value per output parameter; NaN marks a missing value.
struct ParamVector {
    std::array<double, kParamCount> values{kMissing, kMissing, kMissing, kMissing, kMissing, kMissing};

    double& operator[](Param p) noexcept { return values[static_cast<std::size_t>(p)]; }
    double operator[](Param p) const noexcept { return values[static_cast<std::size_t>(p)]; }
    double& operator[](std::size_t i) noexcept { return values[i]; }
    double operator[](std::size_t i) const noexcept { return values[i]; }

    /// Equality treating NaN == NaN.
    bool same_as(const ParamVector& other) const noexcept;
};

double param_value(const SatObservation& obs, Param p) noexcept;

/// Which rows feed which columns.
struct ValidityPolicy {
    enum class Mode {
        Default,   // L1S4 needs %SAM(L1) > 0; L2S4, TECP, TECF, ROTI, TECR need %SAM(L2) > 0
        Strict,    // every row feeds every column
    };
    Mode mode = Mode::Default;
    std::optional<double> min_elevation;   // deg; rows below are ignored entirely
    bool exclude_sbas = false;             // ignore PRN >= 100

    bool accepts_row(const SatObservation& obs) const noexcept;
    bool contributes(const SatObservation& obs, Param p) const noexcept;
};

/// ALL (averaged over satellites) or a single PRN.
struct SeriesScope {
    std::optional<int> prn;

    static SeriesScope all() noexcept { return {}; }
    static SeriesScope of(int p) noexcept { return {p}; }
    bool is_all() const noexcept { return !prn.has_value(); }
    bool operator==(const SeriesScope&) const = default;
};

struct MinuteSample {
    Timestamp time;
    ParamVector values;
};

struct MinuteSeries {
    SeriesScope scope;
    std::vector<MinuteSample> samples;
};

struct HourlyRow {
    Timestamp time;   // hour start
    ParamVector mean;
    ParamVector std;
    std::array<int, kParamCount> nobs{};
};

struct HourlyStats {
    SeriesScope scope;
    std::vector<HourlyRow> rows;
};

/// An epoch paired with the time it is aggregated under.
struct StampedEpoch {
    Timestamp time;
    ScnEpoch epoch;
};

/// All epochs of the buckets in time order. When two epochs share a timestamp
/// only the first (in bucket order) is kept; `duplicates` counts the rest.
std::vector<StampedEpoch> stamp_epochs(const MonthBuckets& buckets, std::size_t* duplicates = nullptr);

/// Values of one row with columns the policy rejects set to missing.
ParamVector observation_values(const SatObservation& obs, const ValidityPolicy& policy);

ParamVector average_over_satellites(const ScnEpoch& epoch, const ValidityPolicy& policy);

/// Per-PRN tracks: every epoch reduced to that PRN's single row, in time order.
/// Rows rejected by the policy's row filters (elevation, SBAS) are left out.
using PrnTracks = std::map<int, std::vector<StampedEpoch>>;
PrnTracks split_per_prn(const MonthBuckets& buckets, const ValidityPolicy& policy);

/// Ascending, duplicate-free PRN list; k-th entry (1-based) names output file k.
std::vector<int> sat_list(const PrnTracks& tracks);

MinuteSeries prn_series(int prn, const std::vector<StampedEpoch>& track, const ValidityPolicy& policy);
MinuteSeries build_all_series(const MonthBuckets& buckets, const ValidityPolicy& policy);

/// Dense hourly grid over `range`: mean, sample std (n-1) and count of
/// non-missing minute samples per column.
HourlyStats hourly_stats(const MinuteSeries& series, const DayRange& range);

/// Compares the receiver's ROTI column against |dTECR|/dt (TECU/min) between
/// consecutive minutes of a PRN track. Informational only.
struct RotiCheck {
    std::size_t pairs = 0;
    double mean_roti = kMissing;
    double mean_dtecr = kMissing;
};
RotiCheck roti_tecr_diagnostic(const PrnTracks& tracks);

} // namespace scinda
