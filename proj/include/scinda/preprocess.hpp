#pragma once

// The three raw-data corrections:
//   T20 - drop epochs whose header is malformed (e.g. "-20" in the year slot),
//   61p - move epochs filed under the wrong hour into the hour they belong to,
//   TwD - drop header-only epochs.
// Stages always run in the order T20 -> 61p -> TwD.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scinda/calendar.hpp"
#include "scinda/scn.hpp"

namespace scinda {

struct StageSet {
    bool t20 = false;
    bool p61 = false;
    bool twd = false;

    static StageSet all() noexcept { return {true, true, true}; }
    static StageSet none() noexcept { return {}; }
    /// Comma-separated tokens, case-insensitive: "t20,61p,twd". "" and "none" give the empty set.
    static StageSet parse(std::string_view csv);

    bool empty() const noexcept { return !t20 && !p61 && !twd; }
    /// Folder label: "T20_61p_TwD", "T20_TwD", ... and "RAW" for the empty set.
    std::string label() const;

    bool operator==(const StageSet&) const = default;
};

/// Hourly buckets for one processed day range. Each bucket is keyed by the
/// hour of the raw file it came from (or, after 61p, the hour it belongs to).
struct MonthBuckets {
    DayRange range;
    std::map<HourKey, std::vector<ScnEpoch>> hours;

    explicit MonthBuckets(DayRange r) : range(r) {}

    std::size_t epoch_count() const noexcept;
    bool operator==(const MonthBuckets&) const = default;
};

struct EpochMove {
    HourKey from;
    HourKey to;
    int utsec = 0;

    bool operator==(const EpochMove&) const = default;
};

struct CorrectionLog {
    std::size_t t20_removed = 0;
    std::vector<EpochMove> moved_61p;
    std::size_t twd_removed = 0;
    // 61p strays whose own hour lies outside the processed range.
    std::vector<EpochMove> dropped_out_of_range;
    // 61p strays colliding with an epoch already present at the same UTSEC.
    std::vector<EpochMove> dropped_duplicates;

    std::size_t removed_total() const noexcept
    {
        return t20_removed + twd_removed + dropped_out_of_range.size() + dropped_duplicates.size();
    }
    CorrectionLog& operator+=(const CorrectionLog& other);
    /// Counts only.
    std::string summary(const StageSet& stages) const;
    /// Counts plus every move and drop.
    std::string report(const StageSet& stages) const;

    bool operator==(const CorrectionLog&) const = default;
};

CorrectionLog apply_t20(MonthBuckets& buckets);
CorrectionLog apply_61p(MonthBuckets& buckets);
CorrectionLog apply_twd(MonthBuckets& buckets);

struct PreprocessResult {
    MonthBuckets buckets;
    CorrectionLog log;
};

PreprocessResult preprocess_month(MonthBuckets buckets, const StageSet& stages);

/// Time of an epoch for ordering and aggregation. Well-formed headers give
/// their own timestamp. Malformed headers fall back to the bucket's date, and
/// to the header's UTSEC if that was readable (the bucket's hour start otherwise).
Timestamp effective_timestamp(const ScnEpoch& epoch, const HourKey& bucket);

} // namespace scinda
