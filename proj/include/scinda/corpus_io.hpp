#pragma once

// Raw corpus layout (input):
//     <root>/2015/03-Mar/50301_000000.scn.gz
// Processed layout (output), per stage label and month:
//     All_<stages>_2015-03/            SCN_2015-03_res1m_01-31[_DATES-TIMES].dat
//     SATs_<stages>_2015-03/           SCN_2015-03_res1m_01-31_<k>[_DATES-TIMES].dat, SATs_LIST_UNIQUEs_201503.dat
//     All_<stages>_Means1h_2015-03/    SCN_2015-03_Means1h_01-31[_DATES-TIMES|_Nobs|_Std].dat
//     SATs_<stages>_SATs1h_2015-03/    SCN_2015-03_SATs1h_01-31_<k>[_DATES-TIMES|_Nobs|_Std].dat

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scinda/aggregate.hpp"
#include "scinda/calendar.hpp"
#include "scinda/preprocess.hpp"

namespace scinda {

namespace fs = std::filesystem;

enum class RawExt { ism, msg, rng, obs, psn, scn };

std::string_view ext_name(RawExt e) noexcept;
std::optional<RawExt> parse_ext(std::string_view s) noexcept;

struct RawFileKey {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    RawExt ext = RawExt::scn;

    HourKey hour_key() const noexcept { return {year, month, day, hour}; }

    /// "YMMDD_HH0000" with a one-digit year by default, or "YYMMDD_HH0000".
    std::string stem(int year_digits = 1) const;
    /// stem + ".<ext>.gz"
    std::string file_name(int year_digits = 1) const;
    /// "2015/03-Mar"
    fs::path relative_dir() const;
    fs::path relative_path(int year_digits = 1) const { return relative_dir() / file_name(year_digits); }

    /// Parses a raw archive name found in the folder for (year, month). Both
    /// one- and two-digit year stems are accepted; the digits must agree with
    /// `year`. Returns nullopt for anything else.
    static std::optional<RawFileKey> from_file_name(std::string_view name, int year, int month);

    auto operator<=>(const RawFileKey&) const = default;
};

enum class EntryStatus { Ok, Empty, NotGzip, Unreadable };
std::string_view status_name(EntryStatus s) noexcept;

struct CorpusEntry {
    RawFileKey key;
    fs::path path;
    std::uintmax_t size = 0;
    EntryStatus status = EntryStatus::Ok;
};

struct CorpusIndex {
    DayRange range;
    std::vector<CorpusEntry> entries;        // every recognised archive, sorted by key
    std::vector<HourKey> missing_scn;        // hours with no .scn archive at all
    std::vector<std::string> ignored;        // names in the month folder that did not parse

    explicit CorpusIndex(DayRange r) : range(r) {}

    std::size_t expected_scn() const noexcept { return static_cast<std::size_t>(range.hour_count()); }
    /// .scn archives whose status is Ok.
    std::vector<CorpusEntry> processable_scn() const;
    /// .scn archives present but flagged (empty, not gzip, unreadable).
    std::vector<CorpusEntry> flagged_scn() const;
    std::size_t count(RawExt ext) const noexcept;
    bool has_gaps() const noexcept { return !missing_scn.empty() || !flagged_scn().empty(); }
    std::string summary() const;
};

/// Throws CorpusError if root is missing or unreadable. A missing month folder
/// or missing files only produce gaps.
CorpusIndex scan_corpus(const fs::path& root, const DayRange& range);

/// Decompressed bytes of one archive. Throws ArchiveError naming the file.
std::string extract(const CorpusEntry& entry);

// ---------------------------------------------------------------------------
// Processed outputs

enum class Family { All1m, Sats1m, All1h, Sats1h };

class OutputLayout {
public:
    OutputLayout(std::string stage_label, DayRange range)
        : label_(std::move(stage_label)), range_(range) {}

    const std::string& stage_label() const noexcept { return label_; }
    const DayRange& range() const noexcept { return range_; }

    std::string folder(Family f) const;
    /// File stem without ".dat"; `k` is the 1-based SatList index for per-PRN families.
    std::string stem(Family f, std::optional<int> k = std::nullopt) const;
    /// "SATs_LIST_UNIQUEs_201503.dat"
    std::string sat_list_name() const;
    /// Folder for corrected hourly .scn files: "SCN_<stages>_<YYYY-MM>".
    std::string corrected_scn_folder() const;
    /// Folder for per-pair .scn files: "PAIRS_<stages>_<YYYY-MM>".
    std::string pair_scn_folder() const;

private:
    std::string label_;
    DayRange range_;
};

/// "%14.6g" or right-aligned "NaN".
std::string format_value(double v);

/// Writes <stem>.dat and <stem>_DATES-TIMES.dat. Returns the paths written.
std::vector<fs::path> write_minute_series(const fs::path& dir, const std::string& stem,
                                          const MinuteSeries& series, const DayRange& range);
/// Writes <stem>.dat, _DATES-TIMES, _Nobs and _Std.
std::vector<fs::path> write_hourly_stats(const fs::path& dir, const std::string& stem,
                                         const HourlyStats& stats, const DayRange& range);
fs::path write_sat_list(const fs::path& dir, const OutputLayout& layout, const std::vector<int>& prns);

struct DatTable {
    std::vector<Timestamp> times;
    std::vector<ParamVector> values;
};
/// Reads <stem>.dat (or <stem>_<suffix>.dat) against <stem>_DATES-TIMES.dat.
DatTable read_dat_table(const fs::path& dir, const std::string& stem, std::string_view suffix = {});
std::vector<int> read_sat_list(const fs::path& path);

struct MonthProducts {
    MinuteSeries all_1m;
    std::vector<MinuteSeries> sats_1m;   // in SatList order
    HourlyStats all_1h;
    std::vector<HourlyStats> sats_1h;    // in SatList order
    std::vector<int> prns;
};

/// Writes the four families under `out_root`; returns every path written.
std::vector<fs::path> write_month_outputs(const fs::path& out_root, const OutputLayout& layout,
                                          const MonthProducts& products);

/// Corrected hourly files, one "YMMDD_HH0000.scn" per bucket.
std::vector<fs::path> write_corrected_scn(const fs::path& out_root, const OutputLayout& layout,
                                          const MonthBuckets& buckets);
/// One .scn file per PRN, one single-row epoch per minute.
std::vector<fs::path> write_pair_scn(const fs::path& out_root, const OutputLayout& layout,
                                     const PrnTracks& tracks);

/// Loads a folder of hourly "YMMDD_HH0000.scn[.gz]" files back into buckets.
MonthBuckets load_hourly_scn_dir(const fs::path& dir, const DayRange& range, ParseReport* report = nullptr);

} // namespace scinda
