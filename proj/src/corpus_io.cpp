#include "scinda/corpus_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "scinda/error.hpp"
#include "scinda/gzip.hpp"

namespace scinda {

namespace {

constexpr std::array<std::string_view, 6> kExtNames{"ism", "msg", "rng", "obs", "psn", "scn"};
constexpr int kColumnWidth = 14;

std::string two(int v)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02d", v);
    return buf;
}

EntryStatus probe(const fs::path& p, std::uintmax_t& size)
{
    std::error_code ec;
    size = fs::file_size(p, ec);
    if (ec)
        return EntryStatus::Unreadable;
    if (size == 0)
        return EntryStatus::Empty;
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return EntryStatus::Unreadable;
    unsigned char magic[2] = {0, 0};
    in.read(reinterpret_cast<char*>(magic), 2);
    if (in.gcount() != 2 || magic[0] != 0x1f || magic[1] != 0x8b)
        return EntryStatus::NotGzip;
    return EntryStatus::Ok;
}

std::string dates_times_row(const Timestamp& t)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%*d%*d%*d%*d%*d%*.8f\n", kColumnWidth, t.year, kColumnWidth, t.month,
                  kColumnWidth, t.day, kColumnWidth, t.hour(), kColumnWidth, t.utsec, kColumnWidth,
                  t.day_fraction());
    return buf;
}

std::string values_row(const ParamVector& v)
{
    std::string s;
    for (std::size_t c = 0; c < kParamCount; ++c)
        s += format_value(v[c]);
    s += '\n';
    return s;
}

std::string nobs_row(const std::array<int, kParamCount>& n)
{
    std::string s;
    char buf[32];
    for (int v : n) {
        std::snprintf(buf, sizeof buf, "%*d", kColumnWidth, v);
        s += buf;
    }
    s += '\n';
    return s;
}

void check_in_range(const Timestamp& t, const DayRange& range)
{
    if (!range.contains(t))
        throw ConfigError("sample " + t.iso() + " lies outside " + range.month_tag() + " days " + range.day_tag() +
                          "; outputs must stay inside one calendar month");
}

fs::path ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    return dir;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double read_number(std::string_view tok, const fs::path& file)
{
    if (tok == "NaN" || tok == "nan")
        return kMissing;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw IoError(file.string() + ": bad number '" + std::string(tok) + "'");
    return v;
}

std::vector<std::vector<double>> read_rows(const fs::path& file, std::size_t columns)
{
    const std::string text = gz::read_file(file);
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks.size() != columns)
            throw IoError(file.string() + ": expected " + std::to_string(columns) + " columns");
        std::vector<double> row;
        row.reserve(columns);
        for (auto t : toks)
            row.push_back(read_number(t, file));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string_view ext_name(RawExt e) noexcept
{
    return kExtNames[static_cast<std::size_t>(e)];
}

std::optional<RawExt> parse_ext(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kExtNames.size(); ++i)
        if (kExtNames[i] == s)
            return static_cast<RawExt>(i);
    return std::nullopt;
}

std::string RawFileKey::stem(int year_digits) const
{
    char buf[32];
    if (year_digits == 2)
        std::snprintf(buf, sizeof buf, "%02d%02d%02d_%02d0000", year % 100, month, day, hour);
    else
        std::snprintf(buf, sizeof buf, "%d%02d%02d_%02d0000", year % 10, month, day, hour);
    return buf;
}

std::string RawFileKey::file_name(int year_digits) const
{
    return stem(year_digits) + "." + std::string(ext_name(ext)) + ".gz";
}

fs::path RawFileKey::relative_dir() const
{
    return fs::path(std::to_string(year)) / (two(month) + "-" + std::string(month_abbrev(month)));
}

std::optional<RawFileKey> RawFileKey::from_file_name(std::string_view name, int year, int month)
{
    static const std::regex re(R"(^(\d{5,6})_(\d{2})0000\.([a-z]{3})\.gz$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(name.begin(), name.end(), m, re))
        return std::nullopt;
    const std::string digits = m[1].str();
    const bool two_digit = digits.size() == 6;
    const int y = std::stoi(digits.substr(0, two_digit ? 2 : 1));
    if (y != (two_digit ? year % 100 : year % 10))
        return std::nullopt;
    const std::size_t off = two_digit ? 2 : 1;
    const int mm = std::stoi(digits.substr(off, 2));
    const int dd = std::stoi(digits.substr(off + 2, 2));
    const int hh = std::stoi(m[2].str());
    const auto ext = parse_ext(m[3].str());
    if (!ext || mm != month || !is_valid_date(year, mm, dd) || hh > 23)
        return std::nullopt;
    return RawFileKey{year, mm, dd, hh, *ext};
}

std::string_view status_name(EntryStatus s) noexcept
{
    switch (s) {
    case EntryStatus::Ok: return "ok";
    case EntryStatus::Empty: return "empty";
    case EntryStatus::NotGzip: return "not-gzip";
    case EntryStatus::Unreadable: return "unreadable";
    }
    return "?";
}

std::vector<CorpusEntry> CorpusIndex::processable_scn() const
{
    std::vector<CorpusEntry> out;
    for (const auto& e : entries)
        if (e.key.ext == RawExt::scn && e.status == EntryStatus::Ok)
            out.push_back(e);
    return out;
}

std::vector<CorpusEntry> CorpusIndex::flagged_scn() const
{
    std::vector<CorpusEntry> out;
    for (const auto& e : entries)
        if (e.key.ext == RawExt::scn && e.status != EntryStatus::Ok)
            out.push_back(e);
    return out;
}

std::size_t CorpusIndex::count(RawExt ext) const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const CorpusEntry& e) { return e.key.ext == ext; }));
}

std::string CorpusIndex::summary() const
{
    std::ostringstream os;
    os << "period: " << range.month_tag() << " days " << range.day_tag() << '\n';
    os << "expected .scn archives: " << expected_scn() << '\n';
    for (std::size_t i = 0; i < kExtNames.size(); ++i)
        os << "found ." << kExtNames[i] << ": " << count(static_cast<RawExt>(i)) << '\n';
    os << "missing .scn hours: " << missing_scn.size() << '\n';
    const auto flagged = flagged_scn();
    os << "flagged .scn archives: " << flagged.size() << '\n';
    for (const auto& e : flagged)
        os << "  " << e.key.file_name() << ": " << status_name(e.status) << '\n';
    if (!ignored.empty())
        os << "unrecognised names: " << ignored.size() << '\n';
    return os.str();
}

CorpusIndex scan_corpus(const fs::path& root, const DayRange& range)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw CorpusError("corpus root is not a directory: " + root.string());

    CorpusIndex index(range);
    const RawFileKey probe_key{range.year(), range.month(), 1, 0, RawExt::scn};
    const fs::path month_dir = root / probe_key.relative_dir();

    if (fs::is_directory(month_dir, ec)) {
        fs::directory_iterator it(month_dir, ec);
        if (ec)
            throw CorpusError("cannot read " + month_dir.string() + ": " + ec.message());
        std::vector<fs::path> names;
        for (; it != fs::directory_iterator(); it.increment(ec)) {
            if (ec)
                throw CorpusError("cannot read " + month_dir.string() + ": " + ec.message());
            if (it->is_regular_file(ec))
                names.push_back(it->path());
        }
        std::sort(names.begin(), names.end());
        for (const auto& p : names) {
            const auto name = p.filename().string();
            auto key = RawFileKey::from_file_name(name, range.year(), range.month());
            if (!key) {
                index.ignored.push_back(name);
                continue;
            }
            if (!range.contains(key->hour_key()))
                continue;
            CorpusEntry entry{*key, p, 0, EntryStatus::Ok};
            entry.status = probe(p, entry.size);
            index.entries.push_back(std::move(entry));
        }
    }
    std::sort(index.entries.begin(), index.entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
        return a.key < b.key || (a.key == b.key && a.path < b.path);
    });

    std::set<HourKey> have;
    for (const auto& e : index.entries)
        if (e.key.ext == RawExt::scn)
            have.insert(e.key.hour_key());
    for (int d = range.first_day(); d <= range.last_day(); ++d)
        for (int h = 0; h < 24; ++h) {
            const HourKey k{range.year(), range.month(), d, h};
            if (!have.contains(k))
                index.missing_scn.push_back(k);
        }
    return index;
}

std::string extract(const CorpusEntry& entry)
{
    std::string bytes;
    try {
        bytes = gz::read_file(entry.path);
    } catch (const IoError& e) {
        throw ArchiveError(entry.path.string(), e.what());
    }
    return gz::decompress(bytes, entry.path.string());
}

// ---------------------------------------------------------------------------

std::string OutputLayout::folder(Family f) const
{
    const std::string m = range_.month_tag();
    switch (f) {
    case Family::All1m: return "All_" + label_ + "_" + m;
    case Family::Sats1m: return "SATs_" + label_ + "_" + m;
    case Family::All1h: return "All_" + label_ + "_Means1h_" + m;
    case Family::Sats1h: return "SATs_" + label_ + "_SATs1h_" + m;
    }
    return {};
}

std::string OutputLayout::stem(Family f, std::optional<int> k) const
{
    const std::string base = "SCN_" + range_.month_tag();
    const std::string days = range_.day_tag();
    const std::string idx = k ? "_" + std::to_string(*k) : std::string{};
    switch (f) {
    case Family::All1m: return base + "_res1m_" + days;
    case Family::Sats1m: return base + "_res1m_" + days + idx;
    case Family::All1h: return base + "_Means1h_" + days;
    case Family::Sats1h: return base + "_SATs1h_" + days + idx;
    }
    return {};
}

std::string OutputLayout::sat_list_name() const
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "SATs_LIST_UNIQUEs_%04d%02d.dat", range_.year(), range_.month());
    return buf;
}

std::string OutputLayout::corrected_scn_folder() const
{
    return "SCN_" + label_ + "_" + range_.month_tag();
}

std::string OutputLayout::pair_scn_folder() const
{
    return "PAIRS_" + label_ + "_" + range_.month_tag();
}

std::string format_value(double v)
{
    char buf[32];
    if (is_missing(v))
        std::snprintf(buf, sizeof buf, "%*s", kColumnWidth, "NaN");
    else
        std::snprintf(buf, sizeof buf, "%*.6g", kColumnWidth, v);
    return buf;
}

std::vector<fs::path> write_minute_series(const fs::path& dir, const std::string& stem, const MinuteSeries& series,
                                          const DayRange& range)
{
    ensure_dir(dir);
    std::string data;
    std::string times;
    data.reserve(series.samples.size() * 85);
    times.reserve(series.samples.size() * 85);
    for (const auto& s : series.samples) {
        check_in_range(s.time, range);
        data += values_row(s.values);
        times += dates_times_row(s.time);
    }
    const fs::path a = dir / (stem + ".dat");
    const fs::path b = dir / (stem + "_DATES-TIMES.dat");
    gz::write_file(a, data);
    gz::write_file(b, times);
    return {a, b};
}

std::vector<fs::path> write_hourly_stats(const fs::path& dir, const std::string& stem, const HourlyStats& stats,
                                         const DayRange& range)
{
    ensure_dir(dir);
    std::string mean, times, nobs, sd;
    for (const auto& r : stats.rows) {
        check_in_range(r.time, range);
        mean += values_row(r.mean);
        times += dates_times_row(r.time);
        nobs += nobs_row(r.nobs);
        sd += values_row(r.std);
    }
    std::vector<fs::path> out{dir / (stem + ".dat"), dir / (stem + "_DATES-TIMES.dat"), dir / (stem + "_Nobs.dat"),
                              dir / (stem + "_Std.dat")};
    gz::write_file(out[0], mean);
    gz::write_file(out[1], times);
    gz::write_file(out[2], nobs);
    gz::write_file(out[3], sd);
    return out;
}

fs::path write_sat_list(const fs::path& dir, const OutputLayout& layout, const std::vector<int>& prns)
{
    ensure_dir(dir);
    std::string text;
    for (int p : prns)
        text += std::to_string(p) + '\n';
    const fs::path path = dir / layout.sat_list_name();
    gz::write_file(path, text);
    return path;
}

DatTable read_dat_table(const fs::path& dir, const std::string& stem, std::string_view suffix)
{
    const std::string name = suffix.empty() ? stem + ".dat" : stem + "_" + std::string(suffix) + ".dat";
    const auto values = read_rows(dir / name, kParamCount);
    const auto times = read_rows(dir / (stem + "_DATES-TIMES.dat"), 6);
    if (values.size() != times.size())
        throw IoError(name + ": row count differs from its DATES-TIMES companion");
    DatTable t;
    t.times.reserve(times.size());
    t.values.reserve(values.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& r = times[i];
        t.times.push_back(Timestamp{static_cast<int>(r[0]), static_cast<int>(r[1]), static_cast<int>(r[2]),
                                    static_cast<int>(r[4])});
        ParamVector v;
        for (std::size_t c = 0; c < kParamCount; ++c)
            v[c] = values[i][c];
        t.values.push_back(v);
    }
    return t;
}

std::vector<int> read_sat_list(const fs::path& path)
{
    std::vector<int> prns;
    for (const auto& row : read_rows(path, 1))
        prns.push_back(static_cast<int>(row[0]));
    return prns;
}

std::vector<fs::path> write_month_outputs(const fs::path& out_root, const OutputLayout& layout,
                                          const MonthProducts& p)
{
    if (p.sats_1m.size() != p.prns.size() || p.sats_1h.size() != p.prns.size())
        throw Error("per-PRN products do not match the satellite list");
    const auto& range = layout.range();
    std::vector<fs::path> written;
    const auto add = [&](std::vector<fs::path> v) { written.insert(written.end(), v.begin(), v.end()); };

    add(write_minute_series(out_root / layout.folder(Family::All1m), layout.stem(Family::All1m), p.all_1m, range));

    const fs::path sats1m = out_root / layout.folder(Family::Sats1m);
    ensure_dir(sats1m);
    written.push_back(write_sat_list(sats1m, layout, p.prns));
    for (std::size_t i = 0; i < p.prns.size(); ++i)
        add(write_minute_series(sats1m, layout.stem(Family::Sats1m, static_cast<int>(i + 1)), p.sats_1m[i], range));

    add(write_hourly_stats(out_root / layout.folder(Family::All1h), layout.stem(Family::All1h), p.all_1h, range));

    const fs::path sats1h = out_root / layout.folder(Family::Sats1h);
    ensure_dir(sats1h);
    written.push_back(write_sat_list(sats1h, layout, p.prns));
    for (std::size_t i = 0; i < p.prns.size(); ++i)
        add(write_hourly_stats(sats1h, layout.stem(Family::Sats1h, static_cast<int>(i + 1)), p.sats_1h[i], range));
    return written;
}

std::vector<fs::path> write_corrected_scn(const fs::path& out_root, const OutputLayout& layout,
                                          const MonthBuckets& buckets)
{
    const fs::path dir = ensure_dir(out_root / layout.corrected_scn_folder());
    std::vector<fs::path> out;
    for (const auto& [key, epochs] : buckets.hours) {
        const RawFileKey rk{key.year, key.month, key.day, key.hour, RawExt::scn};
        const fs::path p = dir / (rk.stem() + ".scn");
        gz::write_file(p, serialize_scn(epochs));
        out.push_back(p);
    }
    return out;
}

std::vector<fs::path> write_pair_scn(const fs::path& out_root, const OutputLayout& layout, const PrnTracks& tracks)
{
    const fs::path dir = ensure_dir(out_root / layout.pair_scn_folder());
    std::vector<fs::path> out;
    int k = 0;
    for (const auto& [prn, track] : tracks) {
        ++k;
        std::vector<ScnEpoch> epochs;
        epochs.reserve(track.size());
        for (const auto& s : track)
            epochs.push_back(s.epoch);
        const fs::path p = dir / (layout.stem(Family::Sats1m, k) + ".scn");
        gz::write_file(p, serialize_scn(epochs));
        out.push_back(p);
    }
    return out;
}

MonthBuckets load_hourly_scn_dir(const fs::path& dir, const DayRange& range, ParseReport* report)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw CorpusError("not a directory: " + dir.string());
    static const std::regex re(R"(^(\d{5,6})_(\d{2})0000\.scn(\.gz)?$)");
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.is_regular_file())
            files.push_back(de.path());
    std::sort(files.begin(), files.end());

    MonthBuckets buckets(range);
    for (const auto& p : files) {
        const std::string name = p.filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, re))
            continue;
        const bool gzipped = m[3].matched;
        auto key = RawFileKey::from_file_name(m[1].str() + "_" + m[2].str() + "0000.scn.gz", range.year(),
                                              range.month());
        if (!key || !range.contains(key->hour_key()))
            continue;
        const std::string text = gzipped ? gz::read_gzip_file(p) : gz::read_file(p);
        auto parsed = parse_scn(text);
        if (report)
            *report += parsed.report;
        auto& bucket = buckets.hours[key->hour_key()];
        bucket.insert(bucket.end(), std::make_move_iterator(parsed.epochs.begin()),
                      std::make_move_iterator(parsed.epochs.end()));
    }
    return buckets;
}

} // namespace scinda
