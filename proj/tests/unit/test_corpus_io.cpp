#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "scinda/corpus_io.hpp"
#include "scinda/error.hpp"
#include "scinda/gzip.hpp"

using namespace scinda;
namespace fs = std::filesystem;

namespace {

const DayRange kMarch = DayRange::whole_month(2015, 3);

void put(const fs::path& p, const std::string& bytes)
{
    fs::create_directories(p.parent_path());
    gz::write_file(p, bytes);
}

std::set<std::string> names_in(const fs::path& dir)
{
    std::set<std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        out.insert(e.path().filename().string());
    return out;
}

} // namespace

TEST_CASE("raw file naming")
{
    const RawFileKey k{2015, 3, 1, 0, RawExt::scn};
    CHECK(k.file_name() == "50301_000000.scn.gz");
    CHECK(k.file_name(2) == "150301_000000.scn.gz");
    CHECK(k.relative_dir() == fs::path("2015/03-Mar"));
    CHECK(RawFileKey{2015, 12, 31, 23, RawExt::obs}.relative_path() == fs::path("2015/12-Dec/51231_230000.obs.gz"));

    const auto parsed = RawFileKey::from_file_name("50301_000000.scn.gz", 2015, 3);
    REQUIRE(parsed);
    CHECK(parsed->hour_key() == HourKey{2015, 3, 1, 0});
    CHECK(parsed->ext == RawExt::scn);
    CHECK(RawFileKey::from_file_name("150317_140000.psn.gz", 2015, 3)->hour_key() == HourKey{2015, 3, 17, 14});
    CHECK_FALSE(RawFileKey::from_file_name("60301_000000.scn.gz", 2015, 3));   // wrong year digit
    CHECK_FALSE(RawFileKey::from_file_name("50401_000000.scn.gz", 2015, 3));   // wrong month
    CHECK_FALSE(RawFileKey::from_file_name("50301_240000.scn.gz", 2015, 3));
    CHECK_FALSE(RawFileKey::from_file_name("50301_000000.txt.gz", 2015, 3));
    CHECK_FALSE(RawFileKey::from_file_name("50301_000000.scn", 2015, 3));
}

TEST_CASE("scan: empty root has 744 gaps")
{
    oracle::TempDir tmp("scan_empty");
    const auto idx = scan_corpus(tmp.path(), kMarch);
    CHECK(idx.entries.empty());
    CHECK(idx.expected_scn() == 744);
    CHECK(idx.missing_scn.size() == 744);
    CHECK(idx.has_gaps());
}

TEST_CASE("scan: missing root is an error")
{
    CHECK_THROWS_AS(scan_corpus("/nonexistent/scinda/root", kMarch), CorpusError);
}

TEST_CASE("scan: complete month and flagged archives")
{
    oracle::TempDir tmp("scan_full");
    const std::string payload = gz::compress("T 15 03 01 00032\n");
    for (int d = 1; d <= 31; ++d)
        for (int h = 0; h < 24; ++h)
            put(tmp.path() / RawFileKey{2015, 3, d, h, RawExt::scn}.relative_path(), payload);
    put(tmp.path() / RawFileKey{2015, 3, 1, 0, RawExt::obs}.relative_path(), payload);
    put(tmp.path() / RawFileKey{2015, 3, 1, 0, RawExt::msg}.relative_path(), payload);
    put(tmp.path() / "2015/03-Mar/README.txt", "x");

    auto idx = scan_corpus(tmp.path(), kMarch);
    CHECK(idx.count(RawExt::scn) == 744);
    CHECK(idx.processable_scn().size() == 744);
    CHECK(idx.count(RawExt::obs) == 1);
    CHECK(idx.count(RawExt::msg) == 1);
    CHECK(idx.missing_scn.empty());
    CHECK(idx.ignored == std::vector<std::string>{"README.txt"});
    CHECK_FALSE(idx.has_gaps());
    CHECK(idx.processable_scn().front().key.hour_key() == HourKey{2015, 3, 1, 0});

    put(tmp.path() / "2015/03-Mar/50305_070000.scn.gz", "");
    put(tmp.path() / "2015/03-Mar/50306_070000.scn.gz", "plain text, not gzip");
    fs::remove(tmp.path() / "2015/03-Mar/50310_100000.scn.gz");
    idx = scan_corpus(tmp.path(), kMarch);
    CHECK(idx.processable_scn().size() == 741);
    CHECK(idx.flagged_scn().size() == 2);
    CHECK(idx.missing_scn == std::vector<HourKey>{{2015, 3, 10, 10}});
    CHECK(idx.has_gaps());

    // restricted day range only sees its own hours
    const auto part = scan_corpus(tmp.path(), DayRange(2015, 3, 17, 18));
    CHECK(part.count(RawExt::scn) == 48);
}

TEST_CASE("extract")
{
    oracle::TempDir tmp("extract");
    const std::string sample = oracle::read_text("sample_verbatim.scn");
    const auto p = tmp.path() / "50301_000000.scn.gz";
    put(p, gz::compress(sample));
    CorpusEntry e{{2015, 3, 1, 0, RawExt::scn}, p, 0, EntryStatus::Ok};
    CHECK(extract(e) == sample);

    put(p, "");
    CHECK_THROWS_AS(extract(e), ArchiveError);
    put(p, "this is not gzip data at all......");
    CHECK_THROWS_AS(extract(e), ArchiveError);

    const std::string full = gz::compress(sample);
    put(p, full.substr(0, full.size() / 2));
    try {
        extract(e);
        FAIL("truncated archive accepted");
    } catch (const ArchiveError& err) {
        CHECK(err.file() == p.string());
    }

    std::string corrupt = full;
    corrupt[corrupt.size() / 2] ^= 0x5a;
    corrupt[corrupt.size() / 2 + 1] ^= 0x33;
    put(p, corrupt);
    CHECK_THROWS_AS(extract(e), ArchiveError);

    // concatenated members
    put(p, gz::compress("abc") + gz::compress("def"));
    CHECK(extract(e) == "abcdef");
}

TEST_CASE("output naming matches the published layout")
{
    const OutputLayout L(StageSet::all().label(), kMarch);
    CHECK(L.folder(Family::All1m) == "All_T20_61p_TwD_2015-03");
    CHECK(L.folder(Family::Sats1m) == "SATs_T20_61p_TwD_2015-03");
    CHECK(L.folder(Family::All1h) == "All_T20_61p_TwD_Means1h_2015-03");
    CHECK(L.folder(Family::Sats1h) == "SATs_T20_61p_TwD_SATs1h_2015-03");
    CHECK(L.stem(Family::All1m) == "SCN_2015-03_res1m_01-31");
    CHECK(L.stem(Family::Sats1m, 2) == "SCN_2015-03_res1m_01-31_2");
    CHECK(L.stem(Family::All1h) == "SCN_2015-03_Means1h_01-31");
    CHECK(L.stem(Family::Sats1h, 3) == "SCN_2015-03_SATs1h_01-31_3");
    CHECK(L.sat_list_name() == "SATs_LIST_UNIQUEs_201503.dat");
}

TEST_CASE("value formatting")
{
    CHECK(format_value(0.0877777777) == "     0.0877778");
    CHECK(format_value(-32.659) == "       -32.659");
    CHECK(format_value(kMissing) == "           NaN");
    CHECK(format_value(1e-300).size() == 14);
}

TEST_CASE("writing the four families")
{
    oracle::TempDir tmp("write");
    MonthBuckets b(kMarch);
    // three satellites: PRNs 16, 18, 19 from the second epoch
    b.hours[{2015, 3, 1, 0}] = {parse_scn(oracle::read_text("sample.scn")).epochs.at(1)};

    MonthProducts p;
    p.all_1m = build_all_series(b, {});
    p.all_1h = hourly_stats(p.all_1m, kMarch);
    const auto tracks = split_per_prn(b, {});
    p.prns = sat_list(tracks);
    for (int prn : p.prns) {
        p.sats_1m.push_back(prn_series(prn, tracks.at(prn), {}));
        p.sats_1h.push_back(hourly_stats(p.sats_1m.back(), kMarch));
    }
    REQUIRE(p.prns.size() == 3);

    const OutputLayout L("T20_61p_TwD", kMarch);
    write_month_outputs(tmp.path(), L, p);

    CHECK(names_in(tmp.path()) == std::set<std::string>{"All_T20_61p_TwD_2015-03", "All_T20_61p_TwD_Means1h_2015-03",
                                                        "SATs_T20_61p_TwD_2015-03",
                                                        "SATs_T20_61p_TwD_SATs1h_2015-03"});
    CHECK(names_in(tmp.path() / "All_T20_61p_TwD_Means1h_2015-03") ==
          std::set<std::string>{"SCN_2015-03_Means1h_01-31.dat", "SCN_2015-03_Means1h_01-31_DATES-TIMES.dat",
                                "SCN_2015-03_Means1h_01-31_Nobs.dat", "SCN_2015-03_Means1h_01-31_Std.dat"});
    CHECK(names_in(tmp.path() / "SATs_T20_61p_TwD_2015-03") ==
          std::set<std::string>{"SATs_LIST_UNIQUEs_201503.dat", "SCN_2015-03_res1m_01-31_1.dat",
                                "SCN_2015-03_res1m_01-31_1_DATES-TIMES.dat", "SCN_2015-03_res1m_01-31_2.dat",
                                "SCN_2015-03_res1m_01-31_2_DATES-TIMES.dat", "SCN_2015-03_res1m_01-31_3.dat",
                                "SCN_2015-03_res1m_01-31_3_DATES-TIMES.dat"});
    CHECK(names_in(tmp.path() / "SATs_T20_61p_TwD_SATs1h_2015-03").size() == 13);

    // DATES-TIMES row for 2015-03-01 00:01:32
    const auto dt = oracle::slurp(tmp.path() / "All_T20_61p_TwD_2015-03/SCN_2015-03_res1m_01-31_DATES-TIMES.dat");
    std::istringstream in(dt);
    double y, m, d, h, s, f;
    in >> y >> m >> d >> h >> s >> f;
    CHECK(y == 2015);
    CHECK(m == 3);
    CHECK(d == 1);
    CHECK(h == 0);
    CHECK(s == 92);
    CHECK(f == doctest::Approx(92.0 / 86400.0).epsilon(1e-8));

    // row alignment and equal fixed-width rows
    const fs::path hdir = tmp.path() / "All_T20_61p_TwD_Means1h_2015-03";
    for (const char* suffix : {"", "_DATES-TIMES", "_Nobs", "_Std"}) {
        const auto f = hdir / (std::string("SCN_2015-03_Means1h_01-31") + suffix + ".dat");
        CHECK(oracle::line_count(f) == 744);
        CHECK(fs::file_size(f) == 744 * 85);
    }
    const fs::path mdir = tmp.path() / "All_T20_61p_TwD_2015-03";
    CHECK(fs::file_size(mdir / "SCN_2015-03_res1m_01-31.dat") ==
          fs::file_size(mdir / "SCN_2015-03_res1m_01-31_DATES-TIMES.dat"));

    // re-read fidelity
    const auto back = read_dat_table(mdir, "SCN_2015-03_res1m_01-31");
    REQUIRE(back.values.size() == p.all_1m.samples.size());
    for (std::size_t i = 0; i < back.values.size(); ++i) {
        CHECK(back.times[i] == p.all_1m.samples[i].time);
        for (std::size_t c = 0; c < kParamCount; ++c) {
            const double want = p.all_1m.samples[i].values[c];
            CHECK(oracle::close_rel(back.values[i][c], want, 5e-6));
        }
    }
    const auto nobs = read_dat_table(hdir, "SCN_2015-03_Means1h_01-31", "Nobs");
    CHECK(nobs.values[0][0] == 1.0);
    CHECK(read_sat_list(tmp.path() / "SATs_T20_61p_TwD_2015-03/SATs_LIST_UNIQUEs_201503.dat") ==
          std::vector<int>{16, 18, 19});
}

TEST_CASE("writer rejects samples outside the month")
{
    oracle::TempDir tmp("cross");
    MinuteSeries s{SeriesScope::all(), {{Timestamp{2015, 4, 1, 0}, {}}}};
    CHECK_THROWS_AS(write_minute_series(tmp.path(), "x", s, kMarch), ConfigError);
}

TEST_CASE("corrected hourly files load back")
{
    oracle::TempDir tmp("reload");
    MonthBuckets b(kMarch);
    b.hours[{2015, 3, 1, 0}] = parse_scn(oracle::read_text("sample.scn")).epochs;
    b.hours[{2015, 3, 2, 5}] = parse_scn("T 15 03 02 18092\n").epochs;
    const OutputLayout L("T20", kMarch);
    const auto files = write_corrected_scn(tmp.path(), L, b);
    CHECK(files.size() == 2);
    CHECK(files[0].filename() == "50301_000000.scn");
    const auto back = load_hourly_scn_dir(tmp.path() / L.corrected_scn_folder(), kMarch);
    CHECK(back == b);
}
