#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "scinda/aggregate.hpp"

using namespace scinda;

namespace {

const DayRange kMarch = DayRange::whole_month(2015, 3);

MonthBuckets sample_buckets()
{
    MonthBuckets b(kMarch);
    b.hours[{2015, 3, 1, 0}] = parse_scn(oracle::read_text("sample.scn")).epochs;
    return b;
}

MinuteSeries series_of(std::vector<std::pair<Timestamp, double>> values, Param p = Param::L1S4)
{
    MinuteSeries s{SeriesScope::all(), {}};
    for (auto [t, v] : values) {
        MinuteSample m{t, {}};
        m.values[p] = v;
        s.samples.push_back(m);
    }
    return s;
}

} // namespace

TEST_CASE("per-PRN split of the two-epoch sample")
{
    const auto tracks = split_per_prn(sample_buckets(), {});
    CHECK(sat_list(tracks) == std::vector<int>{16, 18, 19, 21, 22, 27, 31, 120, 126});
    REQUIRE(tracks.at(16).size() == 2);
    CHECK(tracks.at(16)[0].time.utsec == 32);
    CHECK(tracks.at(16)[1].time.utsec == 92);
    CHECK(tracks.at(22).size() == 1);
    for (const auto& [prn, track] : tracks)
        for (const auto& s : track) {
            REQUIRE(s.epoch.observations.size() == 1);
            CHECK(s.epoch.observations[0].prn == prn);
        }
}

TEST_CASE("per-PRN split of the PRN 16 track reproduces the file")
{
    const std::string track = oracle::read_text("prn16_track.scn");
    MonthBuckets b(kMarch);
    b.hours[{2015, 3, 1, 0}] = parse_scn(track).epochs;
    const auto tracks = split_per_prn(b, {});
    REQUIRE(tracks.size() == 1);
    std::vector<ScnEpoch> epochs;
    for (const auto& s : tracks.at(16))
        epochs.push_back(s.epoch);
    CHECK(serialize_scn(epochs) == track);
    CHECK(epochs.front().header.utsec == 32);
    CHECK(epochs.back().header.utsec == 452);
}

TEST_CASE("empty month")
{
    const MonthBuckets empty(kMarch);
    CHECK(split_per_prn(empty, {}).empty());
    CHECK(build_all_series(empty, {}).samples.empty());
}

TEST_CASE("satellite average of the sample first epoch")
{
    const auto epoch = parse_scn(oracle::read_text("sample.scn")).epochs.at(0);
    const auto avg = average_over_satellites(epoch, {});
    // hand sums: 0.79 / 9 and 186.6 / 7
    CHECK(std::abs(avg[Param::L1S4] - 0.087778) <= 1e-6);
    CHECK(std::abs(avg[Param::TECP] - 26.657) <= 1e-3);
    CHECK(std::abs(avg[Param::TECP] - 186.6 / 7.0) <= 1e-12);

    // strict mode lets the zero-filled SBAS rows in
    ValidityPolicy strict;
    strict.mode = ValidityPolicy::Mode::Strict;
    CHECK(std::abs(average_over_satellites(epoch, strict)[Param::TECP] - 186.6 / 9.0) <= 1e-12);

    // SBAS exclusion does not change L2 columns, only L1S4
    ValidityPolicy no_sbas;
    no_sbas.exclude_sbas = true;
    const auto a2 = average_over_satellites(epoch, no_sbas);
    CHECK(std::abs(a2[Param::L1S4] - 0.63 / 7.0) <= 1e-12);
    CHECK(a2[Param::TECP] == avg[Param::TECP]);

    ValidityPolicy high;
    high.min_elevation = 40.0;
    const auto a3 = average_over_satellites(epoch, high);
    // rows with EL >= 40: PRN 16 (58.7), 21 (55.6), 27 (43.0), 120 (44.8)
    CHECK(std::abs(a3[Param::L1S4] - (0.03 + 0.05 + 0.07 + 0.05) / 4.0) <= 1e-12);
}

TEST_CASE("average of a single valid observation is that observation")
{
    const auto e = parse_scn("T 15 03 01 00092\n323.6 59.2 0.04 100 0.02 100 16.8 -32.659 8.87 14.5 134 16\n")
                       .epochs.at(0);
    const auto a = average_over_satellites(e, {});
    CHECK(a[Param::L1S4] == 0.04);
    CHECK(a[Param::L2S4] == 0.02);
    CHECK(a[Param::TECP] == 16.8);
    CHECK(a[Param::TECF] == -32.659);
    CHECK(a[Param::ROTI] == 8.87);
    CHECK(a[Param::TECR] == 14.5);
}

TEST_CASE("no valid contributors gives missing")
{
    ScnEpoch e;
    e.header = {'T', 15, 3, 1, 32};
    const auto a = average_over_satellites(e, {});
    for (Param p : kAllParams)
        CHECK(is_missing(a[p]));
}

TEST_CASE("ALL series from the two-epoch sample")
{
    const auto s = build_all_series(sample_buckets(), {});
    REQUIRE(s.samples.size() == 2);
    CHECK(s.samples[0].time.utsec == 32);
    CHECK(s.samples[1].time.utsec == 92);
    CHECK(s.scope.is_all());
}

TEST_CASE("hourly stats")
{
    const DayRange day(2015, 3, 1, 1);
    SUBCASE("textbook values")
    {
        const auto st = hourly_stats(series_of({{{2015, 3, 1, 60}, 1.0}, {{2015, 3, 1, 120}, 2.0},
                                               {{2015, 3, 1, 180}, 3.0}}),
                                     day);
        REQUIRE(st.rows.size() == 24);
        CHECK(st.rows[0].mean[Param::L1S4] == doctest::Approx(2.0));
        CHECK(st.rows[0].std[Param::L1S4] == doctest::Approx(1.0));
        CHECK(st.rows[0].nobs[0] == 3);
        CHECK(st.rows[0].time == Timestamp{2015, 3, 1, 0});
        CHECK(st.rows[5].time == Timestamp{2015, 3, 1, 5 * 3600});
        // other columns were missing in every sample
        CHECK(st.rows[0].nobs[1] == 0);
        CHECK(is_missing(st.rows[0].mean[Param::L2S4]));
    }
    SUBCASE("single sample")
    {
        const auto st = hourly_stats(series_of({{{2015, 3, 1, 3700}, 4.0}}), day);
        CHECK(st.rows[1].nobs[0] == 1);
        CHECK(st.rows[1].mean[Param::L1S4] == 4.0);
        CHECK(is_missing(st.rows[1].std[Param::L1S4]));
    }
    SUBCASE("empty hour")
    {
        const auto st = hourly_stats(series_of({}), day);
        REQUIRE(st.rows.size() == 24);
        CHECK(st.rows[7].nobs[0] == 0);
        CHECK(is_missing(st.rows[7].mean[Param::L1S4]));
        CHECK(is_missing(st.rows[7].std[Param::L1S4]));
    }
}

TEST_CASE("property: aggregation matches brute force from raw rows")
{
    oracle::EpochGenerator gen(99);
    const DayRange range(2015, 3, 1, 2);
    for (int round = 0; round < 20; ++round) {
        MonthBuckets b(range);
        for (int h = 0; h < 48; ++h) {
            auto& bucket = b.hours[{2015, 3, 1 + h / 24, h % 24}];
            for (int m = 0; m < 60; m += gen.integer(1, 7)) {
                auto e = gen.epoch(10);
                e.header = {'T', 15, 3, 1 + h / 24, (h % 24) * 3600 + m * 60 + 32};
                bucket.push_back(e);
            }
        }
        const auto series = build_all_series(b, {});
        const auto stats = hourly_stats(series, range);

        std::size_t idx = 0;
        std::vector<std::array<std::vector<double>, 6>> per_hour(48);
        for (const auto& [key, epochs] : b.hours)
            for (const auto& e : epochs) {
                const auto rows = oracle::rows_from_text(serialize_scn({e}));
                const auto& got = series.samples.at(idx++).values;
                for (int c = 0; c < 6; ++c) {
                    const double want = oracle::naive_column_mean(rows, c);
                    CHECK(oracle::close_rel(got[static_cast<std::size_t>(c)], want, 1e-9));
                    if (!std::isnan(want))
                        per_hour[static_cast<std::size_t>((key.day - 1) * 24 + key.hour)][c].push_back(want);
                }
                // permutation invariance
                auto shuffled = e;
                std::shuffle(shuffled.observations.begin(), shuffled.observations.end(), gen.engine());
                const auto again = average_over_satellites(shuffled, {});
                for (std::size_t c = 0; c < 6; ++c)
                    CHECK(oracle::close_rel(again[c], got[c], 1e-12));
            }
        for (std::size_t h = 0; h < 48; ++h)
            for (int c = 0; c < 6; ++c) {
                const auto want = oracle::naive_mean_std(per_hour[h][c]);
                const auto& row = stats.rows[h];
                CHECK(row.nobs[static_cast<std::size_t>(c)] == want.n);
                CHECK(oracle::close_rel(row.mean[static_cast<std::size_t>(c)], want.mean, 1e-9));
                CHECK(oracle::close_rel(row.std[static_cast<std::size_t>(c)], want.std, 1e-9));
            }
    }
}

TEST_CASE("property: single valid satellite makes ALL equal per-PRN")
{
    oracle::EpochGenerator gen(5);
    for (int round = 0; round < 200; ++round) {
        auto e = gen.epoch(6);
        e.header = {'T', 15, 3, 1, 32};
        MonthBuckets b(kMarch);
        b.hours[{2015, 3, 1, 0}] = {e};
        const auto all = build_all_series(b, {});
        const auto tracks = split_per_prn(b, {});
        for (Param p : kAllParams) {
            std::vector<int> valid;
            for (const auto& o : e.observations)
                if (ValidityPolicy{}.contributes(o, p))
                    valid.push_back(o.prn);
            if (valid.size() != 1)
                continue;
            const auto ps = prn_series(valid[0], tracks.at(valid[0]), {});
            CHECK(all.samples.at(0).values[p] == ps.samples.at(0).values[p]);
        }
    }
}

TEST_CASE("property: invalidating a row leaves columns it did not feed untouched")
{
    oracle::EpochGenerator gen(8);
    for (int round = 0; round < 200; ++round) {
        auto e = gen.epoch(6);
        if (e.observations.empty())
            continue;
        const auto before = average_over_satellites(e, {});
        auto& victim = e.observations[static_cast<std::size_t>(gen.integer(0, static_cast<int>(e.observations.size()) - 1))];
        // drop L1 validity only
        victim.sam_l1 = 0;
        const auto after = average_over_satellites(e, {});
        for (Param p : {Param::L2S4, Param::TECP, Param::TECF, Param::ROTI, Param::TECR})
            CHECK(oracle::close_rel(after[p], before[p], 0.0));
    }
}

TEST_CASE("duplicate timestamps across buckets keep the first")
{
    MonthBuckets b(kMarch);
    const auto e = parse_scn("T 15 03 01 00092\n323.6 59.2 0.04 100 0.02 100 16.8 -32.659 8.87 14.5 134 16\n")
                       .epochs.at(0);
    b.hours[{2015, 3, 1, 0}] = {e};
    b.hours[{2015, 3, 1, 1}] = {e};
    std::size_t dups = 0;
    CHECK(stamp_epochs(b, &dups).size() == 1);
    CHECK(dups == 1);
}

TEST_CASE("malformed epochs are stamped from their bucket")
{
    MonthBuckets b(kMarch);
    b.hours[{2015, 3, 4, 2}] =
        parse_scn("T -20 03 04 07292\n323.6 59.2 0.04 100 0.02 100 16.8 -32.659 8.87 14.5 134 16\n").epochs;
    const auto s = build_all_series(b, {});
    REQUIRE(s.samples.size() == 1);
    CHECK(s.samples[0].time == Timestamp{2015, 3, 4, 7292});
}

TEST_CASE("ROTI diagnostic runs over tracks")
{
    MonthBuckets b(kMarch);
    b.hours[{2015, 3, 1, 0}] = parse_scn(oracle::read_text("prn16_track.scn")).epochs;
    const auto chk = roti_tecr_diagnostic(split_per_prn(b, {}));
    CHECK(chk.pairs == 7);
    CHECK(chk.mean_roti > 0.0);
}
