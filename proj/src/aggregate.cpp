#include "scinda/aggregate.hpp"

#include <algorithm>

namespace scinda {

bool ParamVector::same_as(const ParamVector& other) const noexcept
{
    for (std::size_t i = 0; i < kParamCount; ++i) {
        const double a = values[i];
        const double b = other.values[i];
        if (is_missing(a) != is_missing(b))
            return false;
        if (!is_missing(a) && a != b)
            return false;
    }
    return true;
}

double param_value(const SatObservation& o, Param p) noexcept
{
    switch (p) {
    case Param::L1S4: return o.l1s4;
    case Param::L2S4: return o.l2s4;
    case Param::TECP: return o.tecp;
    case Param::TECF: return o.tecf;
    case Param::ROTI: return o.roti;
    case Param::TECR: return o.tecr;
    }
    return kMissing;
}

bool ValidityPolicy::accepts_row(const SatObservation& o) const noexcept
{
    if (exclude_sbas && o.prn >= 100)
        return false;
    if (min_elevation && o.el < *min_elevation)
        return false;
    return true;
}

bool ValidityPolicy::contributes(const SatObservation& o, Param p) const noexcept
{
    if (!accepts_row(o))
        return false;
    if (mode == Mode::Strict)
        return true;
    return p == Param::L1S4 ? o.sam_l1 > 0 : o.sam_l2 > 0;
}

ParamVector observation_values(const SatObservation& o, const ValidityPolicy& policy)
{
    ParamVector v;
    for (Param p : kAllParams)
        if (policy.contributes(o, p))
            v[p] = param_value(o, p);
    return v;
}

ParamVector average_over_satellites(const ScnEpoch& epoch, const ValidityPolicy& policy)
{
    ParamVector out;
    for (Param p : kAllParams) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& o : epoch.observations) {
            if (!policy.contributes(o, p))
                continue;
            sum += param_value(o, p);
            ++n;
        }
        if (n > 0)
            out[p] = sum / static_cast<double>(n);
    }
    return out;
}

std::vector<StampedEpoch> stamp_epochs(const MonthBuckets& buckets, std::size_t* duplicates)
{
    std::vector<StampedEpoch> out;
    out.reserve(buckets.epoch_count());
    for (const auto& [key, epochs] : buckets.hours)
        for (const auto& e : epochs)
            out.push_back({effective_timestamp(e, key), e});
    std::stable_sort(out.begin(), out.end(),
                     [](const StampedEpoch& a, const StampedEpoch& b) { return a.time < b.time; });
    auto last = std::unique(out.begin(), out.end(),
                            [](const StampedEpoch& a, const StampedEpoch& b) { return a.time == b.time; });
    if (duplicates)
        *duplicates = static_cast<std::size_t>(out.end() - last);
    out.erase(last, out.end());
    return out;
}

PrnTracks split_per_prn(const MonthBuckets& buckets, const ValidityPolicy& policy)
{
    PrnTracks tracks;
    for (const auto& s : stamp_epochs(buckets)) {
        for (const auto& o : s.epoch.observations) {
            if (!policy.accepts_row(o))
                continue;
            StampedEpoch single{s.time, ScnEpoch{s.epoch.header, {o}, s.epoch.malformed, s.epoch.raw_header}};
            tracks[o.prn].push_back(std::move(single));
        }
    }
    return tracks;
}

std::vector<int> sat_list(const PrnTracks& tracks)
{
    std::vector<int> prns;
    prns.reserve(tracks.size());
    for (const auto& [prn, track] : tracks)
        prns.push_back(prn);
    return prns;
}

MinuteSeries prn_series(int prn, const std::vector<StampedEpoch>& track, const ValidityPolicy& policy)
{
    MinuteSeries series{SeriesScope::of(prn), {}};
    series.samples.reserve(track.size());
    for (const auto& s : track)
        for (const auto& o : s.epoch.observations)
            if (o.prn == prn)
                series.samples.push_back({s.time, observation_values(o, policy)});
    return series;
}

MinuteSeries build_all_series(const MonthBuckets& buckets, const ValidityPolicy& policy)
{
    MinuteSeries series{SeriesScope::all(), {}};
    const auto stamped = stamp_epochs(buckets);
    series.samples.reserve(stamped.size());
    for (const auto& s : stamped)
        series.samples.push_back({s.time, average_over_satellites(s.epoch, policy)});
    return series;
}

namespace {

// Welford running mean / variance.
struct Accumulator {
    int n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) noexcept
    {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
};

} // namespace

HourlyStats hourly_stats(const MinuteSeries& series, const DayRange& range)
{
    const std::size_t hours = static_cast<std::size_t>(range.hour_count());
    std::vector<std::array<Accumulator, kParamCount>> acc(hours);

    for (const auto& s : series.samples) {
        if (!range.contains(s.time))
            continue;
        const auto idx = static_cast<std::size_t>((s.time.day - range.first_day()) * 24 + s.time.hour());
        for (std::size_t c = 0; c < kParamCount; ++c)
            if (!is_missing(s.values[c]))
                acc[idx][c].add(s.values[c]);
    }

    HourlyStats out{series.scope, {}};
    out.rows.reserve(hours);
    for (std::size_t i = 0; i < hours; ++i) {
        HourlyRow row;
        const int day = range.first_day() + static_cast<int>(i / 24);
        row.time = Timestamp::at_hour({range.year(), range.month(), day, static_cast<int>(i % 24)});
        for (std::size_t c = 0; c < kParamCount; ++c) {
            const auto& a = acc[i][c];
            row.nobs[c] = a.n;
            if (a.n >= 1)
                row.mean[c] = a.mean;
            if (a.n >= 2)
                row.std[c] = std::sqrt(a.m2 / (a.n - 1));
        }
        out.rows.push_back(row);
    }
    return out;
}

RotiCheck roti_tecr_diagnostic(const PrnTracks& tracks)
{
    RotiCheck chk;
    double sum_roti = 0.0;
    double sum_dtecr = 0.0;
    for (const auto& [prn, track] : tracks) {
        for (std::size_t i = 1; i < track.size(); ++i) {
            const auto& a = track[i - 1];
            const auto& b = track[i];
            const long long dt = b.time.unix_seconds() - a.time.unix_seconds();
            if (dt <= 0 || dt > 120)
                continue;
            const auto& oa = a.epoch.observations.front();
            const auto& ob = b.epoch.observations.front();
            if (oa.sam_l2 == 0 || ob.sam_l2 == 0)
                continue;
            sum_roti += ob.roti;
            sum_dtecr += std::abs(ob.tecr - oa.tecr) / (static_cast<double>(dt) / 60.0);
            ++chk.pairs;
        }
    }
    if (chk.pairs > 0) {
        chk.mean_roti = sum_roti / static_cast<double>(chk.pairs);
        chk.mean_dtecr = sum_dtecr / static_cast<double>(chk.pairs);
    }
    return chk;
}

} // namespace scinda
