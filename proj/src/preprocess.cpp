#include "scinda/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scinda/error.hpp"

namespace scinda {

StageSet StageSet::parse(std::string_view csv)
{
    StageSet s;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string_view::npos)
            comma = csv.size();
        std::string tok;
        for (char c : csv.substr(pos, comma - pos))
            if (!std::isspace(static_cast<unsigned char>(c)))
                tok += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        pos = comma + 1;
        if (tok.empty() || tok == "none")
            continue;
        if (tok == "t20")
            s.t20 = true;
        else if (tok == "61p")
            s.p61 = true;
        else if (tok == "twd")
            s.twd = true;
        else if (tok == "all")
            s = all();
        else
            throw ConfigError("unknown preprocessing stage '" + tok + "' (expected t20, 61p, twd)");
    }
    return s;
}

std::string StageSet::label() const
{
    if (empty())
        return "RAW";
    std::string s;
    const auto add = [&](const char* t) {
        if (!s.empty())
            s += '_';
        s += t;
    };
    if (t20)
        add("T20");
    if (p61)
        add("61p");
    if (twd)
        add("TwD");
    return s;
}

std::size_t MonthBuckets::epoch_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [key, epochs] : hours)
        n += epochs.size();
    return n;
}

CorrectionLog& CorrectionLog::operator+=(const CorrectionLog& o)
{
    t20_removed += o.t20_removed;
    moved_61p.insert(moved_61p.end(), o.moved_61p.begin(), o.moved_61p.end());
    twd_removed += o.twd_removed;
    dropped_out_of_range.insert(dropped_out_of_range.end(), o.dropped_out_of_range.begin(),
                                o.dropped_out_of_range.end());
    dropped_duplicates.insert(dropped_duplicates.end(), o.dropped_duplicates.begin(), o.dropped_duplicates.end());
    return *this;
}

std::string CorrectionLog::summary(const StageSet& stages) const
{
    std::ostringstream os;
    os << "stages: " << stages.label() << '\n';
    os << "T20 epochs removed (malformed header): " << t20_removed << '\n';
    os << "61p epochs moved to their own hour: " << moved_61p.size() << '\n';
    os << "61p epochs dropped (outside processed range): " << dropped_out_of_range.size() << '\n';
    os << "61p epochs dropped (duplicate UTSEC at destination): " << dropped_duplicates.size() << '\n';
    os << "TwD epochs removed (header only): " << twd_removed << '\n';
    return os.str();
}

std::string CorrectionLog::report(const StageSet& stages) const
{
    std::ostringstream os;
    os << summary(stages);
    const auto list = [&](const char* title, const std::vector<EpochMove>& moves) {
        if (moves.empty())
            return;
        os << '\n' << title << '\n';
        for (const auto& m : moves)
            os << "  " << m.from.to_string() << " -> " << m.to.to_string() << "  utsec " << m.utsec << '\n';
    };
    list("moved:", moved_61p);
    list("dropped, outside range:", dropped_out_of_range);
    list("dropped, duplicate:", dropped_duplicates);
    return os.str();
}

Timestamp effective_timestamp(const ScnEpoch& e, const HourKey& bucket)
{
    if (!e.malformed)
        return epoch_timestamp(e.header);
    Timestamp t{bucket.year, bucket.month, bucket.day, bucket.hour * kSecondsPerHour};
    if (e.header.utsec >= 0 && e.header.utsec < kSecondsPerDay)
        t.utsec = e.header.utsec;
    return t;
}

namespace {

template <class Pred>
std::size_t erase_epochs(MonthBuckets& b, Pred pred)
{
    std::size_t n = 0;
    for (auto& [key, epochs] : b.hours)
        n += std::erase_if(epochs, pred);
    return n;
}

} // namespace

CorrectionLog apply_t20(MonthBuckets& buckets)
{
    CorrectionLog log;
    log.t20_removed = erase_epochs(buckets, [](const ScnEpoch& e) { return e.malformed; });
    return log;
}

CorrectionLog apply_twd(MonthBuckets& buckets)
{
    CorrectionLog log;
    log.twd_removed = erase_epochs(buckets, [](const ScnEpoch& e) { return e.observations.empty(); });
    return log;
}

CorrectionLog apply_61p(MonthBuckets& buckets)
{
    CorrectionLog log;
    struct Stray {
        HourKey from;
        HourKey to;
        ScnEpoch epoch;
    };
    std::vector<Stray> strays;

    // Pull out every well-formed epoch filed under a foreign hour. Malformed
    // headers carry no trustworthy time and stay where they are.
    for (auto& [key, epochs] : buckets.hours) {
        auto keep = std::stable_partition(epochs.begin(), epochs.end(), [&](const ScnEpoch& e) {
            return e.malformed || epoch_timestamp(e.header).hour_key() == key;
        });
        for (auto it = keep; it != epochs.end(); ++it)
            strays.push_back({key, epoch_timestamp(it->header).hour_key(), std::move(*it)});
        epochs.erase(keep, epochs.end());
    }
    if (strays.empty())
        return log;

    std::vector<HourKey> touched;
    for (auto& s : strays) {
        const EpochMove move{s.from, s.to, s.epoch.header.utsec};
        if (!buckets.range.contains(s.to)) {
            log.dropped_out_of_range.push_back(move);
            continue;
        }
        auto& dest = buckets.hours[s.to];
        const bool taken = std::any_of(dest.begin(), dest.end(), [&](const ScnEpoch& e) {
            return !e.malformed && e.header.utsec == s.epoch.header.utsec;
        });
        if (taken) {
            log.dropped_duplicates.push_back(move);
            continue;
        }
        dest.push_back(std::move(s.epoch));
        log.moved_61p.push_back(move);
        touched.push_back(s.to);
    }
    for (const auto& key : touched) {
        auto& dest = buckets.hours[key];
        std::stable_sort(dest.begin(), dest.end(),
                         [](const ScnEpoch& a, const ScnEpoch& b) { return a.header.utsec < b.header.utsec; });
    }
    return log;
}

PreprocessResult preprocess_month(MonthBuckets buckets, const StageSet& stages)
{
    CorrectionLog log;
    if (stages.t20)
        log += apply_t20(buckets);
    if (stages.p61)
        log += apply_61p(buckets);
    if (stages.twd)
        log += apply_twd(buckets);
    return {std::move(buckets), std::move(log)};
}

} // namespace scinda
