#include "scinda/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <json.hpp>

#include "scinda/corpus_io.hpp"
#include "scinda/error.hpp"
#include "scinda/gzip.hpp"
#include "scinda/scn.hpp"

namespace scinda {

namespace {

// std distributions are implementation-defined; draw straight from the engine
// so a seed gives the same corpus everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 eng_;
};

double q(double v, double scale) { return std::round(v * scale) / scale; }

struct Track {
    int prn;
    bool sbas;
    double az0, az_rate;       // deg, deg/hour
    double el_mid, el_amp, el_phase;
    double tec_base, tec_amp;
    double tecf_offset;
};

SatObservation observe(const Track& t, double hours_since_start, int n_slip, Rng& rng)
{
    SatObservation o;
    o.prn = t.prn;
    double az = std::fmod(t.az0 + t.az_rate * hours_since_start, 360.0);
    if (az < 0)
        az += 360.0;
    o.az = q(az, 10);
    if (o.az >= 360.0)
        o.az = 0.0;
    o.el = q(std::clamp(t.el_mid + t.el_amp * std::sin(hours_since_start * 0.26 + t.el_phase), 5.0, 89.0), 10);
    o.l1s4 = q(rng.uniform(0.02, 0.25), 100);
    o.sam_l1 = rng.uniform() < 0.97 ? 100 : 90 + static_cast<int>(rng.index(10));
    if (t.sbas) {
        o.l2s4 = 0.0;
        o.sam_l2 = 0;
        o.tecp = 0.0;
        o.tecf = -0.0;
        o.roti = 0.0;
        o.tecr = 0.0;
        o.n_slip = 0;
        return o;
    }
    const double diurnal = std::sin((hours_since_start - 6.0) / 24.0 * 2.0 * std::numbers::pi);
    const double tec = t.tec_base + t.tec_amp * std::max(diurnal, -0.4);
    o.l2s4 = q(rng.uniform(0.02, 0.35), 100);
    o.sam_l2 = rng.uniform() < 0.95 ? 100 : 80 + static_cast<int>(rng.index(20));
    o.tecr = q(tec + rng.uniform(-0.3, 0.3), 10);
    o.tecp = q(tec + rng.uniform(-4.0, 4.0), 10);
    o.tecf = q(tec + t.tecf_offset + rng.uniform(-0.05, 0.05), 1000);
    o.roti = q(rng.uniform(0.5, 12.0), 100);
    o.n_slip = n_slip;
    return o;
}

std::size_t exact_count(double rate, std::size_t total)
{
    if (!(rate >= 0.0 && rate <= 1.0))
        throw ConfigError("defect rates must lie in [0, 1]");
    return static_cast<std::size_t>(std::llround(rate * static_cast<double>(total)));
}

} // namespace

std::string SynthManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["month"] = month;
    j["files"] = files;
    j["epochs"] = epochs;
    j["counts"] = {{"T20", t20}, {"61p", p61}, {"TwD", twd}};
    j["prns"] = prns;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : defects) {
        nlohmann::ordered_json e;
        e["kind"] = d.kind;
        e["file"] = {d.file.year, d.file.month, d.file.day, d.file.hour};
        e["utsec"] = d.utsec;
        arr.push_back(std::move(e));
    }
    j["defects"] = std::move(arr);
    return j.dump(2) + "\n";
}

SynthManifest SynthManifest::from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    SynthManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.month = j.at("month").get<std::string>();
    m.files = j.at("files").get<std::size_t>();
    m.epochs = j.at("epochs").get<std::size_t>();
    m.t20 = j.at("counts").at("T20").get<std::size_t>();
    m.p61 = j.at("counts").at("61p").get<std::size_t>();
    m.twd = j.at("counts").at("TwD").get<std::size_t>();
    m.prns = j.at("prns").get<std::vector<int>>();
    for (const auto& e : j.at("defects")) {
        const auto f = e.at("file").get<std::vector<int>>();
        m.defects.push_back({e.at("kind").get<std::string>(), {f.at(0), f.at(1), f.at(2), f.at(3)},
                             e.at("utsec").get<int>()});
    }
    return m;
}

SynthManifest make_synthetic_corpus(const std::filesystem::path& root, const SynthConfig& cfg)
{
    if (cfg.epochs_per_hour < 1 || cfg.epochs_per_hour > 60)
        throw ConfigError("epochs_per_hour must lie in 1..60");
    if (cfg.gps_satellites < 1 || cfg.gps_satellites > 32)
        throw ConfigError("gps_satellites must lie in 1..32");

    Rng rng(cfg.seed);
    const DayRange& range = cfg.range;
    const int hours = range.hour_count();
    const int per_hour = cfg.epochs_per_hour;
    const int step = 3600 / per_hour;
    const std::size_t total = static_cast<std::size_t>(hours) * static_cast<std::size_t>(per_hour);

    // Satellites
    std::vector<int> gps(32);
    std::iota(gps.begin(), gps.end(), 1);
    rng.shuffle(gps);
    gps.resize(static_cast<std::size_t>(cfg.gps_satellites));
    std::sort(gps.begin(), gps.end());
    std::vector<Track> tracks;
    for (int prn : gps)
        tracks.push_back({prn, false, rng.uniform(0, 360), rng.uniform(-15, 15), rng.uniform(25, 60),
                          rng.uniform(5, 20), rng.uniform(0, 6.28), rng.uniform(8, 25), rng.uniform(4, 15),
                          rng.uniform(-120, -5)});
    if (cfg.include_sbas) {
        tracks.push_back({120, true, 190.1, 0.0, 44.8, 0.0, 0.0, 0, 0, 0});
        tracks.push_back({126, true, 132.4, 0.0, 32.9, 0.0, 0.0, 0, 0, 0});
    }

    // Epoch grid: hour index h, slot s.
    const auto epoch_id = [&](int h, int s) { return static_cast<std::size_t>(h) * per_hour + s; };

    // 61p candidates: first epoch of every hour but the first.
    std::vector<std::size_t> cand61;
    for (int h = 1; h < hours; ++h)
        cand61.push_back(epoch_id(h, 0));
    rng.shuffle(cand61);
    const std::size_t n61 = std::min(exact_count(cfg.rates.p61, total), cand61.size());
    std::vector<char> kind(total, 0);   // 0 none, 1 T20, 2 61p, 3 TwD
    for (std::size_t i = 0; i < n61; ++i)
        kind[cand61[i]] = 2;

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < total; ++i)
        if (kind[i] == 0)
            rest.push_back(i);
    rng.shuffle(rest);
    const std::size_t nt20 = std::min(exact_count(cfg.rates.t20, total), rest.size());
    const std::size_t ntwd = std::min(exact_count(cfg.rates.twd, total), rest.size() - nt20);
    for (std::size_t i = 0; i < nt20; ++i)
        kind[rest[i]] = 1;
    for (std::size_t i = nt20; i < nt20 + ntwd; ++i)
        kind[rest[i]] = 3;

    // Build every epoch in time order.
    std::vector<ScnEpoch> epochs(total);
    std::vector<int> slips(tracks.size());
    for (std::size_t i = 0; i < tracks.size(); ++i)
        slips[i] = static_cast<int>(rng.index(300));
    for (int h = 0; h < hours; ++h) {
        const int day = range.first_day() + h / 24;
        for (int s = 0; s < per_hour; ++s) {
            const int utsec = (h % 24) * 3600 + s * step + std::min(32, step - 1);
            ScnEpoch& e = epochs[epoch_id(h, s)];
            e.header = {'T', range.year() % 100, range.month(), day, utsec};
            const double t_hours = h + (s * step + 32) / 3600.0;
            for (std::size_t k = 0; k < tracks.size(); ++k) {
                if (!tracks[k].sbas)
                    slips[k] = rng.uniform() < 0.002 ? 0 : slips[k] + 1;
                e.observations.push_back(observe(tracks[k], t_hours, slips[k], rng));
            }
        }
    }

    SynthManifest man;
    man.seed = cfg.seed;
    man.month = range.month_tag();
    man.epochs = total;
    man.t20 = nt20;
    man.p61 = n61;
    man.twd = ntwd;
    for (const auto& t : tracks)
        man.prns.push_back(t.prn);
    std::sort(man.prns.begin(), man.prns.end());

    // Assemble hourly files.
    std::vector<std::vector<ScnEpoch>> files(static_cast<std::size_t>(hours));
    std::vector<HourKey> keys(static_cast<std::size_t>(hours));
    for (int h = 0; h < hours; ++h)
        keys[static_cast<std::size_t>(h)] = {range.year(), range.month(), range.first_day() + h / 24, h % 24};
    for (int h = 0; h < hours; ++h) {
        for (int s = 0; s < per_hour; ++s) {
            const std::size_t id = epoch_id(h, s);
            ScnEpoch e = epochs[id];
            int target = h;
            switch (kind[id]) {
            case 1: {
                char buf[48];
                std::snprintf(buf, sizeof buf, "%c -20 %02d %02d %05d", e.header.marker, e.header.month,
                              e.header.day, e.header.utsec);
                e.malformed = true;
                e.raw_header = buf;
                e.header.year2 = -20;
                man.defects.push_back({"T20", keys[static_cast<std::size_t>(h)], e.header.utsec});
                break;
            }
            case 2:
                target = h - 1;
                man.defects.push_back({"61p", keys[static_cast<std::size_t>(target)], e.header.utsec});
                break;
            case 3:
                e.observations.clear();
                man.defects.push_back({"TwD", keys[static_cast<std::size_t>(h)], e.header.utsec});
                break;
            default:
                break;
            }
            files[static_cast<std::size_t>(target)].push_back(std::move(e));
        }
    }
    std::sort(man.defects.begin(), man.defects.end(), [](const InjectedDefect& a, const InjectedDefect& b) {
        return std::tie(a.file, a.utsec, a.kind) < std::tie(b.file, b.utsec, b.kind);
    });

    for (int h = 0; h < hours; ++h) {
        const HourKey& k = keys[static_cast<std::size_t>(h)];
        const RawFileKey rk{k.year, k.month, k.day, k.hour, RawExt::scn};
        const auto dir = root / rk.relative_dir();
        std::filesystem::create_directories(dir);
        gz::write_file(dir / rk.file_name(cfg.year_digits), gz::compress(serialize_scn(files[static_cast<std::size_t>(h)])));
        ++man.files;
    }
    std::filesystem::create_directories(root);
    gz::write_file(root / "manifest.json", man.to_json());
    return man;
}

} // namespace scinda
