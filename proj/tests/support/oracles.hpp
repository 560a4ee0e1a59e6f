#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// being checked: rows are re-read from text with iostreams and statistics use
// plain two-pass loops.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "scinda/scn.hpp"

namespace oracle {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("scinda_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t line_count(const std::filesystem::path& p)
{
    const auto s = slurp(p);
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

inline std::string read_text(const std::string& name)
{
    std::ifstream in(std::string(SCINDA_TEST_DATA_DIR) + "/" + name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RawRow {
    std::array<double, 12> f{};   // AZ EL L1S4 SAM1 L2S4 SAM2 TECP TECF ROTI TECR N PRN
};

/// Re-reads observation rows from their text form.
inline std::vector<RawRow> rows_from_text(const std::string& text)
{
    std::vector<RawRow> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (toks.size() != 12)
            continue;
        RawRow r;
        for (int i = 0; i < 12; ++i)
            r.f[i] = std::stod(toks[i]);
        rows.push_back(r);
    }
    return rows;
}

// Output column -> raw row field.
inline constexpr std::array<int, 6> kColumnField{2, 4, 6, 7, 8, 9};

/// Mean over rows of one output column under the default policy
/// (L1S4 needs SAM1 > 0, others need SAM2 > 0) or include-everything.
inline double naive_column_mean(const std::vector<RawRow>& rows, int column, bool strict = false)
{
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows) {
        const double sam = column == 0 ? r.f[3] : r.f[5];
        if (!strict && !(sam > 0))
            continue;
        sum += r.f[kColumnField[column]];
        ++n;
    }
    return n == 0 ? std::nan("") : sum / n;
}

struct MeanStd {
    int n = 0;
    double mean = std::nan("");
    double std = std::nan("");
};

/// Two-pass mean and sample standard deviation.
inline MeanStd naive_mean_std(const std::vector<double>& xs)
{
    MeanStd r;
    r.n = static_cast<int>(xs.size());
    if (r.n == 0)
        return r;
    double s = 0.0;
    for (double x : xs)
        s += x;
    r.mean = s / r.n;
    if (r.n < 2)
        return r;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / (r.n - 1));
    return r;
}

inline bool close_rel(double a, double b, double rel)
{
    if (std::isnan(a) || std::isnan(b))
        return std::isnan(a) && std::isnan(b);
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
}

/// Random well-formed epochs with values quantised to the on-disk decimals.
class EpochGenerator {
public:
    explicit EpochGenerator(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double decimal(int lo, int hi, int scale) { return integer(lo, hi) / static_cast<double>(scale); }

    scinda::SatObservation observation(int prn)
    {
        scinda::SatObservation o;
        o.az = decimal(0, 3599, 10);
        o.el = decimal(-900, 900, 10);
        o.l1s4 = decimal(0, 150, 100);
        o.sam_l1 = integer(0, 100);
        o.l2s4 = decimal(0, 150, 100);
        o.sam_l2 = integer(0, 4) == 0 ? 0 : integer(1, 100);
        if (o.sam_l2 == 0) {
            o.tecf = -0.0;
        } else {
            o.tecp = decimal(-500, 900, 10);
            o.tecf = decimal(-150000, 150000, 1000);
            o.roti = decimal(0, 2000, 100);
            o.tecr = decimal(-500, 900, 10);
            o.n_slip = integer(0, 3000);
        }
        o.prn = prn;
        return o;
    }

    scinda::ScnEpoch epoch(int max_obs = 12)
    {
        scinda::ScnEpoch e;
        e.header.marker = static_cast<char>('A' + integer(0, 25));
        e.header.year2 = integer(0, 99);
        e.header.month = integer(1, 12);
        e.header.day = integer(1, 28);
        e.header.utsec = integer(0, 86399);
        const int n = integer(0, max_obs);
        std::vector<int> prns;
        while (static_cast<int>(prns.size()) < n) {
            const int p = integer(0, 3) == 0 ? integer(100, 140) : integer(1, 32);
            if (std::find(prns.begin(), prns.end(), p) == prns.end())
                prns.push_back(p);
        }
        for (int p : prns)
            e.observations.push_back(observation(p));
        return e;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
