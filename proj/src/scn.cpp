#include "scinda/scn.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "scinda/error.hpp"

namespace scinda {

namespace {

constexpr std::size_t kRowTokens = 12;
constexpr std::size_t kHeaderTokens = 5;

std::vector<std::string_view> tokenize(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j]))
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<double> to_real(std::string_view tok)
{
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<int> to_int(std::string_view tok)
{
    int v = 0;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc{} || ptr != last)
        return std::nullopt;
    return v;
}

bool all_digits(std::string_view tok, std::size_t min_len, std::size_t max_len)
{
    if (tok.size() < min_len || tok.size() > max_len)
        return false;
    for (char c : tok)
        if (c < '0' || c > '9')
            return false;
    return true;
}

bool is_marker(std::string_view tok)
{
    return tok.size() == 1 && tok[0] >= 'A' && tok[0] <= 'Z';
}

std::string join(const std::vector<std::string_view>& toks)
{
    std::string s;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i)
            s += ' ';
        s += toks[i];
    }
    return s;
}

// Returns the header and whether it validated.
ScnEpoch read_header(const std::vector<std::string_view>& toks)
{
    ScnEpoch e;
    e.header.marker = toks[0][0];
    const auto field = [&](std::size_t i) -> std::string_view { return i < toks.size() ? toks[i] : std::string_view{}; };
    const auto best_effort = [](std::string_view t) { return to_int(t).value_or(-1); };

    e.header.year2 = best_effort(field(1));
    e.header.month = best_effort(field(2));
    e.header.day = best_effort(field(3));
    e.header.utsec = best_effort(field(4));

    bool ok = toks.size() == kHeaderTokens && all_digits(field(1), 2, 2) && all_digits(field(2), 1, 2) &&
              all_digits(field(3), 1, 2) && all_digits(field(4), 1, 5);
    if (ok) {
        ok = is_valid_date(2000 + e.header.year2, e.header.month, e.header.day) && e.header.utsec >= 0 &&
             e.header.utsec < kSecondsPerDay;
    }
    if (!ok) {
        e.malformed = true;
        e.raw_header = join(toks);
    }
    return e;
}

std::optional<SatObservation> read_row(const std::vector<std::string_view>& t, std::string& why)
{
    SatObservation o;
    struct RealField {
        double SatObservation::*member;
        const char* name;
    };
    static constexpr std::array<std::pair<std::size_t, RealField>, 8> reals{{
        {0, {&SatObservation::az, "AZ"}},
        {1, {&SatObservation::el, "EL"}},
        {2, {&SatObservation::l1s4, "L1S4"}},
        {4, {&SatObservation::l2s4, "L2S4"}},
        {6, {&SatObservation::tecp, "TECP"}},
        {7, {&SatObservation::tecf, "TECF"}},
        {8, {&SatObservation::roti, "ROTI"}},
        {9, {&SatObservation::tecr, "TECR"}},
    }};
    for (const auto& [idx, f] : reals) {
        auto v = to_real(t[idx]);
        if (!v) {
            why = std::string("non-numeric ") + f.name + " '" + std::string(t[idx]) + "'";
            return std::nullopt;
        }
        o.*(f.member) = *v;
    }
    struct IntField {
        int SatObservation::*member;
        const char* name;
    };
    static constexpr std::array<std::pair<std::size_t, IntField>, 4> ints{{
        {3, {&SatObservation::sam_l1, "%SAM(L1)"}},
        {5, {&SatObservation::sam_l2, "%SAM(L2)"}},
        {10, {&SatObservation::n_slip, "N"}},
        {11, {&SatObservation::prn, "PRN"}},
    }};
    for (const auto& [idx, f] : ints) {
        auto v = to_int(t[idx]);
        if (!v) {
            why = std::string("non-integer ") + f.name + " '" + std::string(t[idx]) + "'";
            return std::nullopt;
        }
        o.*(f.member) = *v;
    }
    why = check_observation(o);
    if (!why.empty())
        return std::nullopt;
    return o;
}

} // namespace

ParseReport& ParseReport::operator+=(const ParseReport& other)
{
    epochs_ok += other.epochs_ok;
    epochs_malformed += other.epochs_malformed;
    observation_lines += other.observation_lines;
    lines_skipped += other.lines_skipped;
    total_lines += other.total_lines;
    diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
    return *this;
}

std::string check_observation(const SatObservation& o)
{
    if (!(o.az >= 0.0 && o.az < 360.0))
        return "AZ outside [0, 360)";
    if (!(o.el >= -90.0 && o.el <= 90.0))
        return "EL outside [-90, 90]";
    if (!(o.l1s4 >= 0.0))
        return "negative L1S4";
    if (!(o.l2s4 >= 0.0))
        return "negative L2S4";
    if (o.sam_l1 < 0 || o.sam_l1 > 100)
        return "%SAM(L1) outside [0, 100]";
    if (o.sam_l2 < 0 || o.sam_l2 > 100)
        return "%SAM(L2) outside [0, 100]";
    if (!(o.roti >= 0.0))
        return "negative ROTI";
    if (o.n_slip < 0)
        return "negative N";
    if (o.prn <= 0)
        return "PRN must be positive";
    if (o.sam_l2 == 0 && (o.tecp != 0.0 || o.tecf != 0.0 || o.roti != 0.0 || o.tecr != 0.0 || o.n_slip != 0))
        return "%SAM(L2) is 0 but L2-derived fields are not zero-filled";
    return {};
}

ParseResult parse_scn(std::string_view text)
{
    ParseResult res;
    auto& rep = res.report;
    std::unordered_set<int> prns_in_epoch;
    std::size_t lineno = 0;
    std::size_t pos = 0;

    const auto skip = [&](std::string reason) {
        ++rep.lines_skipped;
        rep.diagnostics.push_back({lineno, std::move(reason)});
    };

    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        ++rep.total_lines;

        const auto toks = tokenize(line);
        if (toks.empty()) {
            ++rep.lines_skipped;
            continue;
        }
        if (is_marker(toks[0])) {
            ScnEpoch e = read_header(toks);
            if (e.malformed) {
                ++rep.epochs_malformed;
                rep.diagnostics.push_back({lineno, "malformed epoch header '" + e.raw_header + "'"});
            } else {
                ++rep.epochs_ok;
            }
            res.epochs.push_back(std::move(e));
            prns_in_epoch.clear();
            continue;
        }
        if (toks.size() != kRowTokens) {
            skip("expected 12 tokens, found " + std::to_string(toks.size()));
            continue;
        }
        if (res.epochs.empty()) {
            skip("observation row before the first epoch header");
            continue;
        }
        std::string why;
        auto obs = read_row(toks, why);
        if (!obs) {
            skip(std::move(why));
            continue;
        }
        if (!prns_in_epoch.insert(obs->prn).second) {
            skip("duplicate PRN " + std::to_string(obs->prn) + " within epoch");
            continue;
        }
        ++rep.observation_lines;
        res.epochs.back().observations.push_back(*obs);
    }
    return res;
}

ParseResult parse_scn(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("stream failure while reading .scn data");
    return parse_scn(std::string_view{text});
}

ParseResult parse_scn_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return parse_scn(in);
}

std::string format_header(const ScnEpoch& e)
{
    if (e.malformed)
        return e.raw_header;
    const auto& h = e.header;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%c %02d %02d %02d %05d", h.marker, h.year2, h.month, h.day, h.utsec);
    return buf;
}

std::string format_observation(const SatObservation& o)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.1f %.1f %.2f %d %.2f %d %.1f %.3f %.2f %.1f %d %d", o.az, o.el, o.l1s4,
                  o.sam_l1, o.l2s4, o.sam_l2, o.tecp, o.tecf, o.roti, o.tecr, o.n_slip, o.prn);
    return buf;
}

std::string serialize_scn(const std::vector<ScnEpoch>& epochs)
{
    std::string out;
    for (const auto& e : epochs) {
        out += format_header(e);
        out += '\n';
        for (const auto& o : e.observations) {
            out += format_observation(o);
            out += '\n';
        }
    }
    return out;
}

Timestamp epoch_timestamp(const EpochHeader& h)
{
    const int year = 2000 + h.year2;
    if (h.year2 < 0 || h.year2 > 99 || !is_valid_date(year, h.month, h.day))
        throw InvalidDate("invalid epoch date " + std::to_string(h.year2) + "-" + std::to_string(h.month) + "-" +
                          std::to_string(h.day));
    if (h.utsec < 0 || h.utsec >= kSecondsPerDay)
        throw InvalidDate("UTSEC outside [0, 86399]: " + std::to_string(h.utsec));
    return Timestamp{year, h.month, h.day, h.utsec};
}

} // namespace scinda
