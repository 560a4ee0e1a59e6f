#include "scinda/calendar.hpp"

#include <array>
#include <chrono>
#include <cstdio>

#include "scinda/error.hpp"

namespace scinda {

namespace chr = std::chrono;

bool is_valid_date(int year, int month, int day) noexcept
{
    if (month < 1 || month > 12 || day < 1 || day > 31)
        return false;
    return chr::year_month_day{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                               chr::day{static_cast<unsigned>(day)}}
        .ok();
}

int days_in_month(int year, int month)
{
    if (month < 1 || month > 12)
        throw InvalidDate("month out of range: " + std::to_string(month));
    chr::year_month_day_last last{chr::year{year},
                                  chr::month_day_last{chr::month{static_cast<unsigned>(month)}}};
    return static_cast<int>(static_cast<unsigned>(last.day()));
}

std::string_view month_abbrev(int month)
{
    static constexpr std::array<std::string_view, 12> names{
        "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    if (month < 1 || month > 12)
        throw InvalidDate("month out of range: " + std::to_string(month));
    return names[static_cast<std::size_t>(month - 1)];
}

std::string HourKey::to_string() const
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02dh", year, month, day, hour);
    return buf;
}

std::string Timestamp::iso() const
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", year, month, day, hour(), minute(),
                  second());
    return buf;
}

long long Timestamp::unix_seconds() const
{
    chr::sys_days d{chr::year{year} / chr::month{static_cast<unsigned>(month)} /
                    chr::day{static_cast<unsigned>(day)}};
    return static_cast<long long>(d.time_since_epoch().count()) * kSecondsPerDay + utsec;
}

DayRange::DayRange(int year, int month, int first_day, int last_day)
    : year_(year), month_(month), first_(first_day), last_(last_day)
{
    if (month < 1 || month > 12)
        throw ConfigError("month must be within 1..12");
    if (year < 2000 || year > 2099)
        throw ConfigError("year must be within 2000..2099");
    const int n = days_in_month(year, month);
    if (first_day < 1 || last_day < first_day)
        throw ConfigError("invalid day range " + std::to_string(first_day) + "-" + std::to_string(last_day));
    if (last_day > n)
        throw ConfigError("day range must lie inside one calendar month (" + month_tag() + " has " +
                          std::to_string(n) + " days)");
}

DayRange DayRange::whole_month(int year, int month)
{
    return DayRange(year, month, 1, days_in_month(year, month));
}

bool DayRange::contains(const HourKey& key) const noexcept
{
    return key.year == year_ && key.month == month_ && key.day >= first_ && key.day <= last_ &&
           key.hour >= 0 && key.hour < 24;
}

bool DayRange::contains(const Timestamp& t) const noexcept
{
    return t.utsec >= 0 && t.utsec < kSecondsPerDay && contains(t.hour_key());
}

std::string DayRange::month_tag() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year_, month_);
    return buf;
}

std::string DayRange::day_tag() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d-%02d", first_, last_);
    return buf;
}

} // namespace scinda
