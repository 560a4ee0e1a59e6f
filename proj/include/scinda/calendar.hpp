#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace scinda {

inline constexpr int kSecondsPerDay = 86400;
inline constexpr int kSecondsPerHour = 3600;

bool is_valid_date(int year, int month, int day) noexcept;
int days_in_month(int year, int month);

/// English three-letter month abbreviation, title case ("Mar").
std::string_view month_abbrev(int month);

/// Key of one hourly raw file / bucket.
struct HourKey {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;

    auto operator<=>(const HourKey&) const = default;
    std::string to_string() const;
};

/// A UTC instant with one-second resolution, expressed the way the receiver
/// stamps epochs: a calendar date plus seconds since midnight.
struct Timestamp {
    int year = 2000;
    int month = 1;
    int day = 1;
    int utsec = 0;

    auto operator<=>(const Timestamp&) const = default;

    int hour() const noexcept { return utsec / kSecondsPerHour; }
    int minute() const noexcept { return (utsec % kSecondsPerHour) / 60; }
    int second() const noexcept { return utsec % 60; }
    double day_fraction() const noexcept { return static_cast<double>(utsec) / kSecondsPerDay; }
    HourKey hour_key() const noexcept { return {year, month, day, hour()}; }

    /// "2015-03-01T00:01:32"
    std::string iso() const;
    /// Seconds since 1970-01-01T00:00:00Z.
    long long unix_seconds() const;

    static Timestamp at_hour(const HourKey& key) noexcept {
        return {key.year, key.month, key.day, key.hour * kSecondsPerHour};
    }
};

/// An inclusive range of days inside one calendar month.
class DayRange {
public:
    /// Throws ConfigError when the range is empty or leaves the month.
    DayRange(int year, int month, int first_day, int last_day);
    static DayRange whole_month(int year, int month);

    int year() const noexcept { return year_; }
    int month() const noexcept { return month_; }
    int first_day() const noexcept { return first_; }
    int last_day() const noexcept { return last_; }
    int day_count() const noexcept { return last_ - first_ + 1; }
    int hour_count() const noexcept { return 24 * day_count(); }

    bool contains(const HourKey& key) const noexcept;
    bool contains(const Timestamp& t) const noexcept;

    /// "2015-03"
    std::string month_tag() const;
    /// "01-31"
    std::string day_tag() const;

    bool operator==(const DayRange&) const = default;

private:
    int year_;
    int month_;
    int first_;
    int last_;
};

} // namespace scinda
