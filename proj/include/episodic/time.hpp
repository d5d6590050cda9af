#pragma once

// Civil-time helpers: ISO-8601 timestamps with a retained zone offset,
// calendar conversions, and weekday arithmetic. All comparisons happen on
// the UTC instant; the offset is kept only so output can show local time.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <compare>
#include <optional>
#include <string>

namespace episodic {

using EpochSeconds = std::int64_t;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

inline std::int64_t days_from_civil(const CivilDate& d) {
    std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                    std::chrono::month{unsigned(d.month)},
                                    std::chrono::day{unsigned(d.day)}};
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

inline CivilDate civil_from_days(std::int64_t days) {
    std::chrono::sys_days sd{std::chrono::days{days}};
    std::chrono::year_month_day ymd{sd};
    return CivilDate{int(ymd.year()), int(unsigned(ymd.month())),
                     int(unsigned(ymd.day()))};
}

// 0 = Monday .. 6 = Sunday.
inline int weekday_of(const CivilDate& d) {
    std::chrono::sys_days sd{std::chrono::days{days_from_civil(d)}};
    unsigned c = std::chrono::weekday{sd}.c_encoding();  // 0 = Sunday
    return int((c + 6) % 7);
}

inline CivilDate add_days(const CivilDate& d, std::int64_t n) {
    return civil_from_days(days_from_civil(d) + n);
}

// A UTC instant plus the zone offset the source recorded it in.
struct Timestamp {
    EpochSeconds utc = 0;
    int offset_minutes = 0;

    auto operator<=>(const Timestamp& o) const { return utc <=> o.utc; }
    bool operator==(const Timestamp& o) const { return utc == o.utc; }

    CivilDate local_date() const {
        EpochSeconds local = utc + EpochSeconds(offset_minutes) * 60;
        std::int64_t days = local / 86400;
        if (local < 0 && local % 86400 != 0) --days;
        return civil_from_days(days);
    }
};

// Accepts "YYYY-MM-DDTHH:MM:SS" followed by "Z", "+HH:MM" or "-HH:MM".
inline std::optional<Timestamp> parse_timestamp(const std::string& s) {
    int y, mo, da, h, mi, se;
    int n = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%n", &y, &mo, &da, &h, &mi,
                    &se, &n) != 6)
        return std::nullopt;
    if (mo < 1 || mo > 12 || da < 1 || da > 31 || h < 0 || h > 23 ||
        mi < 0 || mi > 59 || se < 0 || se > 60)
        return std::nullopt;
    std::string rest = s.substr(size_t(n));
    int off = 0;
    if (rest == "Z" || rest == "z") {
        off = 0;
    } else if (rest.size() == 6 && (rest[0] == '+' || rest[0] == '-')) {
        int oh, om;
        if (std::sscanf(rest.c_str() + 1, "%d:%d", &oh, &om) != 2)
            return std::nullopt;
        off = oh * 60 + om;
        if (rest[0] == '-') off = -off;
    } else {
        return std::nullopt;
    }
    std::int64_t days = days_from_civil(CivilDate{y, mo, da});
    EpochSeconds local = days * 86400 + h * 3600 + mi * 60 + se;
    return Timestamp{local - EpochSeconds(off) * 60, off};
}

inline std::string format_timestamp(const Timestamp& t) {
    EpochSeconds local = t.utc + EpochSeconds(t.offset_minutes) * 60;
    std::int64_t days = local / 86400;
    EpochSeconds rem = local % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    CivilDate d = civil_from_days(days);
    int h = int(rem / 3600), mi = int((rem % 3600) / 60), se = int(rem % 60);
    char buf[40];
    if (t.offset_minutes == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                      d.year, d.month, d.day, h, mi, se);
    } else {
        int off = t.offset_minutes;
        char sign = off < 0 ? '-' : '+';
        if (off < 0) off = -off;
        std::snprintf(buf, sizeof buf,
                      "%04d-%02d-%02dT%02d:%02d:%02d%c%02d:%02d", d.year,
                      d.month, d.day, h, mi, se, sign, off / 60, off % 60);
    }
    return buf;
}

inline std::string format_date(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

inline std::optional<CivilDate> parse_date(const std::string& s) {
    int y, mo, da;
    if (std::sscanf(s.c_str(), "%d-%d-%d", &y, &mo, &da) != 3)
        return std::nullopt;
    if (mo < 1 || mo > 12 || da < 1 || da > 31) return std::nullopt;
    return CivilDate{y, mo, da};
}

}  // namespace episodic
