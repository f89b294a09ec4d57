#include "oa/timestamp.hpp"

#include "oa/error.hpp"

#include <cctype>
#include <cstdio>

namespace oa {
namespace {

using namespace std::chrono;

auto read_digits(std::string_view s, std::size_t& pos, std::size_t count) -> std::optional<int> {
    if (pos + count > s.size()) return std::nullopt;
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        value = value * 10 + (c - '0');
    }
    pos += count;
    return value;
}

auto expect(std::string_view s, std::size_t& pos, char c) -> bool {
    if (pos < s.size() && (s[pos] == c || (c == 'T' && (s[pos] == 't' || s[pos] == ' ')))) {
        ++pos;
        return true;
    }
    return false;
}

}  // namespace

auto try_parse_timestamp(std::string_view s) -> std::optional<Timestamp> {
    std::size_t pos = 0;
    const auto y = read_digits(s, pos, 4);
    if (!y || !expect(s, pos, '-')) return std::nullopt;
    const auto mo = read_digits(s, pos, 2);
    if (!mo || !expect(s, pos, '-')) return std::nullopt;
    const auto d = read_digits(s, pos, 2);
    if (!d || !expect(s, pos, 'T')) return std::nullopt;
    const auto h = read_digits(s, pos, 2);
    if (!h || !expect(s, pos, ':')) return std::nullopt;
    const auto mi = read_digits(s, pos, 2);
    if (!mi || !expect(s, pos, ':')) return std::nullopt;
    const auto sec = read_digits(s, pos, 2);
    if (!sec) return std::nullopt;

    int millis = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int scale = 100;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            millis += (s[pos] - '0') * scale;
            scale /= 10;
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }

    int offset_minutes = 0;
    if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
        ++pos;
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        const int sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        const auto oh = read_digits(s, pos, 2);
        if (!oh || !expect(s, pos, ':')) return std::nullopt;
        const auto om = read_digits(s, pos, 2);
        if (!om || *oh > 23 || *om > 59) return std::nullopt;
        offset_minutes = sign * (*oh * 60 + *om);
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok() || *h > 23 || *mi > 59 || *sec > 60) return std::nullopt;

    const auto t = sys_days{ymd} + hours{*h} + minutes{*mi} + seconds{*sec} + milliseconds{millis} -
                   minutes{offset_minutes};
    return time_point_cast<milliseconds>(t);
}

auto parse_timestamp(std::string_view text) -> Timestamp {
    auto t = try_parse_timestamp(text);
    if (!t) throw Error(Errc::invalid_timestamp, "not an RFC 3339 date-time: '" + std::string(text) + "'");
    return *t;
}

auto format_timestamp(Timestamp t) -> std::string {
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss<milliseconds> tod{t - day_point};
    char buf[40];
    const auto ms = tod.subseconds().count();
    if (ms == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                      static_cast<long>(tod.seconds().count()));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                      static_cast<long>(tod.seconds().count()), static_cast<long>(ms));
    }
    return buf;
}

auto now_utc() -> Timestamp {
    return time_point_cast<milliseconds>(system_clock::now());
}

}  // namespace oa
