#include "mpslab/ticks.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "mpslab/checked.hpp"
#include "mpslab/errors.hpp"

namespace mpslab::ticks {

namespace {

// Howard Hinnant's civil-date algorithms.
constexpr std::int64_t kSecondsPerDay = 86400;

bool parse_int_field(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_fixed_digits(std::string_view s, std::size_t pos, int len, int& out) {
    if (pos + static_cast<std::size_t>(len) > s.size()) return false;
    out = 0;
    for (int i = 0; i < len; ++i) {
        char c = s[pos + static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') return false;
        out = out * 10 + (c - '0');
    }
    return true;
}

struct CivilTime {
    int year, month, day, hour, minute, second, millis;
    std::string offset;
};

// `YYYY-MM-DD` + space + `HH:MM:SS.mmm` + offset (e.g. "-06").
bool parse_timestamp(std::string_view date, std::string_view time, CivilTime& ct) {
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    if (!parse_fixed_digits(date, 0, 4, ct.year) ||
        !parse_fixed_digits(date, 5, 2, ct.month) ||
        !parse_fixed_digits(date, 8, 2, ct.day))
        return false;
    if (time.size() < 12 || time[2] != ':' || time[5] != ':' || time[8] != '.')
        return false;
    if (!parse_fixed_digits(time, 0, 2, ct.hour) ||
        !parse_fixed_digits(time, 3, 2, ct.minute) ||
        !parse_fixed_digits(time, 6, 2, ct.second) ||
        !parse_fixed_digits(time, 9, 3, ct.millis))
        return false;
    ct.offset = std::string(time.substr(12));
    if (!ct.offset.empty() && ct.offset[0] != '-' && ct.offset[0] != '+') return false;
    if (ct.month < 1 || ct.month > 12 || ct.day < 1 || ct.day > 31) return false;
    if (ct.hour > 23 || ct.minute > 59 || ct.second > 60) return false;
    return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_time_of_day(std::string_view s) {
    // HH:MM or HH:MM:SS
    int h = 0, m = 0, sec = 0;
    if (s.size() != 5 && s.size() != 8) return -1;
    if (s[2] != ':') return -1;
    if (!parse_fixed_digits(s, 0, 2, h) || !parse_fixed_digits(s, 3, 2, m)) return -1;
    if (s.size() == 8) {
        if (s[5] != ':' || !parse_fixed_digits(s, 6, 2, sec)) return -1;
    }
    if (h > 23 || m > 59 || sec > 59) return -1;
    return h * 3600 + m * 60 + sec;
}

struct AbsWindow {
    std::int64_t open_s, close_s;
    std::size_t session;  // index into SessionIndex::sessions
    std::size_t range;    // index into Session::ranges
};

}  // namespace

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int weekday_from_days(std::int64_t z) {
    return static_cast<int>(z >= -4 ? (z + 4) % 7 : (z + 5) % 7 + 6);
}

TickSeries parse_time_sales(std::istream& in, const ContractSpec& spec,
                            bool t_records_only) {
    TickSeries series;
    series.contract = spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() != 5)
            throw MalformedLine("line " + std::to_string(lineno) + ": expected 5 fields, got " +
                                std::to_string(fields.size()));
        CivilTime ct;
        if (!parse_timestamp(fields[0], fields[1], ct))
            throw MalformedLine("line " + std::to_string(lineno) + ": bad timestamp");
        Tick tick;
        tick.time_s = days_from_civil(ct.year, ct.month, ct.day) * kSecondsPerDay +
                      ct.hour * 3600 + ct.minute * 60 + ct.second;
        tick.millis = ct.millis;
        tick.price_ticks = price_to_ticks(std::string(fields[2]), spec.delta);
        std::int64_t size = 0;
        if (!parse_int_field(fields[3], size))
            throw MalformedLine("line " + std::to_string(lineno) + ": bad size");
        if (size < 0)
            throw NegativeSize("line " + std::to_string(lineno) + ": size " +
                               std::to_string(size));
        tick.volume = size;
        if (fields[4].size() != 1)
            throw MalformedLine("line " + std::to_string(lineno) + ": bad indicator");
        tick.indicator = fields[4][0];
        if (series.utc_offset.empty()) series.utc_offset = ct.offset;
        if (t_records_only && tick.indicator != 'T') continue;
        series.ticks.push_back(tick);
    }
    return series;
}

TickSeries parse_time_sales(const std::string& text, const ContractSpec& spec,
                            bool t_records_only) {
    std::istringstream in(text);
    return parse_time_sales(in, spec, t_records_only);
}

TickSeries parse_time_sales_file(const std::string& path, const ContractSpec& spec,
                                 bool t_records_only) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_time_sales(in, spec, t_records_only);
}

std::string serialize_time_sales(const TickSeries& series) {
    std::string out;
    for (const auto& t : series.ticks) {
        std::int64_t days = t.time_s >= 0 ? t.time_s / kSecondsPerDay
                                          : (t.time_s - kSecondsPerDay + 1) / kSecondsPerDay;
        std::int64_t sod = t.time_s - days * kSecondsPerDay;
        int y, m, d;
        civil_from_days(days, y, m, d);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d.%03d%s", y, m, d,
                      static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                      static_cast<int>(sod % 60), t.millis, series.utc_offset.c_str());
        out += buf;
        out += ' ';
        out += ticks_to_price(t.price_ticks, series.contract.delta);
        out += ' ';
        out += std::to_string(t.volume);
        out += ' ';
        out += t.indicator;
        out += '\n';
    }
    return out;
}

Calendar parse_calendar(std::istream& in) {
    Calendar cal;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv(line);
        if (sv.empty() || sv[0] == '#') continue;
        std::vector<std::string_view> fields;
        std::size_t pos = 0;
        while (pos <= sv.size()) {
            std::size_t comma = sv.find(',', pos);
            if (comma == std::string_view::npos) comma = sv.size();
            fields.push_back(sv.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 3 && fields.size() != 5)
            throw MalformedLine("calendar line " + std::to_string(lineno));
        CalendarDay day;
        if (fields[0].size() != 10 || !parse_fixed_digits(fields[0], 0, 4, day.year) ||
            !parse_fixed_digits(fields[0], 5, 2, day.month) ||
            !parse_fixed_digits(fields[0], 8, 2, day.day))
            throw MalformedLine("calendar line " + std::to_string(lineno) + ": bad date");
        for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
            CalendarDay::Window w;
            w.open_s_of_day = parse_time_of_day(fields[i]);
            w.close_s_of_day = parse_time_of_day(fields[i + 1]);
            if (w.open_s_of_day < 0 || w.close_s_of_day < 0)
                throw MalformedLine("calendar line " + std::to_string(lineno) + ": bad time");
            day.windows.push_back(w);
        }
        cal.push_back(day);
    }
    std::sort(cal.begin(), cal.end(), [](const CalendarDay& a, const CalendarDay& b) {
        return std::tie(a.year, a.month, a.day) < std::tie(b.year, b.month, b.day);
    });
    return cal;
}

Calendar parse_calendar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_calendar(in);
}

std::size_t Session::tick_count() const {
    std::size_t n = 0;
    for (const auto& r : ranges) n += r.count;
    return n;
}

std::size_t SessionIndex::tick_count() const {
    std::size_t n = 0;
    for (const auto& s : sessions) n += s.tick_count();
    return n;
}

SessionIndex segment_sessions(const TickSeries& series, const Calendar& calendar) {
    SessionIndex index;
    std::vector<AbsWindow> windows;
    for (const auto& day : calendar) {
        Session session;
        session.year = day.year;
        session.month = day.month;
        session.day = day.day;
        std::int64_t base = days_from_civil(day.year, day.month, day.day) * kSecondsPerDay;
        for (const auto& w : day.windows) {
            AbsWindow aw;
            aw.open_s = base + w.open_s_of_day;
            aw.close_s = base + w.close_s_of_day;
            if (w.open_s_of_day > w.close_s_of_day) aw.open_s -= kSecondsPerDay;
            aw.session = index.sessions.size();
            aw.range = session.ranges.size();
            SessionRange r;
            r.open_s = aw.open_s;
            r.close_s = aw.close_s;
            session.ranges.push_back(r);
            windows.push_back(aw);
        }
        index.sessions.push_back(std::move(session));
    }
    std::sort(windows.begin(), windows.end(),
              [](const AbsWindow& a, const AbsWindow& b) { return a.open_s < b.open_s; });
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (windows[i].open_s <= windows[i - 1].close_s)
            throw MalformedLine("calendar windows overlap");
    }

    std::size_t w = 0;
    std::int64_t prev_time = 0;
    bool have_prev = false;
    for (std::size_t i = 0; i < series.ticks.size(); ++i) {
        const Tick& t = series.ticks[i];
        while (w < windows.size() && t.time_s > windows[w].close_s) {
            ++w;
            have_prev = false;
        }
        if (w >= windows.size() || t.time_s < windows[w].open_s)
            throw TickOutsideCalendar("tick " + std::to_string(i) + " at t=" +
                                      std::to_string(t.time_s));
        if (have_prev && t.time_s < prev_time)
            throw NonMonotonicTime("tick " + std::to_string(i));
        prev_time = t.time_s;
        have_prev = true;
        SessionRange& r = index.sessions[windows[w].session].ranges[windows[w].range];
        if (r.count == 0) r.first = i;
        ++r.count;
    }
    return index;
}

std::int64_t dollar_range(const TickSeries& series, std::size_t first, std::size_t count,
                          const ContractSpec& spec) {
    if (count == 0 || first + count > series.ticks.size())
        throw EmptyRange("dollar_range over empty or out-of-bounds slice");
    std::int64_t lo = series.ticks[first].price_ticks;
    std::int64_t hi = lo;
    for (std::size_t i = first + 1; i < first + count; ++i) {
        lo = std::min(lo, series.ticks[i].price_ticks);
        hi = std::max(hi, series.ticks[i].price_ticks);
    }
    return checked_mul(checked_sub(hi, lo), spec.tick_value_cents);
}

std::int64_t dollar_range(const TickSeries& series, const ContractSpec& spec) {
    return dollar_range(series, 0, series.ticks.size(), spec);
}

}  // namespace mpslab::ticks
