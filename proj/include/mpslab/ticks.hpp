#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpslab/contracts.hpp"

namespace mpslab::ticks {

struct Tick {
    std::int64_t time_s = 0;      // seconds since epoch, local exchange clock
    int millis = 0;               // parsed and retained; analysis is 1 s
    std::int64_t price_ticks = 0; // integer multiples of delta
    std::int64_t volume = 0;
    char indicator = 'T';
};

struct TickSeries {
    ContractSpec contract;
    std::string utc_offset;  // e.g. "-06"; constant per file, informational
    std::vector<Tick> ticks;
};

// One trading window: [open_s, close_s] inclusive on both ends.
struct SessionRange {
    std::int64_t open_s = 0;
    std::int64_t close_s = 0;
    std::size_t first = 0;  // index of the first tick in the range
    std::size_t count = 0;  // N_{s,r}; zero-tick ranges are retained
};

struct Session {
    int year = 0, month = 0, day = 0;  // calendar label of the session
    std::vector<SessionRange> ranges;
    std::size_t tick_count() const;
};

struct SessionIndex {
    std::vector<Session> sessions;
    std::size_t tick_count() const;
};

// One calendar line: `date,open1,close1[,open2,close2]`.  An open time later
// than its close means the range starts the previous evening.
struct CalendarDay {
    int year = 0, month = 0, day = 0;
    struct Window {
        int open_s_of_day = 0;   // seconds after midnight
        int close_s_of_day = 0;
    };
    std::vector<Window> windows;
};

using Calendar = std::vector<CalendarDay>;

std::int64_t days_from_civil(int y, int m, int d);
void civil_from_days(std::int64_t z, int& y, int& m, int& d);
int weekday_from_days(std::int64_t z);  // 0 = Sunday .. 6 = Saturday

// Record format: `YYYY-MM-DD HH:MM:SS.mmm-TZ price size IND`, space separated.
// Only indicator-'T' records are kept by default; arrival order is preserved.
TickSeries parse_time_sales(std::istream& text, const ContractSpec& spec,
                            bool t_records_only = true);
TickSeries parse_time_sales(const std::string& text, const ContractSpec& spec,
                            bool t_records_only = true);
TickSeries parse_time_sales_file(const std::string& path, const ContractSpec& spec,
                                 bool t_records_only = true);

std::string serialize_time_sales(const TickSeries& series);

Calendar parse_calendar(std::istream& in);
Calendar parse_calendar_file(const std::string& path);

// Assigns every tick to exactly one (session, range).  Ticks falling in no
// declared window throw TickOutsideCalendar; time must be non-decreasing
// within each range.
SessionIndex segment_sessions(const TickSeries& series, const Calendar& calendar);

// tick_value_cents * (max price - min price) over [first, first+count).
std::int64_t dollar_range(const TickSeries& series, std::size_t first,
                          std::size_t count, const ContractSpec& spec);
std::int64_t dollar_range(const TickSeries& series, const ContractSpec& spec);

}  // namespace mpslab::ticks
