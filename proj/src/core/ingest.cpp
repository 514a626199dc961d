#include <ifsnet/ingest.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>

namespace ifsnet {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    if (text.empty())
        return false;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    return res.ec == std::errc{} && res.ptr == end;
}

std::string format_amount(double amount) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, amount);
    return std::string(buf, res.ptr);
}

} // namespace

const char* to_string(EventKind kind) noexcept {
    return kind == EventKind::spend ? "spend" : "recharge";
}

EventLog::EventLog(std::vector<EventRecord> records) : records_(std::move(records)) {
    std::stable_sort(records_.begin(), records_.end(), [](const EventRecord& a, const EventRecord& b) {
        if (a.location_id != b.location_id)
            return a.location_id < b.location_id;
        return a.timestamp < b.timestamp;
    });
    for (const auto& r : records_) {
        students_.insert(r.student_id);
        locations_.insert(r.location_id);
    }
}

TimeSpan EventLog::time_span() const noexcept {
    if (records_.empty())
        return {};
    TimeSpan span{records_.front().timestamp, records_.front().timestamp};
    for (const auto& r : records_) {
        span.begin = std::min(span.begin, r.timestamp);
        span.end = std::max(span.end, r.timestamp);
    }
    return span;
}

Timestamp parse_timestamp(std::string_view text) {
    Timestamp value = 0;
    if (parse_number(text, value)) {
        if (value < 0)
            throw std::invalid_argument("negative timestamp");
        return value;
    }
    // YYYY-MM-DDTHH:MM:SS
    if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':'
        || text[16] != ':')
        throw std::invalid_argument("unparsable timestamp '" + std::string(text) + "'");
    int y = 0;
    unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!parse_number(text.substr(0, 4), y) || !parse_number(text.substr(5, 2), mo)
        || !parse_number(text.substr(8, 2), d) || !parse_number(text.substr(11, 2), h)
        || !parse_number(text.substr(14, 2), mi) || !parse_number(text.substr(17, 2), s))
        throw std::invalid_argument("unparsable timestamp '" + std::string(text) + "'");
    using namespace std::chrono;
    const year_month_day date{year{y}, month{mo}, day{d}};
    if (!date.ok() || h > 23 || mi > 59 || s > 59)
        throw std::invalid_argument("invalid calendar timestamp '" + std::string(text) + "'");
    const auto secs = sys_days{date}.time_since_epoch() + hours{h} + minutes{mi} + seconds{s};
    const auto value_s = duration_cast<seconds>(secs).count();
    if (value_s < 0)
        throw std::invalid_argument("timestamp before epoch");
    return value_s;
}

EventLog parse_events(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line))
            return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    };

    if (!next_line() || line.empty())
        throw ParseError(1, "missing header");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
        line.erase(0, 3);
    if (line != kEventCsvHeader)
        throw ParseError(1, std::string("expected header '") + kEventCsvHeader + "'");

    std::vector<EventRecord> records;
    while (next_line()) {
        if (line.empty())
            continue;
        const auto fields = split_commas(line);
        if (fields.size() != 5)
            throw ParseError(line_no, "expected 5 columns, found " + std::to_string(fields.size()));
        EventRecord rec;
        rec.student_id = std::string(fields[0]);
        rec.location_id = std::string(fields[2]);
        if (rec.student_id.empty())
            throw ParseError(line_no, "empty student_id");
        if (rec.location_id.empty())
            throw ParseError(line_no, "empty location_id");
        try {
            rec.timestamp = parse_timestamp(fields[1]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        if (fields[3] == "spend")
            rec.kind = EventKind::spend;
        else if (fields[3] == "recharge")
            rec.kind = EventKind::recharge;
        else
            throw ParseError(line_no, "unknown kind '" + std::string(fields[3]) + "'");
        if (!parse_number(fields[4], rec.amount) || !std::isfinite(rec.amount) || rec.amount < 0)
            throw ParseError(line_no, "invalid amount '" + std::string(fields[4]) + "'");
        records.push_back(std::move(rec));
    }
    return EventLog(std::move(records));
}

void serialize_events(const EventLog& log, std::ostream& out) {
    out << kEventCsvHeader << '\n';
    for (const auto& r : log.records())
        out << r.student_id << ',' << r.timestamp << ',' << r.location_id << ',' << to_string(r.kind) << ','
            << format_amount(r.amount) << '\n';
}

EventLog filter_events(const EventLog& log, const std::set<std::string>& keep_locations) {
    std::vector<EventRecord> kept;
    kept.reserve(log.size());
    for (const auto& r : log.records()) {
        if (r.kind != EventKind::spend)
            continue;
        if (!keep_locations.empty() && !keep_locations.contains(r.location_id))
            continue;
        kept.push_back(r);
    }
    return EventLog(std::move(kept));
}

} // namespace ifsnet
