#pragma once

#include <ifsnet/types.hpp>

#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace ifsnet {

enum class EventKind { spend, recharge };

const char* to_string(EventKind kind) noexcept;

struct EventRecord {
    std::string student_id;
    Timestamp timestamp = 0;
    std::string location_id;
    EventKind kind = EventKind::spend;
    double amount = 0.0;

    bool operator==(const EventRecord&) const = default;
};

/// Canonical, immutable event log. Records are kept sorted by
/// (location_id, timestamp); ties keep their input order.
class EventLog {
public:
    EventLog() = default;
    explicit EventLog(std::vector<EventRecord> records);

    std::span<const EventRecord> records() const noexcept { return records_; }
    const std::set<std::string>& students() const noexcept { return students_; }
    const std::set<std::string>& locations() const noexcept { return locations_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    /// Earliest and latest timestamp, or {0, 0} for an empty log.
    TimeSpan time_span() const noexcept;

    bool operator==(const EventLog& other) const { return records_ == other.records_; }

private:
    std::vector<EventRecord> records_;
    std::set<std::string> students_;
    std::set<std::string> locations_;
};

inline constexpr const char* kEventCsvHeader = "student_id,timestamp,location_id,kind,amount";

/// Reads the CSV event schema. Every well-formed row is kept; the first
/// malformed row raises ParseError naming its line.
EventLog parse_events(std::istream& in);

/// Accepts integer epoch seconds or YYYY-MM-DDTHH:MM:SS (UTC).
Timestamp parse_timestamp(std::string_view text);

void serialize_events(const EventLog& log, std::ostream& out);

/// Keeps spend records whose location is in keep_locations. An empty set
/// keeps every location.
EventLog filter_events(const EventLog& log, const std::set<std::string>& keep_locations);

} // namespace ifsnet
