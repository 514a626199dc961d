#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifsnet {

/// Epoch seconds, UTC.
using Timestamp = std::int64_t;

/// Dense node index into a graph's sorted node-name table.
using NodeIndex = std::uint32_t;

/// Shared, immutable table of node names. Index order is lexicographic.
using NodeNames = std::shared_ptr<const std::vector<std::string>>;

/// Closed time interval [begin, end] in epoch seconds.
struct TimeSpan {
    Timestamp begin = 0;
    Timestamp end = 0;

    bool operator==(const TimeSpan&) const = default;
};

/// Raised when input text cannot be read. Carries the 1-based line number
/// (0 when the failure is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised on file-system failures.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ifsnet
