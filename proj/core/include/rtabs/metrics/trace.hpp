#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtabs/rational.hpp"

namespace rtabs::metrics {

enum class EventKind {
  Invoke,
  Activate,
  Schedule,
  Suspend,
  Return,
  Resolve,
  Tick,
  NewObject,
  DeadlineMiss,
  Error,
};

const char* to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct TraceEvent {
  Rational time;
  EventKind kind = EventKind::Tick;
  std::optional<std::uint64_t> object;
  std::optional<std::uint64_t> pid;
  std::string method;
  std::vector<std::pair<std::string, std::string>> data;

  const std::string* get(std::string_view key) const;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

enum class TraceFormat { Csv, Structured };

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kCsvHeader = "time,event,object,pid,method,data";

/// Percent-encodes `%`, `;`, `,`, `=`, CR and LF.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

void write_trace(std::ostream& os, const Trace& trace, TraceFormat format);
std::string format_trace(const Trace& trace, TraceFormat format);
/// Writes the trace to `path`; throws std::runtime_error with the OS error.
void export_trace(const Trace& trace, TraceFormat format, const std::string& path);

/// Parses either format (detected from the first line). Throws
/// TraceFormatError on malformed input.
Trace read_trace(std::istream& is);
Trace parse_trace(std::string_view text);

}  // namespace rtabs::metrics
