#include "rtabs/metrics/trace.hpp"

#include <array>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace rtabs::metrics {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 10> kKinds = {{
    {EventKind::Invoke, "invoke"},
    {EventKind::Activate, "activate"},
    {EventKind::Schedule, "schedule"},
    {EventKind::Suspend, "suspend"},
    {EventKind::Return, "return"},
    {EventKind::Resolve, "resolve"},
    {EventKind::Tick, "tick"},
    {EventKind::NewObject, "new_object"},
    {EventKind::DeadlineMiss, "deadline_miss"},
    {EventKind::Error, "error"},
}};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::uint64_t> parse_id(std::string_view s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw TraceFormatError(line, "bad id '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

Rational parse_time(std::string_view s, std::size_t line) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw TraceFormatError(line, "bad time '" + std::string(s) + "'");
  }
}

EventKind parse_kind(std::string_view s, std::size_t line) {
  auto k = parse_event_kind(s);
  if (!k) throw TraceFormatError(line, "unknown event '" + std::string(s) + "'");
  return *k;
}

std::string csv_row(const TraceEvent& e) {
  std::string out = e.time.str();
  out += ',';
  out += to_string(e.kind);
  out += ',';
  if (e.object) out += std::to_string(*e.object);
  out += ',';
  if (e.pid) out += std::to_string(*e.pid);
  out += ',';
  out += escape_field(e.method);
  out += ',';
  for (std::size_t i = 0; i < e.data.size(); ++i) {
    if (i) out += ';';
    out += escape_field(e.data[i].first);
    out += '=';
    out += escape_field(e.data[i].second);
  }
  return out;
}

std::string json_row(const TraceEvent& e) {
  nlohmann::ordered_json j;
  j["time"] = e.time.str();
  j["event"] = to_string(e.kind);
  j["object"] = e.object ? nlohmann::ordered_json(*e.object) : nlohmann::ordered_json(nullptr);
  j["pid"] = e.pid ? nlohmann::ordered_json(*e.pid) : nlohmann::ordered_json(nullptr);
  j["method"] = e.method;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (const auto& [k, v] : e.data) data[k] = v;
  j["data"] = std::move(data);
  return j.dump();
}

TraceEvent parse_csv_row(std::string_view row, std::size_t line) {
  auto fields = split(row, ',');
  if (fields.size() != 6) {
    throw TraceFormatError(line, "expected 6 fields, got " + std::to_string(fields.size()));
  }
  TraceEvent e;
  e.time = parse_time(fields[0], line);
  e.kind = parse_kind(fields[1], line);
  e.object = parse_id(fields[2], line);
  e.pid = parse_id(fields[3], line);
  e.method = unescape_field(fields[4]);
  if (!fields[5].empty()) {
    for (auto pair : split(fields[5], ';')) {
      auto kv = split(pair, '=');
      if (kv.size() != 2) throw TraceFormatError(line, "bad data pair '" + std::string(pair) + "'");
      e.data.emplace_back(unescape_field(kv[0]), unescape_field(kv[1]));
    }
  }
  return e;
}

TraceEvent parse_json_row(std::string_view row, std::size_t line) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(row);
  } catch (const nlohmann::json::exception& ex) {
    throw TraceFormatError(line, ex.what());
  }
  try {
    TraceEvent e;
    e.time = parse_time(j.at("time").get<std::string>(), line);
    e.kind = parse_kind(j.at("event").get<std::string>(), line);
    if (!j.at("object").is_null()) e.object = j.at("object").get<std::uint64_t>();
    if (!j.at("pid").is_null()) e.pid = j.at("pid").get<std::uint64_t>();
    e.method = j.at("method").get<std::string>();
    for (const auto& [k, v] : j.at("data").items()) e.data.emplace_back(k, v.get<std::string>());
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw TraceFormatError(line, ex.what());
  }
}

}  // namespace

const char* to_string(EventKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name.data();
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (const auto& [k, name] : kKinds) {
    if (name == text) return k;
  }
  return std::nullopt;
}

const std::string* TraceEvent::get(std::string_view key) const {
  for (const auto& [k, v] : data) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string escape_field(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : s) {
    if (c == '%' || c == ';' || c == ',' || c == '=' || c == '\n' || c == '\r') {
      auto u = static_cast<unsigned char>(c);
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex(s[i + 1]) >= 0 && hex(s[i + 2]) >= 0) {
      out += static_cast<char>(hex(s[i + 1]) * 16 + hex(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

void write_trace(std::ostream& os, const Trace& trace, TraceFormat format) {
  if (format == TraceFormat::Csv) {
    os << kCsvHeader << '\n';
    for (const auto& e : trace) os << csv_row(e) << '\n';
  } else {
    for (const auto& e : trace) os << json_row(e) << '\n';
  }
}

std::string format_trace(const Trace& trace, TraceFormat format) {
  std::ostringstream os;
  write_trace(os, trace, format);
  return os.str();
}

void export_trace(const Trace& trace, TraceFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  write_trace(out, trace, format);
  out.flush();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

Trace read_trace(std::istream& is) {
  Trace out;
  std::string line;
  std::size_t lineno = 0;
  std::optional<TraceFormat> format;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!format) {
      if (line == kCsvHeader) {
        format = TraceFormat::Csv;
        continue;
      }
      if (!line.empty() && line.front() == '{') {
        format = TraceFormat::Structured;
      } else {
        throw TraceFormatError(lineno, "expected the CSV header or a structured record");
      }
    }
    if (line.empty()) continue;
    out.push_back(*format == TraceFormat::Csv ? parse_csv_row(line, lineno)
                                              : parse_json_row(line, lineno));
  }
  // An empty file is an empty structured trace.
  return out;
}

Trace parse_trace(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_trace(is);
}

}  // namespace rtabs::metrics
