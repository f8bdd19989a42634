#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rtabs/engine/runtime.hpp"
#include "rtabs/metrics/trace.hpp"

namespace rtabs::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDiagnostics = 1;
inline constexpr int kFailure = 2;  // I/O, malformed input, runtime error
inline constexpr int kDeadlock = 3;

struct RunConfig {
  std::string model_path;
  Rational until;
  std::uint64_t seed = 0;
  engine::DurationPolicy policy = engine::DurationPolicy::Worst;
  std::optional<std::string> trace_path;
  metrics::TraceFormat format = metrics::TraceFormat::Csv;
};

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_metrics(const std::string& trace_path, const std::string& series, bool by_method,
                std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtabs::cli
