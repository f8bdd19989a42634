#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rtabs/engine/engine.hpp"
#include "rtabs/metrics/trace.hpp"

namespace rtabs::testing {

std::string fixture_path(std::string_view name);
std::string read_text(const std::string& path);

/// Loads a model; throws std::runtime_error carrying the diagnostics.
std::shared_ptr<const engine::Program> load_ok(std::string_view source,
                                               const std::string& name = "<test>");
std::shared_ptr<const engine::Program> load_fixture(std::string_view name);

struct RunOutput {
  engine::RunResult result;
  metrics::Trace trace;
};
RunOutput run_model(const std::shared_ptr<const engine::Program>& program, const Rational& limit,
                    engine::EngineOptions options = {});

std::string trace_csv(const metrics::Trace& trace);

/// A lifted process value for policy tests.
Value proc(FutureId pid, const std::string& method, const Rational& arrival, const TimeBound& cost,
           const TimeBound& deadline, bool crit = false, const Rational& value = 0);

/// Bare process with the nine reserved locals and the given stack (head last).
engine::ProcessRecord process(FutureId pid, Value deadline, std::vector<engine::RtStmt> stack = {});

// Table of mte/adv cases, one per equation case of the time-advance
// definitions. `check` returns an empty string on success, else a message.
struct TimeCase {
  std::string name;
  std::function<std::string()> check;
};
std::vector<TimeCase> time_advance_cases();

}  // namespace rtabs::testing
