#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtabs/metrics/trace.hpp"

namespace rtabs::metrics {

/// Per-process timing parameters. Deadline-dependent fields are empty for
/// processes with an infinite deadline.
struct ProcessOutcome {
  std::uint64_t pid = 0;
  std::uint64_t object = 0;
  std::string method;
  std::string label;
  Rational r;
  TimeBound c = TimeBound::finite(0);
  TimeBound d = TimeBound::infinite();
  std::optional<Rational> s;
  Rational f;
  bool crit = false;
  std::optional<Rational> D;
  Rational R;
  std::optional<Rational> L;
  std::optional<Rational> E;
  std::optional<TimeBound> X;
  /// Remaining deadline carried by the return event.
  TimeBound remaining = TimeBound::infinite();

  bool miss() const { return L && L->sign() > 0; }
};

class IncompleteProcess : public std::runtime_error {
 public:
  explicit IncompleteProcess(std::uint64_t pid)
      : std::runtime_error("process fut#" + std::to_string(pid) + " has no return event"), pid_(pid) {}
  std::uint64_t pid() const { return pid_; }

 private:
  std::uint64_t pid_;
};

/// Outcome of one pid from its activate/schedule/return events.
ProcessOutcome derive_outcome(const Trace& trace, std::uint64_t pid);

struct Outcomes {
  std::vector<ProcessOutcome> completed;  // in return order
  std::vector<std::uint64_t> incomplete;  // activated, never returned
};
Outcomes derive_outcomes(const Trace& trace);

struct SeriesPoint {
  Rational time;
  std::uint64_t misses = 0;
  std::map<std::string, std::uint64_t> by_class;
};

/// One point per return event. Class keys are `method`, or `method:label`
/// when the activation carried a String argument.
std::vector<SeriesPoint> misses_series(const Trace& trace);
std::string class_key(const ProcessOutcome& o);

/// CSV: `time,misses` or, with `by_class`, one extra column per class.
std::string format_series(const std::vector<SeriesPoint>& series, bool by_class);

struct Summary {
  std::size_t completed = 0;
  std::size_t misses = 0;
  std::size_t incomplete = 0;
};
Summary summarize(const Trace& trace);

/// Checks d0 - deadline == clock - arrival on every schedule and return
/// event with a finite deadline. Returns one message per violation.
std::vector<std::string> check_deadline_bookkeeping(const Trace& trace);

}  // namespace rtabs::metrics
