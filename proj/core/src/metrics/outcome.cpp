#include "rtabs/metrics/outcome.hpp"

#include <set>
#include <unordered_map>

namespace rtabs::metrics {

namespace {

TimeBound parse_bound(const std::string* s) {
  if (!s || *s == "inf") return TimeBound::infinite();
  return TimeBound::finite(Rational::parse(*s));
}

const std::string& need(const TraceEvent& e, std::string_view key) {
  const std::string* v = e.get(key);
  if (!v) {
    throw TraceFormatError(0, std::string(to_string(e.kind)) + " event lacks " + std::string(key));
  }
  return *v;
}

struct Partial {
  const TraceEvent* activate = nullptr;
  const TraceEvent* schedule = nullptr;
  const TraceEvent* ret = nullptr;
};

ProcessOutcome build(std::uint64_t pid, const Partial& p) {
  if (!p.ret) throw IncompleteProcess(pid);
  ProcessOutcome o;
  o.pid = pid;
  o.object = p.ret->object.value_or(0);
  o.method = p.ret->method;
  o.f = p.ret->time;
  o.remaining = parse_bound(p.ret->get("deadline"));
  if (!p.activate) throw TraceFormatError(0, "fut#" + std::to_string(pid) + " returns without an activate event");
  o.r = Rational::parse(need(*p.activate, "arrival"));
  o.c = parse_bound(p.activate->get("cost"));
  o.d = parse_bound(p.activate->get("deadline"));
  o.crit = need(*p.activate, "critical") == "True";
  if (const std::string* l = p.activate->get("label")) o.label = *l;
  if (p.schedule) o.s = Rational::parse(need(*p.schedule, "start"));
  o.R = o.f - o.r;
  if (o.d.is_finite()) {
    o.D = o.r + o.d.value();
    o.L = o.f - *o.D;
    o.E = o.L->sign() > 0 ? *o.L : Rational(0);
    o.X = o.c.is_finite() ? TimeBound::finite(o.d.value() - o.c.value()) : TimeBound::infinite();
  }
  return o;
}

std::unordered_map<std::uint64_t, Partial> index(const Trace& trace) {
  std::unordered_map<std::uint64_t, Partial> out;
  for (const auto& e : trace) {
    if (!e.pid) continue;
    Partial& p = out[*e.pid];
    switch (e.kind) {
      case EventKind::Activate: p.activate = &e; break;
      case EventKind::Schedule:
        if (!p.schedule) p.schedule = &e;
        break;
      case EventKind::Return: p.ret = &e; break;
      default: break;
    }
  }
  return out;
}

}  // namespace

ProcessOutcome derive_outcome(const Trace& trace, std::uint64_t pid) {
  auto idx = index(trace);
  auto it = idx.find(pid);
  if (it == idx.end()) throw IncompleteProcess(pid);
  return build(pid, it->second);
}

Outcomes derive_outcomes(const Trace& trace) {
  auto idx = index(trace);
  Outcomes out;
  std::set<std::uint64_t> seen;
  for (const auto& e : trace) {
    if (e.kind == EventKind::Return && e.pid) {
      out.completed.push_back(build(*e.pid, idx.at(*e.pid)));
      seen.insert(*e.pid);
    }
  }
  for (const auto& e : trace) {
    if (e.kind == EventKind::Activate && e.pid && !seen.count(*e.pid)) {
      out.incomplete.push_back(*e.pid);
      seen.insert(*e.pid);
    }
  }
  return out;
}

std::string class_key(const ProcessOutcome& o) {
  return o.label.empty() ? o.method : o.method + ":" + o.label;
}

std::vector<SeriesPoint> misses_series(const Trace& trace) {
  std::vector<SeriesPoint> out;
  SeriesPoint cur;
  for (const auto& o : derive_outcomes(trace).completed) {
    cur.time = o.f;
    std::string key = class_key(o);
    cur.by_class.try_emplace(key, 0);
    if (o.miss()) {
      ++cur.misses;
      ++cur.by_class[key];
    }
    out.push_back(cur);
  }
  return out;
}

std::string format_series(const std::vector<SeriesPoint>& series, bool by_class) {
  std::set<std::string> classes;
  if (by_class) {
    for (const auto& p : series) {
      for (const auto& [k, v] : p.by_class) classes.insert(k);
    }
  }
  std::string out = "time,misses";
  for (const auto& c : classes) out += "," + escape_field(c);
  out += "\n";
  for (const auto& p : series) {
    out += p.time.str() + "," + std::to_string(p.misses);
    for (const auto& c : classes) {
      auto it = p.by_class.find(c);
      out += "," + std::to_string(it == p.by_class.end() ? 0 : it->second);
    }
    out += "\n";
  }
  return out;
}

Summary summarize(const Trace& trace) {
  Outcomes o = derive_outcomes(trace);
  Summary s;
  s.completed = o.completed.size();
  s.incomplete = o.incomplete.size();
  for (const auto& p : o.completed) s.misses += p.miss() ? 1 : 0;
  return s;
}

std::vector<std::string> check_deadline_bookkeeping(const Trace& trace) {
  std::vector<std::string> out;
  std::unordered_map<std::uint64_t, std::pair<Rational, TimeBound>> arrivals;
  for (const auto& e : trace) {
    if (!e.pid) continue;
    if (e.kind == EventKind::Activate) {
      arrivals.insert_or_assign(*e.pid, std::make_pair(Rational::parse(need(e, "arrival")), parse_bound(e.get("deadline"))));
      continue;
    }
    if (e.kind != EventKind::Schedule && e.kind != EventKind::Return) continue;
    auto it = arrivals.find(*e.pid);
    if (it == arrivals.end()) continue;
    const auto& [r, d0] = it->second;
    TimeBound now = parse_bound(e.get("deadline"));
    if (d0.is_infinite()) {
      if (now.is_finite()) out.push_back("fut#" + std::to_string(*e.pid) + ": infinite deadline became finite");
      continue;
    }
    if (now.is_infinite() || d0.value() - now.value() != e.time - r) {
      out.push_back("fut#" + std::to_string(*e.pid) + " at " + e.time.str() + ": d0=" + d0.str() +
                    " deadline=" + now.str() + " arrival=" + r.str());
    }
  }
  return out;
}

}  // namespace rtabs::metrics
