#include "commands.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rtabs/engine/engine.hpp"
#include "rtabs/metrics/outcome.hpp"

namespace rtabs::cli {

namespace {

bool read_file(const std::string& path, std::string& text, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: " << path << ": " << std::strerror(errno) << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

void print_diagnostics(const syntax::Diagnostics& diags, std::ostream& err) {
  for (const auto& d : diags) err << d.str() << "\n";
}

}  // namespace

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  (void)out;
  std::string text;
  if (!read_file(path, text, err)) return kFailure;
  auto loaded = engine::load_program(text, path);
  print_diagnostics(loaded.diagnostics, err);
  return loaded.diagnostics.empty() ? kOk : kDiagnostics;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.until.sign() <= 0) {
    err << "error: --until must be positive\n";
    return kFailure;
  }
  std::string text;
  if (!read_file(cfg.model_path, text, err)) return kFailure;
  auto loaded = engine::load_program(text, cfg.model_path);
  print_diagnostics(loaded.diagnostics, err);
  if (!loaded.ok()) return kDiagnostics;

  engine::EngineOptions opts;
  opts.seed = cfg.seed;
  opts.duration_policy = cfg.policy;
  engine::Engine eng(loaded.program, opts);
  engine::RunResult result;
  engine::run_with_large_stack([&] { result = eng.run_until(cfg.until); });

  const metrics::Trace& trace = eng.trace();
  if (cfg.trace_path) {
    try {
      metrics::export_trace(trace, cfg.format, *cfg.trace_path);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kFailure;
    }
  }
  metrics::Summary s = metrics::summarize(trace);
  out << "status,clock,completed,misses\n"
      << engine::to_string(result.status) << "," << result.clock << "," << s.completed << ","
      << s.misses << "\n";
  switch (result.status) {
    case engine::RunStatus::Terminated:
    case engine::RunStatus::TimeLimit: return kOk;
    case engine::RunStatus::Deadlock:
      err << result.message << "\n";
      return kDeadlock;
    case engine::RunStatus::RuntimeError:
      err << "runtime error: " << result.message << "\n";
      return kFailure;
  }
  return kFailure;
}

int cmd_metrics(const std::string& trace_path, const std::string& series, bool by_method,
                std::ostream& out, std::ostream& err) {
  if (series != "misses") {
    err << "error: unknown series '" << series << "'\n";
    return kFailure;
  }
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    err << "error: " << trace_path << ": " << std::strerror(errno) << "\n";
    return kFailure;
  }
  try {
    metrics::Trace trace = metrics::read_trace(in);
    out << metrics::format_series(metrics::misses_series(trace), by_method);
  } catch (const std::exception& e) {
    err << "error: " << trace_path << ": " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real-time actor model checker and simulator", "rtabs"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Parse and check a model");
  check->add_option("file", check_path, "Model file")->required();

  RunConfig run_cfg;
  std::string until_text, policy_text = "worst", format_text = "csv";
  std::string trace_path;
  auto* run = app.add_subcommand("run", "Simulate a model up to a time limit");
  run->add_option("file", run_cfg.model_path, "Model file")->required();
  run->add_option("--until", until_text, "Time limit (rational, e.g. 600 or 1/2)")->required();
  run->add_option("--seed", run_cfg.seed, "Seed for uniform duration sampling");
  run->add_option("--duration-policy", policy_text, "worst | best | uniform")
      ->check(CLI::IsMember({"worst", "best", "uniform"}));
  run->add_option("--trace", trace_path, "Trace output file");
  run->add_option("--format", format_text, "csv | structured")->check(CLI::IsMember({"csv", "structured"}));

  std::string metrics_path, series, by;
  auto* met = app.add_subcommand("metrics", "Deadline-miss series from a trace");
  met->add_option("trace", metrics_path, "Trace file")->required();
  met->add_option("--series", series, "Series to compute (misses)")->required();
  met->add_option("--by", by, "Breakdown (method)")->check(CLI::IsMember({"method"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  if (check->parsed()) return cmd_check(check_path, out, err);
  if (run->parsed()) {
    try {
      run_cfg.until = Rational::parse(until_text);
    } catch (const std::exception&) {
      err << "error: bad --until value '" << until_text << "'\n";
      return kFailure;
    }
    run_cfg.policy = *engine::parse_duration_policy(policy_text);
    run_cfg.format = format_text == "csv" ? metrics::TraceFormat::Csv : metrics::TraceFormat::Structured;
    if (!trace_path.empty()) run_cfg.trace_path = trace_path;
    return cmd_run(run_cfg, out, err);
  }
  return cmd_metrics(metrics_path, series, by == "method", out, err);
}

}  // namespace rtabs::cli
