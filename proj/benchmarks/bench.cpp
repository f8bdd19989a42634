#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "rtabs/engine/engine.hpp"
#include "rtabs/engine/program.hpp"
#include "rtabs/func/eval.hpp"
#include "rtabs/sched/policy.hpp"
#include "rtabs/sched/prelude.hpp"
#include "rtabs/syntax/parser.hpp"

using namespace rtabs;

namespace {

std::string fixture_source(const char* name) {
  std::ifstream in(std::string(RTABS_FIXTURES_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* const kMedia[] = {"media_sjf.rtabs", "media_edf.rtabs", "media_fifo.rtabs"};

void BM_LoadModel(benchmark::State& state) {
  std::string src = fixture_source(kMedia[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(engine::load_program(src, "<bench>"));
}
BENCHMARK(BM_LoadModel)->DenseRange(0, 2);

void BM_Simulate(benchmark::State& state) {
  auto program = engine::load_program(fixture_source(kMedia[state.range(0)]), "<bench>").program;
  std::size_t events = 0;
  for (auto _ : state) {
    engine::Engine eng(program);
    engine::run_with_large_stack([&] { eng.run_until(Rational(1000)); });
    events = eng.trace().size();
  }
  state.counters["events"] = static_cast<double>(events);
  state.SetLabel(kMedia[state.range(0)]);
}
// The run happens on a helper thread, so wall time is the meaningful figure.
BENCHMARK(BM_Simulate)->DenseRange(0, 2)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Policy(benchmark::State& state, const char* policy) {
  func::FunctionTable table{sched::prelude_model()};
  func::Evaluator ev{table};
  auto expr = syntax::parse_expression(policy);
  std::vector<Value> queue;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    queue.push_back(Value::constructor(
        "Proc", {Value::future(static_cast<FutureId>(i + 1)), Value::string("m"), make_time(i % 7),
                 make_duration(TimeBound::finite((i * 5) % 11)), make_duration(TimeBound::finite((i * 3) % 13)),
                 make_time(0), make_time(0), Value::boolean(i % 2 == 0), Value::number(i % 4)}));
  }
  Substitution attrs{{"limit", Value::number(state.range(0) / 2)}};
  for (auto _ : state) benchmark::DoNotOptimize(sched::evaluate_policy(ev, *expr, queue, attrs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Policy, edf, "edf(queue)")->RangeMultiplier(4)->Range(4, 256)->Complexity();
BENCHMARK_CAPTURE(BM_Policy, sjf, "sjf(queue)")->RangeMultiplier(4)->Range(4, 256)->Complexity();
BENCHMARK_CAPTURE(BM_Policy, lengthsensitive, "lengthsensitive(limit, queue)")
    ->RangeMultiplier(4)->Range(4, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
