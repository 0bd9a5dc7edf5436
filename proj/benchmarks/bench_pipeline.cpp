#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "nnn/advise.hpp"
#include "nnn/coverage.hpp"
#include "nnn/export.hpp"
#include "nnn/taskgraph.hpp"
#include "nnn/validate.hpp"
#include "nnn/xmlio.hpp"

namespace {

using namespace nnn;

GuidelineDocument corpus() { return *parse_document(bench::corpus_text(), ParseMode::lenient).document; }

// A flat or nested task list of the requested size.
TasksSection synthetic_tasks(int n, bool nested) {
  TasksSection s;
  CompositeTask outer;
  outer.mode = CompositionMode::sequential;
  for (int i = 0; i < n; ++i) {
    AtomicTask t;
    t.id = std::to_string(i);
    t.text = "task " + t.id;
    if (nested && i % 4 == 0) {
      CompositeTask par;
      par.mode = CompositionMode::parallel;
      par.children.push_back(t);
      outer.children.push_back(std::move(par));
    } else {
      outer.children.push_back(std::move(t));
    }
  }
  s.roots.push_back(std::move(outer));
  return s;
}

void BM_ParseLenient(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_document(bench::corpus_text(), ParseMode::lenient));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * bench::corpus_text().size()));
}
BENCHMARK(BM_ParseLenient);

void BM_Serialize(benchmark::State& state) {
  const auto doc = corpus();
  for (auto _ : state) benchmark::DoNotOptimize(serialize_document(doc));
}
BENCHMARK(BM_Serialize);

void BM_Validate(benchmark::State& state) {
  const auto doc = corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_structure(doc));
    benchmark::DoNotOptimize(validate_semantics(doc));
  }
}
BENCHMARK(BM_Validate);

void BM_CompileGraph(benchmark::State& state) {
  const auto tasks = synthetic_tasks(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(compile_graph(tasks));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CompileGraph)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_Advise(benchmark::State& state) {
  GuidelineDocument doc;
  doc.body.tasks = synthetic_tasks(static_cast<int>(state.range(0)), false);
  for (int i = 0; i < state.range(0); i += 3) doc.custom.recommended.push_back({std::to_string(i), Score{1 + i % 10}});
  for (auto _ : state) benchmark::DoNotOptimize(advise_order(doc));
}
BENCHMARK(BM_Advise)->Arg(16)->Arg(256);

void BM_Coverage(benchmark::State& state) {
  const auto doc = corpus();
  for (auto _ : state) benchmark::DoNotOptimize(compare_report(doc));
}
BENCHMARK(BM_Coverage);

void BM_Export(benchmark::State& state) {
  const auto doc = corpus();
  const auto standard = kAllStandards[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(to_string(standard)));
  for (auto _ : state) benchmark::DoNotOptimize(export_document(doc, standard));
}
BENCHMARK(BM_Export)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
