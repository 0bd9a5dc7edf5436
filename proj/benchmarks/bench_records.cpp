#include <benchmark/benchmark.h>

#include "nnn/inputschema.hpp"
#include "nnn/xml.hpp"

namespace {

using namespace nnn;

PatternNode compile(const std::string& text) { return compile_input_body(*parse_xml(text).root); }

const char* kSummary =
    "<input xmlns=\"http://relaxng.org/ns/structure/1.0\" label=\"s\"><element name=\"summary\">"
    "<data type=\"string\"><param name=\"maxLength\">50</param></data></element></input>";

// Optional elements give the matcher alternatives to try at every step.
std::string optional_chain(int n) {
  std::string s = "<input xmlns=\"http://relaxng.org/ns/structure/1.0\" label=\"c\"><element name=\"r\">";
  for (int i = 0; i < n; ++i) s += "<optional><element name=\"e\"><text/></element></optional>";
  return s + "</element></input>";
}

void BM_RecordString(benchmark::State& state) {
  const auto p = compile(kSummary);
  const auto rec = *parse_xml("<summary>stable, tired in the evenings</summary>").root;
  for (auto _ : state) benchmark::DoNotOptimize(validate_record(p, rec));
}
BENCHMARK(BM_RecordString);

void BM_RecordOptionalChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = compile(optional_chain(n));
  std::string rec = "<r>";
  for (int i = 0; i < n / 2; ++i) rec += "<e>x</e>";
  const auto record = *parse_xml(rec + "</r>").root;
  for (auto _ : state) benchmark::DoNotOptimize(validate_record(p, record));
}
BENCHMARK(BM_RecordOptionalChain)->Arg(4)->Arg(16)->Arg(64);

void BM_CompilePattern(benchmark::State& state) {
  const auto xml = *parse_xml(optional_chain(32)).root;
  for (auto _ : state) benchmark::DoNotOptimize(compile_input_body(xml));
}
BENCHMARK(BM_CompilePattern);

}  // namespace
