#include <benchmark/benchmark.h>

#include "oct/analyzer.hpp"
#include "oct/parser.hpp"

namespace {

using namespace oct;

const char* kWalk =
    "var a, i, m;\n"
    "if 0 <= m then\n"
    "  a := 0; i := 1;\n"
    "  while i <= m do\n"
    "    if ? then a := a + 1 else a := a - 1 fi;\n"
    "    i := i + 1\n"
    "  done;\n"
    "  assert -m <= a and a <= m\n"
    "fi";

const char* kBubble =
    "var i, j, n, t;\n"
    "i := n - 1;\n"
    "while i >= 1 do\n"
    "  j := 0;\n"
    "  while j <= i - 1 do\n"
    "    assert 0 <= j and j <= n - 1;\n"
    "    assert 0 <= j + 1 and j + 1 <= n - 1;\n"
    "    if ? then t := rand fi;\n"
    "    j := j + 1\n"
    "  done;\n"
    "  i := i - 1\n"
    "done";

void BM_AnalyzeWalk(benchmark::State& state) {
    Program p = parse(kWalk);
    for (auto _ : state) {
        AnalysisResult r = analyze(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_AnalyzeWalk);

void BM_AnalyzeBubble(benchmark::State& state) {
    Program p = parse(kBubble);
    for (auto _ : state) {
        AnalysisResult r = analyze(p);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_AnalyzeBubble);

void BM_ParsePretty(benchmark::State& state) {
    Program p = parse(kBubble);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse(kBubble));
    }
    (void)p;
}
BENCHMARK(BM_ParsePretty);

}  // namespace
