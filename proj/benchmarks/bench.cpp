#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "tesselogic/eval.hpp"
#include "tesselogic/logic.hpp"
#include "tesselogic/marked.hpp"
#include "tesselogic/solve.hpp"
#include "tesselogic/text_io.hpp"
#include "tesselogic/translate.hpp"

using namespace tesselogic;

namespace {
std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const SFT& corners() {
  static const SFT s = parse_sft(slurp("corners.sft"));
  return s;
}

const Alphabet& dl() {
  static const Alphabet a = parse_alphabet("D L");
  return a;
}
}  // namespace

static void BM_TorusSolutions(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(torus_solutions(corners(), n, n));
}
BENCHMARK(BM_TorusSolutions)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_TorusSolutionsFree(benchmark::State& st) {
  // No forbidden patterns: pure enumeration cost.
  SFT s(dl(), {parse_pattern("alphabet: D L\nD L\n")});
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(torus_solutions(s, n, n));
  st.counters["solutions"] = static_cast<double>(torus_solutions(s, n, n).size());
}
BENCHMARK(BM_TorusSolutionsFree)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_AdmissiblePatterns(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(admissible_patterns(corners(), {n, n, m}));
}
BENCHMARK(BM_AdmissiblePatterns)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Args({4, 1})->Unit(benchmark::kMillisecond);

static void BM_EvalTorusUniversal(benchmark::State& st) {
  Formula f = parse_formula("forall x. forall y. (@D(x) & @D(y)) -> x = y", dl());
  const int n = static_cast<int>(st.range(0));
  std::vector<Color> fund(static_cast<std::size_t>(n * n), 1);
  fund[0] = 0;
  PeriodicConfig c(dl(), n, n, fund);
  for (auto _ : st) benchmark::DoNotOptimize(eval_torus(f, c));
}
BENCHMARK(BM_EvalTorusUniversal)->RangeMultiplier(2)->Range(4, 32);

static void BM_EvalTorusSetQuantifier(benchmark::State& st) {
  Formula f = parse_formula("forall X. forall x. X(x) -> X(E(x))", dl());
  const int n = static_cast<int>(st.range(0));
  PeriodicConfig t(dl(), n, 1, std::vector<Color>(static_cast<std::size_t>(n), 0));
  for (auto _ : st) benchmark::DoNotOptimize(eval_torus(f, t));
}
BENCHMARK(BM_EvalTorusSetQuantifier)->DenseRange(2, 10, 4);

static void BM_EvalPatternRelational(benchmark::State& st) {
  Formula f = to_relational(prenex(parse_formula("forall x. !(@D(x) & @L(E(x)))", dl())));
  const int n = static_cast<int>(st.range(0));
  Pattern p(dl());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) p.set({x, y}, static_cast<Color>((x + y) % 2));
  for (auto _ : st) benchmark::DoNotOptimize(eval_pattern(f, p));
}
BENCHMARK(BM_EvalPatternRelational)->RangeMultiplier(2)->Range(4, 32);

static void BM_MarkedCounting(benchmark::State& st) {
  Pattern d(dl());
  d.set({0, 0}, 0);
  MarkedSFT m = counting_marked_sft(d, 1, CountMode::Exact);
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(projected_marked_windows(m, n, n));
}
BENCHMARK(BM_MarkedCounting)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
