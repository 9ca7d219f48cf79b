#include <benchmark/benchmark.h>

#include "boxart/baseline.hpp"
#include "boxart/diagram.hpp"
#include "boxart/stats.hpp"
#include "boxart/structure.hpp"
#include "boxart/trials.hpp"

namespace {

using namespace boxart;

void BM_GenerateDefault(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RandomStream rng(seed++);
    benchmark::DoNotOptimize(generate(GenParams{24, 14, 8.0, true, 1000, 100000}, rng));
  }
}
BENCHMARK(BM_GenerateDefault);

void BM_GenerateBudgeted(benchmark::State& state) {
  RandomStream setup(1);
  const Diagram first = generate(GenParams{24, 14, 8.0, true, 1000, 100000}, setup);
  const CharBudget budget = CharBudget::from_diagram(first);
  std::uint64_t seed = 100;
  for (auto _ : state) {
    RandomStream rng(seed++);
    benchmark::DoNotOptimize(generate(GenParams{24, 14, 8.0, true, 1000, 100000}, rng, budget));
  }
}
BENCHMARK(BM_GenerateBudgeted);

void BM_Render(benchmark::State& state) {
  RandomStream rng(2);
  const Diagram d = generate(GenParams{24, 14, 8.0, true, 1000, 100000}, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(render(d, true));
  }
}
BENCHMARK(BM_Render);

void BM_ParseBoxes(benchmark::State& state) {
  RandomStream rng(3);
  const Diagram d = generate(GenParams{24, 14, 8.0, true, 1000, 100000}, rng);
  const CharGrid grid = render(d, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_boxes(grid));
  }
}
BENCHMARK(BM_ParseBoxes);

void BM_Levenshtein24(benchmark::State& state) {
  RandomStream rng(4);
  const GenParams params{24, 14, 8.0, false, 1000, 100000};
  const std::string a = render(generate(params, rng), false).to_text();
  const std::string b = render(generate(params, rng), false).to_text();
  for (auto _ : state) {
    benchmark::DoNotOptimize(levenshtein(a, b));
  }
}
BENCHMARK(BM_Levenshtein24);

void BM_BuildRecognitionTrial(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RandomStream rng(seed++);
    benchmark::DoNotOptimize(
        build_recognition_trial(make_settings(TaskKind::RecogVerbatim), rng));
  }
}
BENCHMARK(BM_BuildRecognitionTrial);

void BM_ClopperPearson(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(clopper_pearson(361, 399, 0.05));
  }
}
BENCHMARK(BM_ClopperPearson);

}  // namespace

BENCHMARK_MAIN();
