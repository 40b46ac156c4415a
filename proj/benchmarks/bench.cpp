#include <benchmark/benchmark.h>

#include "voleak/attacks.hpp"
#include "voleak/corpus.hpp"

using namespace voleak;

namespace {

std::vector<Keyword> make_dict(std::size_t n) {
  std::vector<Keyword> dict;
  dict.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    dict.push_back(synthetic_keyword(i, n));
  return dict;
}

void BM_BaseAttack(benchmark::State& state) {
  const auto dict = make_dict(static_cast<std::size_t>(state.range(0)));
  const std::size_t k = static_cast<std::size_t>(state.range(1));
  const auto& target = dict[dict.size() / 2];
  for (auto _ : state) {
    VolumeOracle oracle(SecondaryIndex::build({}), {},
                        builtin_profile("ideal"), {target}, 1);
    auto out = base_recover(oracle, dict, k);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BaseAttack)->Args({1000, 10})->Args({10000, 22});

void BM_Tokenize(benchmark::State& state) {
  const std::string text =
      "The quick brown foxes were repeatedly jumping over several lazy dogs "
      "while conspirators generalized their oscillating rationalizations";
  const PreprocessRules rules;
  for (auto _ : state) {
    auto words = tokenize_file(text, rules);
    benchmark::DoNotOptimize(words);
  }
}
BENCHMARK(BM_Tokenize);

void BM_IndexQuery(benchmark::State& state) {
  SyntheticSpec spec;
  spec.seed = 7;
  spec.n_files = static_cast<std::size_t>(state.range(0));
  spec.universe_size = 200;
  spec.law = FreqLaw::kZipf;
  auto corpus = generate_synthetic_corpus(spec);
  auto index = SecondaryIndex::build(corpus.files);
  const auto& word = corpus.truth.universe.front();
  for (auto _ : state) {
    auto result = index.query(word);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_IndexQuery)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
