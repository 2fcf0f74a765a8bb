#include <benchmark/benchmark.h>

#include <random>

#include "csd/banked.hpp"
#include "csd/config.hpp"
#include "csd/extract.hpp"
#include "csd/hmmd.hpp"
#include "csd/quant.hpp"

namespace {

csd::RgbImage random_image(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  csd::RgbImage img(w, h);
  for (auto& p : img.pixels()) {
    p = {static_cast<std::uint8_t>(byte(rng)), static_cast<std::uint8_t>(byte(rng)),
         static_cast<std::uint8_t>(byte(rng))};
  }
  return img;
}

csd::BinImage bin_image_for(int w, int h, std::uint32_t seed) {
  return csd::quantize_image(csd::convert_image(random_image(w, h, seed)),
                             csd::default_table(256));
}

void BM_RgbToHmmd(benchmark::State& state) {
  const auto img = random_image(120, 80, 1);
  for (auto _ : state) {
    auto out = csd::convert_image(img);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(img.pixel_count()));
}
BENCHMARK(BM_RgbToHmmd)->Unit(benchmark::kMicrosecond);

void BM_Quantize(benchmark::State& state) {
  const auto hmmd = csd::convert_image(random_image(120, 80, 2));
  for (auto _ : state) {
    auto out = csd::quantize_image(hmmd, csd::default_table(256));
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Quantize)->Unit(benchmark::kMicrosecond);

void BM_AccumulateReference(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const auto bi = bin_image_for(w, h, 3);
  const auto sp = csd::scale_params(w, h);
  for (auto _ : state) {
    auto out = csd::accumulate_reference(bi, sp);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_AccumulateReference)->Args({120, 80})->Args({640, 480})->Unit(benchmark::kMicrosecond);

void BM_AccumulateIncremental(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const auto bi = bin_image_for(w, h, 3);
  const auto sp = csd::scale_params(w, h);
  for (auto _ : state) {
    auto out = csd::accumulate_incremental(bi, sp);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_AccumulateIncremental)
    ->Args({120, 80})
    ->Args({640, 480})
    ->Args({1920, 1080})
    ->Unit(benchmark::kMicrosecond);

void BM_AccumulateBanked(benchmark::State& state) {
  const int banks = static_cast<int>(state.range(0));
  const auto bi = bin_image_for(1920, 1080, 4);
  const auto sp = csd::scale_params(1920, 1080);
  const auto plan = csd::make_plan(sp, 1080, banks);
  for (auto _ : state) {
    auto out = csd::accumulate_banked(bi, plan);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_AccumulateBanked)->Arg(1)->Arg(2)->Arg(10)->UseRealTime()->Unit(benchmark::kMicrosecond);

void BM_ExtractDeskScale(benchmark::State& state) {
  const auto img = random_image(120, 80, 5);
  for (auto _ : state) {
    auto d = csd::extract(img, 256);
    benchmark::DoNotOptimize(d);
  }
  state.counters["frames_per_second"] =
      benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ExtractDeskScale)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
