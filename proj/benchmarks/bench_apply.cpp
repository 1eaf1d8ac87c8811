#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hml/hankel.hpp"
#include "hml/measure.hpp"

namespace {

hml::HankelSection section_of(std::size_t n) {
    return hml::hankel_section(hml::lebesgue(), n);
}

std::vector<double> unit_vector(std::size_t n) {
    return std::vector<double>(n, 1.0 / std::sqrt((double)n));
}

void BM_apply_naive(benchmark::State& state) {
    const std::size_t n = (std::size_t)state.range(0);
    const hml::HankelSection sec = section_of(n);
    const std::vector<double> x = unit_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(hml::apply_naive(sec, x));
    state.SetComplexityN(state.range(0));
}

void BM_apply_fft(benchmark::State& state) {
    const std::size_t n = (std::size_t)state.range(0);
    const hml::HankelSection sec = section_of(n);
    const std::vector<double> x = unit_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(hml::apply(sec, x));
    state.SetComplexityN(state.range(0));
}

void BM_moments(benchmark::State& state) {
    const hml::RadialMeasure mu = hml::lebesgue();
    for (auto _ : state)
        benchmark::DoNotOptimize(hml::moments_upto(mu, state.range(0)));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_apply_naive)->RangeMultiplier(4)->Range(256, 8192)->Complexity();
BENCHMARK(BM_apply_fft)->RangeMultiplier(4)->Range(256, 65536)->Complexity();
BENCHMARK(BM_moments)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

BENCHMARK_MAIN();
