#include <benchmark/benchmark.h>

#include "sl2h/depth_zero.hpp"
#include "sl2h/finite_group.hpp"
#include "sl2h/hecke.hpp"
#include "sl2h/orbital.hpp"

using namespace sl2h;

namespace {

std::shared_ptr<const Tree> tree(int p) {
  static std::map<int, std::shared_ptr<const Tree>> cache;
  auto& t = cache[p];
  if (!t) t = std::make_shared<const Tree>(p, 20);
  return t;
}

HeckeFunction cusp_coefficient(int p) {
  return matrix_coefficient(tree(p), DepthZeroSupercuspidal(p, cuspidal_indices(p).front()));
}

// arg 0: prime, arg 1: shell of the second factor
void BM_convolve(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = cusp_coefficient(p), h = shell_indicator(tree(p), (int)st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(convolve(f, h));
}
void BM_convolve_serial(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = cusp_coefficient(p), h = shell_indicator(tree(p), (int)st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(convolve_serial(f, h));
}

// arg 1: shell of the level-0 input; the conjugate lives at level 2
void BM_conjugate(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = shell_indicator(tree(p), (int)st.range(1));
  auto h = tree(p)->mat(1, mpq_class(1, p), 0, 1);
  for (auto _ : st) benchmark::DoNotOptimize(conjugate(f, h));
}
void BM_conjugate_serial(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = shell_indicator(tree(p), (int)st.range(1));
  auto h = tree(p)->mat(1, mpq_class(1, p), 0, 1);
  for (auto _ : st) benchmark::DoNotOptimize(conjugate_serial(f, h));
}

// arg 1: level of the double coset fed to the trace
void BM_rho_trace(benchmark::State& st) {
  int p = (int)st.range(0);
  DepthZeroSupercuspidal rho(p, cuspidal_indices(p).front());
  auto h = double_coset(tree(p), tree(p)->mat(0, 1, -1, 0), (int)st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(rho_trace(rho, h));
}
void BM_rho_trace_serial(benchmark::State& st) {
  int p = (int)st.range(0);
  DepthZeroSupercuspidal rho(p, cuspidal_indices(p).front());
  auto h = double_coset(tree(p), tree(p)->mat(0, 1, -1, 0), (int)st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(rho_trace_serial(rho, h));
}

// arg 1: truncation radius
void BM_truncated_trace(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = cusp_coefficient(p);
  auto g = tree(p)->mat(2, 0, 0, mpq_class(1, 2));
  for (auto _ : st) benchmark::DoNotOptimize(truncated_weighted_trace(f, g, (int)st.range(1)));
}
void BM_truncated_trace_serial(benchmark::State& st) {
  int p = (int)st.range(0);
  auto f = cusp_coefficient(p);
  auto g = tree(p)->mat(2, 0, 0, mpq_class(1, 2));
  for (auto _ : st) benchmark::DoNotOptimize(truncated_weighted_trace(f, g, (int)st.range(1), {}, true));
}

}  // namespace

BENCHMARK(BM_convolve)->Args({3, 1})->Args({3, 2})->Args({5, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_serial)->Args({3, 1})->Args({3, 2})->Args({5, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conjugate)->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conjugate_serial)->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rho_trace)->Args({3, 4})->Args({5, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rho_trace_serial)->Args({3, 4})->Args({5, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_truncated_trace)->Args({5, 3})->Args({5, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_truncated_trace_serial)->Args({5, 3})->Args({5, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
