// Serial reference loops against their OpenMP counterparts. Set
// OMP_NUM_THREADS to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "polylab/extract.hpp"
#include "polylab/kakeya.hpp"
#include "polylab/kernels.hpp"
#include "polylab/lcc.hpp"

using namespace polylab;

namespace {

MultiPoly random_poly(const FieldSpec& f, std::size_t n, std::uint32_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MultiPoly p(f, n);
  for (const auto& e : monomials_up_to(n, d)) p.add_term(e, static_cast<Code>(rng() % f.order()));
  return p;
}

template <auto Kernel>
void count_zeros(benchmark::State& st) {
  const auto f = kernels::CompiledPoly::from(random_poly(FieldSpec::prime(13), 4, 6, 1));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(f));
}

template <auto Kernel>
void rank_mod_p(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(2);
  std::vector<std::vector<std::uint32_t>> a(n, std::vector<std::uint32_t>(n));
  for (auto& row : a)
    for (auto& x : row) x = static_cast<std::uint32_t>(rng() % 101);
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(a, 101));
}

template <auto Kernel>
void bias_sweep(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(static_cast<unsigned>(st.range(0))));
}

template <auto Kernel>
void merger_counts(benchmark::State& st) {
  const auto q = static_cast<std::uint32_t>(st.range(0));
  const auto adv = nikodym_adversary(build_kakeya(q, 2));
  const auto f = FieldSpec::prime(q);
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(f, 2, adv.table));
}

template <auto Kernel>
void lcc_single_error(benchmark::State& st) {
  const auto code = RMCode::max_locality(FieldSpec::prime(static_cast<std::uint32_t>(st.range(0))), 2);
  const auto word = code.encode(random_poly(code.spec(), 2, code.e(), 3));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(code, word));
}

template <auto Kernel>
void lcc_trials(benchmark::State& st) {
  const auto code = RMCode::max_locality(FieldSpec::prime(7), 3);
  const auto word = code.encode(random_poly(code.spec(), 3, code.e(), 4));
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(code, word, static_cast<std::uint64_t>(st.range(0)), 1, 5));
}

template <auto Kernel>
void bad_pairs(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(6);
  std::vector<std::vector<std::uint8_t>> bad(n, std::vector<std::uint8_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) bad[i][j] = bad[j][i] = rng() % 4 == 0;
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (auto& row : nbrs)
    for (std::uint32_t v = 0; v < n; ++v)
      if (rng() % 2) row.push_back(v);
  for (auto _ : st) benchmark::DoNotOptimize(Kernel(nbrs, bad));
}

}  // namespace

BENCHMARK(count_zeros<kernels::count_zeros_serial>)->Name("count_zeros/serial");
BENCHMARK(count_zeros<kernels::count_zeros_omp>)->Name("count_zeros/omp");
BENCHMARK(rank_mod_p<kernels::rank_mod_p_serial>)->Name("rank_mod_p/serial")->Arg(120)->Arg(240);
BENCHMARK(rank_mod_p<kernels::rank_mod_p_omp>)->Name("rank_mod_p/omp")->Arg(120)->Arg(240);
BENCHMARK(bias_sweep<kernels::bias_sweep_serial>)->Name("bias_sweep/serial")->Arg(1)->Arg(2);
BENCHMARK(bias_sweep<kernels::bias_sweep_omp>)->Name("bias_sweep/omp")->Arg(1)->Arg(2);
BENCHMARK(merger_counts<kernels::merger_counts_serial>)->Name("merger_counts/serial")->Arg(7)->Arg(13);
BENCHMARK(merger_counts<kernels::merger_counts_omp>)->Name("merger_counts/omp")->Arg(7)->Arg(13);
BENCHMARK(lcc_single_error<kernels::lcc_single_error_serial>)->Name("lcc_single_error/serial")->Arg(5)->Arg(7);
BENCHMARK(lcc_single_error<kernels::lcc_single_error_omp>)->Name("lcc_single_error/omp")->Arg(5)->Arg(7);
BENCHMARK(lcc_trials<kernels::lcc_trials_serial>)->Name("lcc_trials/serial")->Arg(20000);
BENCHMARK(lcc_trials<kernels::lcc_trials_omp>)->Name("lcc_trials/omp")->Arg(20000);
BENCHMARK(bad_pairs<kernels::bad_pairs_per_vertex_serial>)->Name("bad_pairs/serial")->Arg(400);
BENCHMARK(bad_pairs<kernels::bad_pairs_per_vertex_omp>)->Name("bad_pairs/omp")->Arg(400);

BENCHMARK_MAIN();
