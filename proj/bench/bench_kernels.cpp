// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "dhecke/center_probe.hpp"
#include "dhecke/kappa_space.hpp"
#include "dhecke/linalg.hpp"
#include "dhecke/pbw_engine.hpp"
#include "oracle.hpp"

namespace {

using dhecke::CycNum;
using dhecke::Exec;

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

dhecke::Mat random_matrix(std::size_t rows, std::size_t cols, int conductor) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> num(-9, 9);
  std::vector<CycNum> entries;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    entries.push_back(CycNum(num(rng)) + CycNum(num(rng)) * CycNum::zeta(conductor));
  }
  return dhecke::Mat(rows, cols, std::move(entries));
}

void BM_Rref(benchmark::State& state) {
  const dhecke::Mat m = random_matrix(30, 40, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::rref(m, exec_of(state)));
  label(state);
}

void BM_ValidKappaBasis(benchmark::State& state) {
  const auto l = testing_support::load("b2_wreath_h_plus_h");
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::valid_kappa_basis(l.grp, exec_of(state)));
  label(state);
}

void BM_OverlapCheck(benchmark::State& state) {
  const auto l = testing_support::load("b2_wreath_h_plus_h");
  std::mt19937 rng(1);
  const auto k = dhecke::kappa_from_params(l.grp, l.refl, testing_support::random_params(rng, l.refl));
  for (auto _ : state) {
    const dhecke::PbwEngine engine(l.grp, k);
    benchmark::DoNotOptimize(dhecke::pbw_overlap_check(engine, exec_of(state)));
  }
  label(state);
}

void BM_DichotomyScan(benchmark::State& state) {
  const auto l = testing_support::load("z4_rotation");
  std::mt19937 rng(2);
  std::vector<dhecke::ParamPoint> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(testing_support::random_params(rng, l.refl));
  for (auto _ : state) benchmark::DoNotOptimize(dhecke::dichotomy_scan(l.grp, l.refl, grid, 4, exec_of(state)));
  label(state);
}

void BM_PoissonCrosscheck(benchmark::State& state) {
  const auto l = testing_support::load("b2_wreath_h_plus_h");
  std::mt19937 rng(3);
  const auto p = testing_support::random_params(rng, l.refl);
  const auto k = dhecke::kappa_from_params(l.grp, l.refl, p);
  for (auto _ : state) {
    const dhecke::PbwEngine engine(l.grp, k);
    benchmark::DoNotOptimize(dhecke::poisson_crosscheck(engine, l.refl, p, 4, exec_of(state)));
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_Rref)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidKappaBasis)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OverlapCheck)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DichotomyScan)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoissonCrosscheck)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
