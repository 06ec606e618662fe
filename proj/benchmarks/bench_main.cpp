#include "oklab/algebra.hpp"
#include "oklab/ideal_family.hpp"
#include "oklab/lattice.hpp"
#include "oklab/polytope.hpp"
#include "oklab/presets.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace oklab;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::vector<LatticePoint> pts;
  for (std::size_t i = 0; i < rows; ++i) {
    LatticePoint p(cols);
    for (std::size_t j = 0; j < cols; ++j) p[j] = entry(rng);
    pts.push_back(std::move(p));
  }
  return IntMatrix(std::move(pts), cols);
}

void BM_HermiteNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(n + 2, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(3)->Arg(6)->Arg(10);

void BM_ConvexHull(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coord(-10, 10);
  std::vector<RationalVector> pts(40, RationalVector(dim));
  for (auto& p : pts)
    for (std::size_t j = 0; j < dim; ++j) p[j] = coord(rng);
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts));
}
BENCHMARK(BM_ConvexHull)->Arg(2)->Arg(3)->Arg(4);

void BM_DenseCount(benchmark::State& state) {
  const auto n_max = state.range(0);
  const auto A = preset_algebra("nonpoly");
  for (auto _ : state) benchmark::DoNotOptimize(volume_fn_count(A, Degree{3, 4}, n_max));
}
BENCHMARK(BM_DenseCount)->Arg(100)->Arg(200);

void BM_FamilyQuotientDim(benchmark::State& state) {
  const auto k = state.range(0);
  const auto m = GradedIdealFamily::m_adic(3);
  for (auto _ : state) benchmark::DoNotOptimize(family_quotient_dim(m, {m}, k, Degree{k}));
}
BENCHMARK(BM_FamilyQuotientDim)->Arg(10)->Arg(30);

}  // namespace
BENCHMARK_MAIN();
