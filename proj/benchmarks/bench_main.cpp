#include <benchmark/benchmark.h>

#include <random>

#include "koszul/komplex.hpp"

using namespace koszul;

namespace {

FilteredPresentation down_up() { return build_down_up(Scalar(2), Scalar(-1), Scalar(1)); }

FilteredPresentation cubic() {
  auto ctx = make_field_context(3, 3);
  PsiMap psi(3, 3, 1);
  psi.at(0, 0) = 1;
  return build_H_psi(ctx, psi);
}

void BM_CyclotomicMultiply(benchmark::State& st) {
  const Scalar z = Scalar::zeta(static_cast<int>(st.range(0)));
  const Scalar a = z + Scalar(1, 3), b = z.pow(2) - Scalar(2, 7);
  for (auto _ : st) benchmark::DoNotOptimize(a * b + z);
}
BENCHMARK(BM_CyclotomicMultiply)->Arg(3)->Arg(5)->Arg(12);

void BM_Rref(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> keep(0, 3), val(-3, 3);
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    SparseVector v;
    for (std::size_t c = 0; c < 2 * n; ++c)
      if (keep(rng) == 0) v.push_back(c, Scalar(val(rng)));
    rows.push_back(v);
  }
  for (auto _ : st) benchmark::DoNotOptimize(Subspace::span(2 * n, rows).dim());
}
// random dense rational rows; entry growth makes this superlinear well before 200
BENCHMARK(BM_Rref)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ComputeJ(benchmark::State& st) {
  auto pres = down_up();
  for (auto _ : st) benchmark::DoNotOptimize(compute_J(pres, static_cast<std::size_t>(st.range(0))).size());
}
BENCHMARK(BM_ComputeJ)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_KoszulCertificate(benchmark::State& st) {
  auto A = homogenization(down_up());
  for (auto _ : st) benchmark::DoNotOptimize(koszul_complex_check(A, static_cast<std::size_t>(st.range(0))).verified);
}
BENCHMARK(BM_KoszulCertificate)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ContractedComplex(benchmark::State& st) {
  auto pres = cubic();
  for (auto _ : st) {
    TruncatedU U(pres, static_cast<std::size_t>(st.range(0)));
    BimoduleComplex cx(U);
    benchmark::DoNotOptimize(contracted_complex(cx).window_exact);
  }
}
BENCHMARK(BM_ContractedComplex)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
