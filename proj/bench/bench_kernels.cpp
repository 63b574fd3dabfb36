#include <benchmark/benchmark.h>

#include "artin/anfamily.hpp"
#include "artin/htpair.hpp"
#include "artin/kernels.hpp"

using namespace artin;

namespace {

// Each iteration starts from an empty table so the fill is what gets timed.
void BM_StructureTable(benchmark::State& state) {
  const auto P = AnPresentation::build(static_cast<unsigned>(state.range(0)));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    const auto A = QuotientAlgebra::from_basis(P.groebner());
    A->precompute_structure_constants(parallel);
    benchmark::DoNotOptimize(A->structure_constant(1, 1));
  }
}

void BM_GenericPowers(benchmark::State& state) {
  const auto A = AnPresentation::build(static_cast<unsigned>(state.range(0))).algebra();
  const bool parallel = state.range(1) != 0;
  const auto zctx = z_context(*A);
  SymbolicElement z(A->dimension(), Polynomial(zctx, A->field()));
  for (std::size_t i = 1; i < A->dimension(); ++i) {
    z[i] = Polynomial::variable(zctx, A->field(), coordinate_name("z_", A->basis()[i]));
  }
  A->precompute_structure_constants(true);
  for (auto _ : state) {
    SymbolicElement zk = z;
    for (int k = 0; k < 3; ++k) zk = symbolic_multiply(*A, zk, z, parallel);
    benchmark::DoNotOptimize(zk);
  }
}

void BM_VerifyFanOut(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    const auto dims = indexed_map(
        5, [](std::size_t i) { return derivation_space(AnPresentation::build(2 + static_cast<unsigned>(i))).size(); },
        parallel);
    benchmark::DoNotOptimize(dims);
  }
}

void BM_HypersurfaceRoute(benchmark::State& state) {
  const auto A = AnPresentation::build(2).algebra();
  const auto F = HPairFunctional::parse(A, "z_05 + z_06");
  const auto route = state.range(0) != 0 ? ExpansionRoute::StructureTable : ExpansionRoute::NormalForm;
  for (auto _ : state) benchmark::DoNotOptimize(hypersurface_equation(F, route));
}

}  // namespace

BENCHMARK(BM_StructureTable)->ArgsProduct({{3, 5}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenericPowers)->ArgsProduct({{2, 3}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyFanOut)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HypersurfaceRoute)->Arg(0)->Arg(1)->ArgName("table")->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
