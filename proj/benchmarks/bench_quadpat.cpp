// Microbenchmarks for the hot paths: CNF encoding, the built-in solver,
// monochromatic counting, cover decomposition, and the full walk.
#include <benchmark/benchmark.h>

#include "quadpat/avoidance.hpp"
#include "quadpat/cover.hpp"
#include "quadpat/walk.hpp"

using namespace quadpat;

namespace {

ThickTestFamily small_family(const GroundSet& g) {
  return make_thick_family(g, {Rational(1), Rational(2)}, 2, 2);
}

void BM_EncodeCnfInterval(benchmark::State& state) {
  const GroundSet g = GroundSet::interval(1, state.range(0));
  const PatternTemplate t = builtin_pattern(BuiltinPattern::Quad);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_cnf(g, 2, t, 1));
  }
}
BENCHMARK(BM_EncodeCnfInterval)->Arg(64)->Arg(128)->Arg(252);

void BM_EncodeCnfThreads(benchmark::State& state) {
  const GroundSet g = GroundSet::interval(1, 252);
  const PatternTemplate t = builtin_pattern(BuiltinPattern::Quad);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_cnf(g, 2, t, int(state.range(0))));
  }
}
BENCHMARK(BM_EncodeCnfThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_SolveSchurInterval(benchmark::State& state) {
  const GroundSet g = GroundSet::interval(1, state.range(0));
  const PatternTemplate t = builtin_pattern(BuiltinPattern::Schur);
  const CnfFormula f = encode_cnf(g, 2, t, 1);
  for (auto _ : state) {
    SatSolver solver(f.num_variables, f.clauses);
    benchmark::DoNotOptimize(solver.solve());
  }
}
BENCHMARK(BM_SolveSchurInterval)->Arg(4)->Arg(5)->Arg(16);

void BM_AvoidanceSatQuad252(benchmark::State& state) {
  const GroundSet g = GroundSet::interval(1, 252);
  const PatternTemplate t = builtin_pattern(BuiltinPattern::Quad);
  for (auto _ : state) {
    benchmark::DoNotOptimize(avoidance_search(g, 2, t, SearchMethod::Sat));
  }
}
BENCHMARK(BM_AvoidanceSatQuad252);

void BM_CountField(benchmark::State& state) {
  const GroundSet g = GroundSet::prime_field(state.range(0));
  const PatternTemplate t = builtin_pattern(BuiltinPattern::Quad);
  const Coloring c = Coloring::uniform_random(g, 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_monochromatic(c, t));
  }
}
BENCHMARK(BM_CountField)->Arg(101)->Arg(257)->Arg(521);

void BM_CoverDecomposition(benchmark::State& state) {
  const GroundSet g = GroundSet::prime_field(state.range(0));
  const Coloring c = Coloring::uniform_random(g, 3, 2);
  const ThickTestFamily fam = small_family(g);
  const IndexSet ambient = nonzero_set(g);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(cover_decomposition(c, 1, ambient, fam));
    } catch (const CoverError&) {
    }
  }
}
BENCHMARK(BM_CoverDecomposition)->Arg(53)->Arg(101);

void BM_WalkQuadruple(benchmark::State& state) {
  const GroundSet g = GroundSet::prime_field(state.range(0));
  const Coloring c = Coloring::uniform_random(g, 3, 2);
  const ThickTestFamily fam = small_family(g);
  WalkParams wp;
  wp.N = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(walk_quadruple(c, wp, 1, fam));
  }
}
BENCHMARK(BM_WalkQuadruple)->Arg(53)->Arg(101);

void BM_IprWitness(benchmark::State& state) {
  const GroundSet g = GroundSet::prime_field(101);
  const IndexSet S = nonzero_set(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_ipr_witness(S, int(state.range(0)), S, g));
  }
}
BENCHMARK(BM_IprWitness)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
