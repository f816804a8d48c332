#include <benchmark/benchmark.h>

#include <random>

#include "qkrec/reconstruct.hpp"
#include "qkrec/tablegen.hpp"

using namespace qkrec;

namespace {

const CorrelatorTable& bundled_table() {
  static CorrelatorTable table = generate_point_table(PointTableModel{});
  return table;
}

void BM_point_correlator_cold(benchmark::State& state) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-3, 3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PointBackend pb;  // cold cache each iteration
    std::vector<int> k(static_cast<size_t>(n));
    for (auto& x : k) x = d(rng);
    benchmark::DoNotOptimize(pb.monomial_correlator(k));
  }
}
BENCHMARK(BM_point_correlator_cold)->Arg(5)->Arg(6)->Arg(7);

void BM_point_correlator_memoized(benchmark::State& state) {
  PointBackend pb;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto _ : state) {
    std::vector<int> k(6);
    for (auto& x : k) x = d(rng);
    benchmark::DoNotOptimize(pb.monomial_correlator(k));
  }
}
BENCHMARK(BM_point_correlator_memoized);

void BM_series_mul(benchmark::State& state) {
  auto cfg = make_config({"a", "b", "c"}, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  Series x(cfg);
  for (int v = 0; v < 3; ++v) {
    x += Series::variable(cfg, v).scaled(Cyclo(Rat(c(rng))));
    x += Series::variable(cfg, v) * Series::variable(cfg, (v + 1) % 3);
  }
  Series y = x + Series::constant(cfg, Cyclo::one());
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_series_mul)->Arg(4)->Arg(6)->Arg(8);

void BM_laurent_part(benchmark::State& state) {
  BasisPtr basis = BasisInfo::point();
  auto cfg = make_config({"eps"}, 2);
  LaurentQ num(basis, cfg);
  for (int e = -3; e <= 3; ++e) {
    num.add_term(e, KVector::unit(basis, cfg).scaled(Cyclo(Rat(e + 5))));
  }
  RationalQ f = RationalQ(num)
                    .with_pole(Cyclo::one(), 2)
                    .with_pole(-Cyclo::one(), 1)
                    .with_pole(Cyclo::i(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(f.laurent_part());
}
BENCHMARK(BM_laurent_part);

void BM_tau_pipeline(benchmark::State& state) {
  BasisPtr basis = BasisInfo::point();
  const CorrelatorTable& table = bundled_table();
  auto cfg = make_config({"eps", "eta"}, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PointBackend pb;
    ReconstructionInput in;
    in.basis = basis;
    in.config = cfg;
    LaurentQ t1(basis, cfg);
    t1.add_term(1, KVector::unit(basis, cfg).scaled(Series::variable(cfg, 0)));
    LaurentQ t2(basis, cfg);
    t2.add_term(1, KVector::unit(basis, cfg).scaled(Series::variable(cfg, 1)));
    in.t = {t1, t2};
    Pipeline p(in, &table, &pb);
    benchmark::DoNotOptimize(p.tau());
  }
}
BENCHMARK(BM_tau_pipeline)->Arg(2)->Arg(3);

void BM_reconstruction_golden(benchmark::State& state) {
  BasisPtr basis = BasisInfo::point();
  const CorrelatorTable& table = bundled_table();
  auto cfg = make_config({"eps"}, 2);
  for (auto _ : state) {
    PointBackend pb;
    ReconstructionInput in;
    in.basis = basis;
    in.config = cfg;
    LaurentQ t1(basis, cfg);
    Series eps = Series::variable(cfg, 0);
    t1.add_term(1, KVector::unit(basis, cfg).scaled(eps));
    t1.add_term(0, KVector::unit(basis, cfg).scaled(-eps));
    in.t = {t1};
    Pipeline p(in, &table, &pb);
    benchmark::DoNotOptimize(p.run_reconstruction());
  }
}
BENCHMARK(BM_reconstruction_golden);

}  // namespace

BENCHMARK_MAIN();
