#include <benchmark/benchmark.h>

#include "cag/ball.hpp"
#include "cag/cellular_automaton.hpp"
#include "cag/linear_ca.hpp"
#include "cag/marked_group.hpp"
#include "cag/shift_space.hpp"
#include "cag/subshift.hpp"
#include "cag/surjunctivity.hpp"

namespace {

void BallEnumeration(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  const int radius = static_cast<int>(state.range(1));
  for (auto _ : state) {
    cag::Ball ball(rank, radius);
    benchmark::DoNotOptimize(ball.size());
  }
  state.SetComplexityN(
      static_cast<std::int64_t>(cag::Ball::cardinality(rank, radius)));
}
BENCHMARK(BallEnumeration)
    ->Args({1, 8})
    ->Args({2, 4})
    ->Args({2, 6})
    ->Args({3, 4})
    ->Complexity();

void FixWindow(benchmark::State& state) {
  const auto group =
      cag::MarkedGroup::cyclic(static_cast<std::uint64_t>(state.range(0)));
  const int radius = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cag::fix_window(group, 2, radius).size());
  }
}
BENCHMARK(FixWindow)->Args({6, 6})->Args({24, 8})->Args({720, 8});

void MarkedDistance(benchmark::State& state) {
  const auto g1 =
      cag::MarkedGroup::cyclic(static_cast<std::uint64_t>(state.range(0)));
  const auto g2 = cag::MarkedGroup::free_group(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cag::marked_distance(g1, g2, static_cast<int>(state.range(1))));
  }
}
BENCHMARK(MarkedDistance)->Args({720, 8})->Args({720, 16});

void EcaDecisionSweep(benchmark::State& state) {
  for (auto _ : state) {
    int injective = 0;
    for (int code = 0; code < 256; ++code) {
      const auto tau = cag::CellularAutomaton::eca(code);
      injective += cag::is_injective_1d(tau) ? 1 : 0;
      benchmark::DoNotOptimize(cag::is_surjective_1d(tau));
    }
    benchmark::DoNotOptimize(injective);
  }
}
BENCHMARK(EcaDecisionSweep);

void PeriodicOracle(benchmark::State& state) {
  const auto tau = cag::CellularAutomaton::eca(90);
  const int max_period = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cag::periodic_oracle(
        tau, cag::OracleProperty::Surjective, max_period));
  }
}
BENCHMARK(PeriodicOracle)->Arg(8)->Arg(10)->Arg(12);

void LinearRank(benchmark::State& state) {
  const auto group =
      cag::MarkedGroup::cyclic(static_cast<std::uint64_t>(state.range(0)));
  cag::FpMatrix one(2, 1, 1);
  one.set(0, 0, 1);
  const cag::LinearKernel kernel(2, 1,
                                 {{cag::FreeWord::parse("A"), one},
                                  {cag::FreeWord::parse("e"), one},
                                  {cag::FreeWord::parse("a"), one}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cag::lin_decide(kernel, group).rank);
  }
}
BENCHMARK(LinearRank)->Arg(64)->Arg(256)->Arg(720);

void HbAgreement(benchmark::State& state) {
  const cag::FixSubshift big(
      cag::MarkedGroup::cyclic(static_cast<std::uint64_t>(state.range(0))), 2);
  const cag::FixSubshift full(cag::MarkedGroup::free_group(1), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cag::hb_agreement_radius(big, full, static_cast<int>(state.range(1))));
  }
}
BENCHMARK(HbAgreement)->Args({24, 6})->Args({720, 8});

}  // namespace

BENCHMARK_MAIN();
