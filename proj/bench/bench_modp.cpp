#include <benchmark/benchmark.h>

#include <map>

#include "instances.hpp"
#include "sgen2/verification.hpp"

using namespace sgen2;

namespace {

// Q(sqrt 5) with S = {inf, inf', 2}: admissible primes up to the given bound.
struct Fixture {
  GeneratorTriple T;
  std::vector<PrimeIdeal> primes;

  explicit Fixture(long q_bound) : T(build_generators(testsupport::golden_inert_two())) {
    primes = admissible_primes(T, 64, q_bound);
  }
};

const Fixture& fixture(long q_bound) {
  static std::map<long, Fixture> cache;
  auto it = cache.find(q_bound);
  if (it == cache.end()) it = cache.emplace(q_bound, Fixture(q_bound)).first;
  return it->second;
}

void BM_BatchSerial(benchmark::State& st) {
  const auto& f = fixture(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(modp_batch(f.T, f.primes, false, st.range(0)));
  st.counters["primes"] = static_cast<double>(f.primes.size());
}

void BM_BatchParallel(benchmark::State& st) {
  const auto& f = fixture(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(modp_batch(f.T, f.primes, true, st.range(0)));
  st.counters["primes"] = static_cast<double>(f.primes.size());
}

// Full enumeration of the generated group as 4-tuples, one prime at a time.
void BM_ReferenceEnumeration(benchmark::State& st) {
  const auto& f = fixture(st.range(0));
  std::vector<std::pair<modp::FiniteField, std::vector<modp::Mat>>> jobs;
  for (const auto& P : f.primes) {
    modp::FiniteField F(P.p.get_ui(), P.modulus);
    std::vector<modp::Mat> gens;
    for (const auto* g : {&f.T.gamma, &f.T.psi1, &f.T.psi2})
      gens.push_back({F.from_poly(reduce_mod(f.T, g->a, P)), F.from_poly(reduce_mod(f.T, g->b, P)),
                      F.from_poly(reduce_mod(f.T, g->c, P)), F.from_poly(reduce_mod(f.T, g->d, P))});
    jobs.emplace_back(std::move(F), std::move(gens));
  }
  for (auto _ : st)
    for (const auto& [F, gens] : jobs) benchmark::DoNotOptimize(modp::enumerate_order(F, gens));
  st.counters["primes"] = static_cast<double>(f.primes.size());
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceEnumeration)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
