#include <benchmark/benchmark.h>

#include "detgen/binning.hpp"
#include "detgen/distance.hpp"
#include "detgen/ga.hpp"
#include "detgen/rng.hpp"
#include "detgen/schema.hpp"

using namespace detgen;

namespace {

std::vector<EncodedSample> make_self(std::size_t n) {
    Rng rng(1);
    auto domains = FeatureSchema::nslkdd18().domain_sizes();
    std::vector<EncodedSample> self;
    self.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Genes g(domains.size());
        // skewed draws so the set has repeated patterns like real traffic
        for (std::size_t j = 0; j < g.size(); ++j)
            g[j] = rng.uniform01() < 0.7
                       ? 0
                       : static_cast<int>(rng.uniform_index(domains[j]));
        self.push_back(EncodedSample{std::move(g), Label::Normal});
    }
    return self;
}

void BM_FitnessLookup(benchmark::State& state) {
    auto self = make_self(static_cast<std::size_t>(state.range(0)));
    SelfIndex index(self);
    Rng rng(2);
    for (auto _ : state) {
        const auto& probe = self[rng.uniform_index(self.size())].genes;
        benchmark::DoNotOptimize(index.fitness(probe));
    }
}
BENCHMARK(BM_FitnessLookup)->Arg(1000)->Arg(13449);

void BM_Distance(benchmark::State& state) {
    Rng rng(3);
    Genes x(18), y(18);
    for (std::size_t i = 0; i < 18; ++i) {
        x[i] = static_cast<int>(rng.uniform_index(10));
        y[i] = static_cast<int>(rng.uniform_index(10));
    }
    auto metric = static_cast<Metric>(state.range(0));
    std::optional<double> p =
        metric == Metric::Minkowski ? std::optional<double>(0.5) : std::nullopt;
    for (auto _ : state) benchmark::DoNotOptimize(distance(x, y, metric, p));
}
BENCHMARK(BM_Distance)
    ->Arg(static_cast<int>(Metric::Euclidean))
    ->Arg(static_cast<int>(Metric::Hamming))
    ->Arg(static_cast<int>(Metric::Minkowski));

void BM_Evolve(benchmark::State& state) {
    auto self = make_self(2000);
    auto domains = FeatureSchema::nslkdd18().domain_sizes();
    GAConfig cfg;
    cfg.population_size = static_cast<int>(state.range(0));
    cfg.generations = 10;
    cfg.rng_seed = 4;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(cfg, self, domains));
}
BENCHMARK(BM_Evolve)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
