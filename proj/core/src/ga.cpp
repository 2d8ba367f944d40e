#include "detgen/ga.hpp"

#include <algorithm>
#include <iostream>

#include "detgen/errors.hpp"

namespace detgen {

void GAConfig::validate() const {
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (generations < 0) throw ConfigError("generations must be >= 0");
    if (mutation_rate <= 0 || mutation_rate > 1)
        throw ConfigError("mutation_rate must be in (0, 1]");
    if (crossover_rate <= 0 || crossover_rate > 1)
        throw ConfigError("crossover_rate must be in (0, 1]");
    if (metric == Metric::Minkowski && (!minkowski_p || *minkowski_p <= 0))
        throw ConfigError("minkowski metric requires p > 0");
}

SelfIndex::SelfIndex(const std::vector<EncodedSample>& self_set) {
    if (self_set.empty())
        throw DataError("fitness is undefined on an empty self set (division by zero)");
    total_ = self_set.size();
    counts_.reserve(self_set.size());
    for (const auto& s : self_set) ++counts_[s.genes];
}

double SelfIndex::fitness(const Genes& genes) const {
    auto it = counts_.find(genes);
    if (it == counts_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total_);
}

Population init_population(const std::vector<EncodedSample>& self_set, int n, Rng& rng,
                           const SelfIndex& index) {
    if (n < 1) throw ConfigError("population size must be >= 1");
    if (self_set.empty()) throw DataError("cannot initialize population from an empty self set");
    Population pop;
    pop.members.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& pick = self_set[rng.uniform_index(self_set.size())];
        pop.members.push_back(Detector{pick.genes, index.fitness(pick.genes)});
    }
    return pop;
}

Genes crossover(const Genes& p1, const Genes& p2, Rng& rng) {
    if (p1.size() != p2.size()) throw DataError("crossover: parent length mismatch");
    if (p1.size() < 2) return p1;
    std::size_t cut = 1 + rng.uniform_index(p1.size() - 1);  // 1..L-1
    Genes child(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(cut));
    child.insert(child.end(), p2.begin() + static_cast<std::ptrdiff_t>(cut), p2.end());
    return child;
}

void mutate(Genes& genes, double rate, const std::vector<int>& domains, Rng& rng) {
    if (rate <= 0 || rate > 1) throw ConfigError("mutation rate must be in (0, 1]");
    if (genes.size() != domains.size()) throw DataError("mutate: domain size list mismatch");
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (rng.uniform01() < rate)
            genes[i] = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(domains[i])));
    }
}

void replace_step(Detector& parent1, Detector& parent2, const Detector& child, Metric metric,
                  std::optional<double> p) {
    double d1 = distance(child.genes, parent1.genes, metric, p);
    double d2 = distance(child.genes, parent2.genes, metric, p);
    if (d1 < d2 && child.fitness > parent1.fitness) {
        parent1 = child;
    } else {
        if (d2 <= d1 && child.fitness > parent2.fitness) parent2 = child;
    }
}

namespace {

GenerationStats stats_of(const Population& pop) {
    GenerationStats st;
    double sum = 0;
    for (const auto& d : pop.members) {
        st.best_fitness = std::max(st.best_fitness, d.fitness);
        sum += d.fitness;
    }
    st.mean_fitness = sum / static_cast<double>(pop.members.size());
    return st;
}

}  // namespace

EvolveResult evolve(const GAConfig& config, const std::vector<EncodedSample>& self_set,
                    const std::vector<int>& domains, const ExtractOptions& extract) {
    config.validate();
    SelfIndex index(self_set);
    Rng rng(config.rng_seed);

    EvolveResult result;
    Population pop = init_population(self_set, config.population_size, rng, index);
    result.initial = stats_of(pop);
    result.trace.reserve(static_cast<std::size_t>(config.generations));

    const std::size_t n = pop.members.size();
    for (int gen = 0; gen < config.generations; ++gen) {
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t i1 = rng.uniform_index(n);
            std::size_t i2 = rng.uniform_index(n);

            Detector child;
            if (config.crossover_rate >= 1.0 || rng.uniform01() < config.crossover_rate)
                child.genes = crossover(pop.members[i1].genes, pop.members[i2].genes, rng);
            else
                child.genes = pop.members[i1].genes;
            mutate(child.genes, config.mutation_rate, domains, rng);
            child.fitness = index.fitness(child.genes);

            if (i1 == i2) {
                // Coincident parents: a single slot plays both roles.
                replace_step(pop.members[i1], pop.members[i1], child, config.metric,
                             config.minkowski_p);
            } else {
                replace_step(pop.members[i1], pop.members[i2], child, config.metric,
                             config.minkowski_p);
            }
        }
        result.trace.push_back(stats_of(pop));
    }

    result.detectors = extract_best(pop, extract);
    result.population = std::move(pop);
    return result;
}

DetectorSet extract_best(const Population& pop, const ExtractOptions& opts) {
    if (pop.members.empty()) throw DataError("extract_best: empty population");
    std::vector<Detector> kept;
    kept.reserve(pop.members.size());
    for (const auto& d : pop.members)
        if (d.fitness > 0 && d.fitness >= opts.min_fitness) kept.push_back(d);

    std::stable_sort(kept.begin(), kept.end(),
                     [](const Detector& a, const Detector& b) { return a.fitness > b.fitness; });

    std::unordered_map<Genes, bool, GenesHash> seen;
    std::vector<Detector> unique;
    for (auto& d : kept) {
        if (seen.emplace(d.genes, true).second) unique.push_back(std::move(d));
    }
    if (opts.top_n && unique.size() > static_cast<std::size_t>(*opts.top_n))
        unique.resize(static_cast<std::size_t>(*opts.top_n));

    if (unique.empty())
        std::cerr << "warning: extract_best produced an empty detector set "
                     "(no detector has positive fitness)\n";

    DetectorSet ds;
    ds.detectors = std::move(unique);
    return ds;
}

}  // namespace detgen
