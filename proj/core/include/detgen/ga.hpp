#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "detgen/detector_set.hpp"
#include "detgen/distance.hpp"
#include "detgen/rng.hpp"

namespace detgen {

struct GAConfig {
    int population_size = 200;
    int generations = 200;
    double mutation_rate = 2.0 / 18.0;  // 2/L
    double crossover_rate = 1.0;
    Metric metric = Metric::Euclidean;
    std::optional<double> minkowski_p;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct ExtractOptions {
    double min_fitness = 0;          // strictly-greater cutoff; 0 drops only zero-fitness
    std::optional<int> top_n;        // keep at most n after sorting
};

struct GenesHash {
    std::size_t operator()(const Genes& g) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (int v : g) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

// Exact-match counts over the self set; fitness(d) = count(d) / |self|.
class SelfIndex {
public:
    explicit SelfIndex(const std::vector<EncodedSample>& self_set);

    double fitness(const Genes& genes) const;
    std::size_t total() const { return total_; }

private:
    std::unordered_map<Genes, std::uint32_t, GenesHash> counts_;
    std::size_t total_ = 0;
};

struct Population {
    std::vector<Detector> members;
};

struct GenerationStats {
    double best_fitness = 0;
    double mean_fitness = 0;
};

struct EvolveResult {
    Population population;            // final, before extraction
    DetectorSet detectors;            // extract_best(final population)
    std::vector<GenerationStats> trace;  // one entry per generation
    GenerationStats initial;
};

Population init_population(const std::vector<EncodedSample>& self_set, int n, Rng& rng,
                           const SelfIndex& index);

Genes crossover(const Genes& p1, const Genes& p2, Rng& rng);

void mutate(Genes& genes, double rate, const std::vector<int>& domains, Rng& rng);

// Steady-state replacement, literal nesting: the child replaces the nearer
// parent only when strictly fitter than it; ties on distance route to the
// parent2 branch.
void replace_step(Detector& parent1, Detector& parent2, const Detector& child, Metric metric,
                  std::optional<double> p);

EvolveResult evolve(const GAConfig& config, const std::vector<EncodedSample>& self_set,
                    const std::vector<int>& domains, const ExtractOptions& extract = {});

DetectorSet extract_best(const Population& pop, const ExtractOptions& opts = {});

}  // namespace detgen
