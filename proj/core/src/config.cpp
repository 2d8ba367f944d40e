#include "detgen/config.hpp"

#include <fstream>
#include <sstream>

#include "detgen/errors.hpp"
#include "detgen/rng.hpp"

namespace detgen {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    try {
        return std::stoi(v);
    } catch (...) {
        throw ConfigError("config key '" + key + "': not an integer: '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        return std::stod(v);
    } catch (...) {
        throw ConfigError("config key '" + key + "': not a number: '" + v + "'");
    }
}

}  // namespace

std::pair<Metric, std::optional<double>> parse_metric_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        Metric m = parse_metric(spec);
        if (m == Metric::Minkowski)
            throw ConfigError("minkowski metric needs a p value, e.g. 'minkowski:0.5'");
        return {m, std::nullopt};
    }
    Metric m = parse_metric(spec.substr(0, colon));
    if (m != Metric::Minkowski)
        throw ConfigError("only minkowski takes a ':p' suffix: '" + spec + "'");
    double p = to_double("metric", spec.substr(colon + 1));
    if (p <= 0) throw ConfigError("minkowski p must be > 0");
    return {m, p};
}

void RunConfig::apply(const std::string& key, const std::string& value) {
    echo[key] = value;
    if (key == "train_file") train_file = value;
    else if (key == "test_files") test_files = split_list(value);
    else if (key == "mapping_file") mapping_file = value;
    else if (key == "out_dir") out_dir = value;
    else if (key == "seed") ga.rng_seed = std::stoull(value);
    else if (key == "population_size") ga.population_size = to_int(key, value);
    else if (key == "generations") ga.generations = to_int(key, value);
    else if (key == "mutation_rate") ga.mutation_rate = to_double(key, value);
    else if (key == "crossover_rate") ga.crossover_rate = to_double(key, value);
    else if (key == "metric") {
        auto [m, p] = parse_metric_spec(value);
        ga.metric = m;
        if (p) ga.minkowski_p = p;
    } else if (key == "p") ga.minkowski_p = to_double(key, value);
    else if (key == "extract_min_fitness") extract.min_fitness = to_double(key, value);
    else if (key == "extract_top_n") extract.top_n = to_int(key, value);
    else if (key == "match_threshold") match_threshold = to_double(key, value);
    else if (key == "unknown_symbols") {
        if (value == "other") unknown_symbols = UnknownSymbolPolicy::MapToOther;
        else if (value == "reject") unknown_symbols = UnknownSymbolPolicy::Reject;
        else throw ConfigError("config key 'unknown_symbols': expected other|reject");
    } else if (key == "report_format") report_format = parse_report_format(value);
    else if (key == "sweep_population_sizes") {
        sweep_population_sizes.clear();
        for (const auto& v : split_list(value)) sweep_population_sizes.push_back(to_int(key, v));
    } else if (key == "sweep_generations") {
        sweep_generations.clear();
        for (const auto& v : split_list(value)) sweep_generations.push_back(to_int(key, v));
    } else if (key == "sweep_metrics") sweep_metrics = split_list(value);
    else if (key == "jobs") jobs = to_int(key, value);
    else throw ConfigError("unknown config key: '" + key + "'");
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::vector<GAConfig> RunConfig::sweep_grid() const {
    std::vector<int> pops = sweep_population_sizes;
    std::vector<int> gens = sweep_generations;
    std::vector<std::string> metrics = sweep_metrics;
    if (pops.empty()) pops = {ga.population_size};
    if (gens.empty()) gens = {ga.generations};
    if (metrics.empty()) {
        std::string spec = to_string(ga.metric);
        if (ga.metric == Metric::Minkowski) {
            if (!ga.minkowski_p) throw ConfigError("minkowski metric needs a p value");
            spec += ":" + std::to_string(*ga.minkowski_p);
        }
        metrics = {spec};
    }

    std::vector<GAConfig> grid;
    std::uint64_t run_index = 0;
    for (const auto& mspec : metrics) {
        auto [m, p] = parse_metric_spec(mspec);
        for (int pop : pops) {
            for (int gen : gens) {
                GAConfig c = ga;
                c.population_size = pop;
                c.generations = gen;
                c.metric = m;
                c.minkowski_p = p;
                c.rng_seed = derive_seed(ga.rng_seed, run_index++);
                grid.push_back(c);
            }
        }
    }
    return grid;
}

}  // namespace detgen
