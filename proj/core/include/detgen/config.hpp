#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detgen/dataset.hpp"
#include "detgen/evaluation.hpp"
#include "detgen/ga.hpp"

namespace detgen {

// Flat key=value run configuration shared by all CLI subcommands.
struct RunConfig {
    std::string train_file;
    std::vector<std::string> test_files;
    std::string mapping_file;
    std::string out_dir = ".";

    GAConfig ga;
    ExtractOptions extract;
    UnknownSymbolPolicy unknown_symbols = UnknownSymbolPolicy::MapToOther;
    std::optional<double> match_threshold;  // experimental distance-threshold matching
    ReportFormat report_format = ReportFormat::Csv;

    // Sweep grid; metric entries are "euclidean", "hamming",
    // "positional-hamming" or "minkowski:<p>".
    std::vector<int> sweep_population_sizes;
    std::vector<int> sweep_generations;
    std::vector<std::string> sweep_metrics;
    int jobs = 1;

    // Verbatim key=value pairs as read, echoed into artifacts.
    std::map<std::string, std::string> echo;

    static RunConfig load(const std::string& path);
    void apply(const std::string& key, const std::string& value);

    std::vector<GAConfig> sweep_grid() const;
};

std::pair<Metric, std::optional<double>> parse_metric_spec(const std::string& spec);

}  // namespace detgen
