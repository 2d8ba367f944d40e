#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detgen/detection.hpp"
#include "detgen/ga.hpp"

namespace detgen {

// Positive class is Normal: tp counts Normal samples recognized as Normal.
struct ConfusionMatrix {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct Rates {
    double dr = 0;  // (tp+tn)/total, the overall accuracy reading of "detection rate"
    std::optional<double> tpr, tnr, fpr, fnr;
};

ConfusionMatrix score(const std::vector<Verdict>& verdicts, const std::vector<Label>& truths);
ConfusionMatrix score(const std::vector<Verdict>& verdicts,
                      const std::vector<EncodedSample>& samples);

Rates rates(const ConfusionMatrix& cm);

struct EvaluationReport {
    int population_size = 0;
    int generations = 0;
    Metric metric = Metric::Euclidean;
    std::optional<double> minkowski_p;
    std::uint64_t seed = 0;
    std::string dataset;
    ConfusionMatrix cm;
    Rates r;
    double duration_ms = 0;
    std::string error;  // nonempty when this run failed
};

struct NamedTestSet {
    std::string name;
    const std::vector<EncodedSample>* samples;
};

// One GA run per config, classified against every test set. Runs are
// independent; failures land in the report's error field instead of aborting
// the sweep. Child seeds derive from each config's rng_seed.
std::vector<EvaluationReport> sweep(const std::vector<GAConfig>& configs,
                                    const std::vector<EncodedSample>& self_set,
                                    const std::vector<NamedTestSet>& test_sets,
                                    const std::vector<int>& domains,
                                    const std::string& model_fingerprint,
                                    const ExtractOptions& extract = {}, int jobs = 1);

enum class ReportFormat { TableText, Csv, Json };

ReportFormat parse_report_format(const std::string& name);

void emit_report(const std::vector<EvaluationReport>& reports, ReportFormat format,
                 const std::string& path);
std::string render_report(const std::vector<EvaluationReport>& reports, ReportFormat format);

}  // namespace detgen
