#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "detgen/detector_set.hpp"
#include "detgen/distance.hpp"
#include "detgen/ga.hpp"

namespace detgen {

struct Verdict {
    Label label = Label::Anomaly;
    std::optional<std::size_t> matched_detector;  // index into DetectorSet, fitness order
    double match_score = 0;
};

// Detectors profile self: a sample matching a detector is Normal, anything
// else is flagged. Note this inverts the textbook negative-selection polarity.
bool matches(const Detector& d, const EncodedSample& s);

struct MatchOptions {
    // Experimental extension: when set, a sample within `threshold` of the
    // nearest detector (under `metric`) also classifies Normal.
    std::optional<double> threshold;
    Metric metric = Metric::Euclidean;
    std::optional<double> minkowski_p;
};

class Classifier {
public:
    Classifier(const DetectorSet& ds, const std::string& model_fingerprint,
               MatchOptions opts = {});

    Verdict classify(const EncodedSample& s) const;
    std::vector<Verdict> classify_all(const std::vector<EncodedSample>& samples) const;

private:
    const DetectorSet& set_;
    MatchOptions opts_;
    std::unordered_map<Genes, std::size_t, GenesHash> first_match_;
};

void write_verdicts_csv(const std::string& path, const std::vector<EncodedSample>& samples,
                        const std::vector<Verdict>& verdicts);

}  // namespace detgen
