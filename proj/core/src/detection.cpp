#include "detgen/detection.hpp"

#include <fstream>
#include <limits>

#include "detgen/errors.hpp"

namespace detgen {

bool matches(const Detector& d, const EncodedSample& s) {
    if (d.genes.size() != s.genes.size())
        throw DataError("matches: gene vector length mismatch");
    return d.genes == s.genes;
}

Classifier::Classifier(const DetectorSet& ds, const std::string& model_fingerprint,
                       MatchOptions opts)
    : set_(ds), opts_(opts) {
    if (ds.detectors.empty())
        throw DataError("classification requires a nonempty detector set");
    if (ds.schema_fingerprint != model_fingerprint)
        throw DataError("schema fingerprint mismatch: detector set has '" +
                        ds.schema_fingerprint + "', binning model has '" + model_fingerprint +
                        "'");
    first_match_.reserve(ds.detectors.size());
    // Detectors are stored in fitness order; keep the first index per genome.
    for (std::size_t i = 0; i < ds.detectors.size(); ++i)
        first_match_.emplace(ds.detectors[i].genes, i);
}

Verdict Classifier::classify(const EncodedSample& s) const {
    Verdict v;
    auto it = first_match_.find(s.genes);
    if (it != first_match_.end()) {
        v.label = Label::Normal;
        v.matched_detector = it->second;
        v.match_score = 1.0;
        return v;
    }
    if (opts_.threshold) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < set_.detectors.size(); ++i) {
            double d = distance(s.genes, set_.detectors[i].genes, opts_.metric,
                                opts_.minkowski_p);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        if (best <= *opts_.threshold) {
            v.label = Label::Normal;
            v.matched_detector = best_i;
            v.match_score = best;
            return v;
        }
        v.match_score = best;
    }
    v.label = Label::Anomaly;
    return v;
}

std::vector<Verdict> Classifier::classify_all(const std::vector<EncodedSample>& samples) const {
    std::vector<Verdict> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(classify(s));
    return out;
}

void write_verdicts_csv(const std::string& path, const std::vector<EncodedSample>& samples,
                        const std::vector<Verdict>& verdicts) {
    if (samples.size() != verdicts.size())
        throw DataError("write_verdicts_csv: length mismatch");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write verdicts: " + path);
    out << "sample_index,true_label,predicted_label,matched_detector,score\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out << i << "," << to_string(samples[i].label) << "," << to_string(verdicts[i].label)
            << ",";
        if (verdicts[i].matched_detector) out << *verdicts[i].matched_detector;
        out << "," << verdicts[i].match_score << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace detgen
