#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detgen/dataset.hpp"
#include "detgen/schema.hpp"

namespace detgen {

using Genes = std::vector<int>;

struct EncodedSample {
    Genes genes;
    Label label = Label::Normal;
};

struct FeatureBinning {
    double x_min = 0;
    double x_max = 0;
    int k = 1;
    double delta = 0;  // (x_max - x_min) / k
};

double compute_bin_width(double x_min, double x_max, int k);

// Half-open bins [lo, hi), last bin closed above; out-of-range values clamp
// to the end bins.
int assign_bin(double value, const FeatureBinning& b);

class BinningModel {
public:
    // Fits x_min/x_max per continuous feature over the self set; k comes from
    // the schema. Never reads labels.
    static BinningModel fit(const std::vector<LabeledSample>& self_samples,
                            const FeatureSchema& schema, const LoadOptions& opts = {});

    // Binning for continuous feature i (by schema index); nullopt otherwise.
    const std::optional<FeatureBinning>& binning(std::size_t i) const { return bins_.at(i); }

    EncodedSample encode(const LabeledSample& s, const FeatureSchema& schema,
                         const ServiceCategoryMap& services,
                         UnknownSymbolPolicy policy = UnknownSymbolPolicy::MapToOther) const;

    std::vector<EncodedSample> encode_all(
        const std::vector<LabeledSample>& samples, const FeatureSchema& schema,
        const ServiceCategoryMap& services,
        UnknownSymbolPolicy policy = UnknownSymbolPolicy::MapToOther) const;

    // 64-bit FNV-1a over the schema plus the fitted boundaries; train and
    // detect stages refuse to mix artifacts with different fingerprints.
    std::string fingerprint(const FeatureSchema& schema) const;

    void save(const std::string& path, const FeatureSchema& schema) const;
    static BinningModel load(const std::string& path, const FeatureSchema& schema);

    std::size_t continuous_feature_count() const;

private:
    std::vector<std::optional<FeatureBinning>> bins_;
};

}  // namespace detgen
