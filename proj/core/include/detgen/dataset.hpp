#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "detgen/schema.hpp"

namespace detgen {

// Symbolic fields (protocol_type, service) keep their raw token; everything
// else is parsed numerically.
using FieldValue = std::variant<double, std::string>;

struct LabeledSample {
    std::vector<FieldValue> fields;  // schema order, length 18
    Label label = Label::Normal;
};

enum class UnknownSymbolPolicy { MapToOther, Reject };

// service token -> port category in 1..9. Total: unknown tokens fold into
// category 9 ("other") under the default policy.
class ServiceCategoryMap {
public:
    static ServiceCategoryMap load(const std::string& path);
    static ServiceCategoryMap from_pairs(
        const std::vector<std::pair<std::string, int>>& pairs);

    // Always returns a category in 1..9.
    int category(const std::string& token,
                 UnknownSymbolPolicy policy = UnknownSymbolPolicy::MapToOther) const;

    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::string, int> map_;
};

struct LoadOptions {
    UnknownSymbolPolicy unknown_symbols = UnknownSymbolPolicy::MapToOther;
    // Receives one message per skipped/flagged oddity; defaults to stderr.
    std::function<void(const std::string&)> warn;
};

std::vector<LabeledSample> load_records(const std::string& path,
                                        const FeatureSchema& schema,
                                        const LoadOptions& opts = {});

// Parse one NSL-KDD line (41 features + label [+ difficulty]).
LabeledSample parse_record(const std::string& line, const FeatureSchema& schema,
                           std::size_t line_no, const LoadOptions& opts);

// Order-preserving filter down to Label::Normal.
std::vector<LabeledSample> split_self(const std::vector<LabeledSample>& samples,
                                      const LoadOptions& opts = {});

// Re-serialize the projected features, comma separated (round-trip checks).
std::string serialize_sample(const LabeledSample& s);

}  // namespace detgen
