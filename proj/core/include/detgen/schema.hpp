#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace detgen {

enum class FeatureKind { Binary, Categorical, Integer, Real };

enum class Label : std::uint8_t { Normal, Anomaly };

inline const char* to_string(Label l) {
    return l == Label::Normal ? "Normal" : "Anomaly";
}

struct Feature {
    std::string name;
    FeatureKind kind;
    // Present for continuous (integer/real) features that get fitted bins.
    // `service` carries a fixed category count instead and has no fitted bins.
    std::optional<int> bin_count;
    // Index of this feature inside the 41-column NSL-KDD record.
    int column;
};

class FeatureSchema {
public:
    static FeatureSchema nslkdd18();

    const std::vector<Feature>& features() const { return features_; }
    std::size_t size() const { return features_.size(); }
    const Feature& at(std::size_t i) const { return features_.at(i); }

    // Number of valid gene values for feature i in encoded space.
    int domain_size(std::size_t i) const;
    std::vector<int> domain_sizes() const;

    bool is_continuous(std::size_t i) const {
        const auto& f = features_[i];
        return (f.kind == FeatureKind::Integer || f.kind == FeatureKind::Real) &&
               f.name != "service";
    }

private:
    std::vector<Feature> features_;
};

// Protocol codes: tcp=0, udp=1, icmp=2, reserved "other"=3.
inline constexpr int kProtocolDomain = 4;
int protocol_code(const std::string& token);

// Service port categories 1..9 encode to genes 0..8.
inline constexpr int kServiceDomain = 9;

}  // namespace detgen
