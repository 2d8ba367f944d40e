#include "detgen/schema.hpp"

#include <stdexcept>

namespace detgen {

FeatureSchema FeatureSchema::nslkdd18() {
    FeatureSchema s;
    auto add = [&s](std::string name, FeatureKind kind, std::optional<int> bins, int col) {
        s.features_.push_back(Feature{std::move(name), kind, bins, col});
    };
    add("duration", FeatureKind::Integer, 8, 0);
    add("protocol_type", FeatureKind::Categorical, std::nullopt, 1);
    // Port category count; the mapping to categories is a data file, not a fitted binning.
    add("service", FeatureKind::Integer, 9, 2);
    add("land", FeatureKind::Binary, std::nullopt, 6);
    add("urgent", FeatureKind::Integer, 1, 8);
    add("hot", FeatureKind::Integer, 3, 9);
    add("num_failed_logins", FeatureKind::Integer, 3, 10);
    add("logged_in", FeatureKind::Binary, std::nullopt, 11);
    add("root_shell", FeatureKind::Binary, std::nullopt, 13);
    add("su_attempted", FeatureKind::Binary, std::nullopt, 14);
    add("num_file_creations", FeatureKind::Integer, 4, 16);
    add("num_shells", FeatureKind::Integer, 2, 17);
    add("is_host_login", FeatureKind::Binary, std::nullopt, 20);
    add("is_guest_login", FeatureKind::Binary, std::nullopt, 21);
    add("count", FeatureKind::Integer, 10, 22);
    add("same_srv_rate", FeatureKind::Real, 3, 28);
    add("diff_srv_rate", FeatureKind::Real, 3, 29);
    add("srv_diff_host_rate", FeatureKind::Real, 3, 30);
    return s;
}

int FeatureSchema::domain_size(std::size_t i) const {
    const Feature& f = features_.at(i);
    switch (f.kind) {
        case FeatureKind::Binary:
            return 2;
        case FeatureKind::Categorical:
            return kProtocolDomain;
        case FeatureKind::Integer:
        case FeatureKind::Real:
            if (f.name == "service") return kServiceDomain;
            return *f.bin_count;
    }
    throw std::logic_error("unreachable feature kind");
}

std::vector<int> FeatureSchema::domain_sizes() const {
    std::vector<int> out;
    out.reserve(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) out.push_back(domain_size(i));
    return out;
}

int protocol_code(const std::string& token) {
    if (token == "tcp") return 0;
    if (token == "udp") return 1;
    if (token == "icmp") return 2;
    return 3;
}

}  // namespace detgen
