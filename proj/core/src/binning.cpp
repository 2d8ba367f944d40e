#include "detgen/binning.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "detgen/errors.hpp"

namespace detgen {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void default_warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

}  // namespace

double compute_bin_width(double x_min, double x_max, int k) {
    if (k < 1) throw ConfigError("bin count must be >= 1, got " + std::to_string(k));
    if (x_max < x_min)
        throw DataError("invalid range: x_max " + fmt_double(x_max) + " < x_min " +
                        fmt_double(x_min));
    return (x_max - x_min) / k;
}

int assign_bin(double value, const FeatureBinning& b) {
    if (b.delta == 0) return 0;
    int idx = static_cast<int>(std::floor((value - b.x_min) / b.delta));
    if (idx < 0) return 0;
    if (idx > b.k - 1) return b.k - 1;
    return idx;
}

BinningModel BinningModel::fit(const std::vector<LabeledSample>& self_samples,
                               const FeatureSchema& schema, const LoadOptions& opts) {
    if (self_samples.empty()) throw DataError("cannot fit binning model on an empty self set");
    auto warn = opts.warn ? opts.warn : default_warn;

    BinningModel m;
    m.bins_.resize(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema.at(i).name == "service") {
            // Pre-binned: category codes 0..8 under an identity binning.
            m.bins_[i] = FeatureBinning{0, 9, 9, 1};
            continue;
        }
        if (!schema.is_continuous(i)) continue;
        double lo = std::get<double>(self_samples.front().fields.at(i));
        double hi = lo;
        for (const auto& s : self_samples) {
            double v = std::get<double>(s.fields.at(i));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        FeatureBinning b;
        b.x_min = lo;
        b.x_max = hi;
        b.k = *schema.at(i).bin_count;
        b.delta = compute_bin_width(lo, hi, b.k);
        if (b.delta == 0)
            warn("feature '" + schema.at(i).name +
                 "' has zero range on the self set; it will always encode to bin 0");
        m.bins_[i] = b;
    }
    return m;
}

EncodedSample BinningModel::encode(const LabeledSample& s, const FeatureSchema& schema,
                                   const ServiceCategoryMap& services,
                                   UnknownSymbolPolicy policy) const {
    EncodedSample out;
    out.label = s.label;
    out.genes.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const Feature& f = schema.at(i);
        if (f.kind == FeatureKind::Categorical) {
            const auto& tok = std::get<std::string>(s.fields.at(i));
            int code = protocol_code(tok);
            if (code == 3 && policy == UnknownSymbolPolicy::Reject)
                throw DataError("unknown protocol token: '" + tok + "'");
            out.genes.push_back(code);
        } else if (f.name == "service") {
            const auto& tok = std::get<std::string>(s.fields.at(i));
            out.genes.push_back(services.category(tok, policy) - 1);
        } else if (f.kind == FeatureKind::Binary) {
            out.genes.push_back(std::get<double>(s.fields.at(i)) != 0.0 ? 1 : 0);
        } else {
            const auto& b = bins_.at(i);
            if (!b)
                throw DataError("no fitted binning for continuous feature '" + f.name + "'");
            out.genes.push_back(assign_bin(std::get<double>(s.fields.at(i)), *b));
        }
    }
    return out;
}

std::vector<EncodedSample> BinningModel::encode_all(const std::vector<LabeledSample>& samples,
                                                    const FeatureSchema& schema,
                                                    const ServiceCategoryMap& services,
                                                    UnknownSymbolPolicy policy) const {
    std::vector<EncodedSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(encode(s, schema, services, policy));
    return out;
}

std::string BinningModel::fingerprint(const FeatureSchema& schema) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const Feature& f = schema.at(i);
        h = fnv1a(h, f.name);
        h = fnv1a(h, std::to_string(static_cast<int>(f.kind)));
        h = fnv1a(h, f.bin_count ? std::to_string(*f.bin_count) : "-");
        if (i < bins_.size() && bins_[i]) {
            const auto& b = *bins_[i];
            h = fnv1a(h, fmt_double(b.x_min));
            h = fnv1a(h, fmt_double(b.x_max));
            h = fnv1a(h, std::to_string(b.k));
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void BinningModel::save(const std::string& path, const FeatureSchema& schema) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write binning model: " + path);
    out << "# detgen binning model v1\n";
    out << "fingerprint " << fingerprint(schema) << "\n";
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (!bins_[i]) continue;
        const auto& b = *bins_[i];
        out << "bin " << schema.at(i).name << " " << fmt_double(b.x_min) << " "
            << fmt_double(b.x_max) << " " << b.k << " " << fmt_double(b.delta) << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

BinningModel BinningModel::load(const std::string& path, const FeatureSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open binning model: " + path);
    BinningModel m;
    m.bins_.resize(schema.size());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "fingerprint") continue;
        if (tag != "bin") throw DataError(path + ": unexpected line: " + line);
        std::string name;
        FeatureBinning b;
        ss >> name >> b.x_min >> b.x_max >> b.k >> b.delta;
        if (!ss) throw DataError(path + ": malformed bin line: " + line);
        bool found = false;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            if (schema.at(i).name == name) {
                m.bins_[i] = b;
                found = true;
                break;
            }
        }
        if (!found) throw DataError(path + ": unknown feature in model: " + name);
    }
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema.is_continuous(i) && !m.bins_[i])
            throw DataError(path + ": missing binning for feature '" + schema.at(i).name + "'");
    return m;
}

std::size_t BinningModel::continuous_feature_count() const {
    std::size_t n = 0;
    for (const auto& b : bins_)
        if (b) ++n;
    return n;
}

}  // namespace detgen
