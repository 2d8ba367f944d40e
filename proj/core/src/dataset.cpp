#include "detgen/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "detgen/errors.hpp"

namespace detgen {

namespace {

void default_warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

std::function<void(const std::string&)> warner(const LoadOptions& opts) {
    return opts.warn ? opts.warn : default_warn;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_number(const std::string& tok, std::size_t line_no, const std::string& feature) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw DataError("line " + std::to_string(line_no) + ": feature '" + feature +
                        "': not a number: '" + tok + "'");
    return v;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

ServiceCategoryMap ServiceCategoryMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open service mapping file: " + path);
    ServiceCategoryMap m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        std::string token;
        int cat;
        if (!(ss >> token)) continue;
        if (!(ss >> cat) || cat < 1 || cat > 9)
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected 'token<TAB>category' with category in 1..9");
        m.map_[token] = cat;
    }
    return m;
}

ServiceCategoryMap ServiceCategoryMap::from_pairs(
    const std::vector<std::pair<std::string, int>>& pairs) {
    ServiceCategoryMap m;
    for (const auto& [tok, cat] : pairs) m.map_[tok] = cat;
    return m;
}

int ServiceCategoryMap::category(const std::string& token, UnknownSymbolPolicy policy) const {
    auto it = map_.find(token);
    if (it != map_.end()) return it->second;
    if (policy == UnknownSymbolPolicy::Reject)
        throw DataError("unknown service token: '" + token + "'");
    return 9;
}

LabeledSample parse_record(const std::string& line, const FeatureSchema& schema,
                           std::size_t line_no, const LoadOptions& opts) {
    auto fields = split_csv(line);
    // 41 features + label, optionally followed by the difficulty column
    // (parsed and discarded).
    if (fields.size() != 42 && fields.size() != 43)
        throw DataError("line " + std::to_string(line_no) + ": expected 42 or 43 fields, got " +
                        std::to_string(fields.size()));
    const std::string& label_tok = fields[41];
    if (label_tok.empty())
        throw DataError("line " + std::to_string(line_no) + ": empty class label");
    if (fields.size() == 43 && !fields[42].empty())
        parse_number(fields[42], line_no, "difficulty");

    LabeledSample s;
    s.label = label_tok == "normal" ? Label::Normal : Label::Anomaly;
    s.fields.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const Feature& f = schema.at(i);
        const std::string& tok = fields.at(static_cast<std::size_t>(f.column));
        if (f.kind == FeatureKind::Categorical || f.name == "service") {
            s.fields.emplace_back(tok);
        } else {
            double v = parse_number(tok, line_no, f.name);
            if (f.kind == FeatureKind::Binary && v != 0.0 && v != 1.0) {
                warner(opts)("line " + std::to_string(line_no) + ": binary feature '" + f.name +
                             "' has value " + tok + ", clamping to 1");
                v = 1.0;
            }
            s.fields.emplace_back(v);
        }
    }
    return s;
}

std::vector<LabeledSample> load_records(const std::string& path, const FeatureSchema& schema,
                                        const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open record file: " + path);
    std::vector<LabeledSample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(parse_record(line, schema, line_no, opts));
    }
    return out;
}

std::vector<LabeledSample> split_self(const std::vector<LabeledSample>& samples,
                                      const LoadOptions& opts) {
    std::vector<LabeledSample> out;
    for (const auto& s : samples)
        if (s.label == Label::Normal) out.push_back(s);
    if (out.empty() && !samples.empty())
        warner(opts)("no Normal samples found; training on this set is impossible");
    return out;
}

std::string serialize_sample(const LabeledSample& s) {
    std::string out;
    for (std::size_t i = 0; i < s.fields.size(); ++i) {
        if (i) out += ',';
        if (const auto* str = std::get_if<std::string>(&s.fields[i]))
            out += *str;
        else
            out += format_number(std::get<double>(s.fields[i]));
    }
    return out;
}

}  // namespace detgen
