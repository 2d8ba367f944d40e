#include "detgen/detector_set.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "detgen/errors.hpp"

namespace detgen {

void DetectorSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write detector set: " + path);
    out << "# detgen detector set v1\n";
    out << "fingerprint " << schema_fingerprint << "\n";
    for (const auto& [k, v] : config_echo) out << "config " << k << " " << v << "\n";
    char buf[64];
    for (const auto& d : detectors) {
        out << "detector ";
        for (std::size_t i = 0; i < d.genes.size(); ++i) {
            if (i) out << ",";
            out << d.genes[i];
        }
        std::snprintf(buf, sizeof buf, "%.17g", d.fitness);
        out << " " << buf << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

DetectorSet DetectorSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open detector set: " + path);
    DetectorSet ds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "fingerprint") {
            ss >> ds.schema_fingerprint;
        } else if (tag == "config") {
            std::string k, v;
            ss >> k;
            std::getline(ss, v);
            if (!v.empty() && v.front() == ' ') v.erase(0, 1);
            ds.config_echo[k] = v;
        } else if (tag == "detector") {
            std::string genes_tok;
            Detector d;
            ss >> genes_tok >> d.fitness;
            if (!ss) throw DataError(path + ": malformed detector line: " + line);
            std::istringstream gs(genes_tok);
            std::string g;
            while (std::getline(gs, g, ',')) d.genes.push_back(std::stoi(g));
            ds.detectors.push_back(std::move(d));
        } else {
            throw DataError(path + ": unexpected line: " + line);
        }
    }
    return ds;
}

}  // namespace detgen
