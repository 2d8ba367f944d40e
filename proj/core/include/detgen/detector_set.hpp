#pragma once

#include <map>
#include <string>
#include <vector>

#include "detgen/binning.hpp"

namespace detgen {

struct Detector {
    Genes genes;
    double fitness = 0;
};

// Mature detectors sorted by fitness descending, tied to the encoding they
// were trained under via the schema fingerprint.
struct DetectorSet {
    std::vector<Detector> detectors;
    std::string schema_fingerprint;
    std::map<std::string, std::string> config_echo;

    void save(const std::string& path) const;
    static DetectorSet load(const std::string& path);
};

}  // namespace detgen
