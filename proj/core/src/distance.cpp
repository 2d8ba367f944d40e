#include "detgen/distance.hpp"

#include <cmath>
#include <cstdlib>

#include "detgen/errors.hpp"

namespace detgen {

std::string to_string(Metric m) {
    switch (m) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Hamming: return "hamming";
        case Metric::Minkowski: return "minkowski";
        case Metric::PositionalHamming: return "positional-hamming";
    }
    return "?";
}

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "hamming") return Metric::Hamming;
    if (name == "minkowski") return Metric::Minkowski;
    if (name == "positional-hamming") return Metric::PositionalHamming;
    throw ConfigError("unknown metric: '" + name +
                      "' (expected euclidean|hamming|minkowski|positional-hamming)");
}

double distance(const Genes& x, const Genes& y, Metric metric, std::optional<double> p) {
    if (x.size() != y.size())
        throw DataError("distance: length mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    switch (metric) {
        case Metric::Euclidean: {
            double acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - y[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        }
        case Metric::Hamming: {
            double acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
            return acc;
        }
        case Metric::PositionalHamming: {
            double acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] != y[i] ? 1 : 0;
            return acc;
        }
        case Metric::Minkowski: {
            if (!p || *p <= 0)
                throw ConfigError("minkowski distance requires p > 0");
            double acc = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                acc += std::pow(std::abs(static_cast<double>(x[i] - y[i])), *p);
            return std::pow(acc, 1.0 / *p);
        }
    }
    throw ConfigError("unreachable metric");
}

}  // namespace detgen
