#pragma once

#include <optional>
#include <string>

#include "detgen/binning.hpp"

namespace detgen {

// `Hamming` is the coordinate-difference sum (on non-binary genes this is the
// Manhattan distance, but the reference formula carries that name).
// `PositionalHamming` is the count of differing positions, opt-in.
enum class Metric { Euclidean, Hamming, Minkowski, PositionalHamming };

std::string to_string(Metric m);
Metric parse_metric(const std::string& name);

double distance(const Genes& x, const Genes& y, Metric metric,
                std::optional<double> p = std::nullopt);

}  // namespace detgen
