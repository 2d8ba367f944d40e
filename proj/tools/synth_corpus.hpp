#pragma once

#include <cstdint>
#include <string>

namespace detgen::synth {

// Writes an NSL-KDD-format benchmark corpus with the same file names, class
// balance, and coarse traffic structure as the public NSL-KDD release:
//   KDDTrain+_20Percent.txt, KDDTrain+.txt, KDDTest+.txt
// Fully deterministic given the seed. `scale` shrinks every class count
// proportionally for quick test runs.
void write_corpus(const std::string& dir, std::uint64_t seed, double scale = 1.0);

}  // namespace detgen::synth
