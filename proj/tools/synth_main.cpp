#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "synth_corpus.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generate a synthetic NSL-KDD-format benchmark corpus"};
    std::string out_dir = ".";
    std::uint64_t seed = 77;
    double scale = 1.0;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "rng seed");
    app.add_option("--scale", scale, "shrink all class counts by this factor")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        detgen::synth::write_corpus(out_dir, seed, scale);
        std::cout << "wrote KDDTrain+_20Percent.txt, KDDTrain+.txt, KDDTest+.txt to " << out_dir
                  << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
