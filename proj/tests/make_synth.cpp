// Writes a synthetic three-class dataset for CLI smoke testing.
// Usage: drowsy_make_synth <root> [subjects_per_class] [first] [last] [seed]

#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "support/synthetic.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: drowsy_make_synth <root> [subjects_per_class] [first] [last] [seed]\n";
        return 1;
    }
    std::filesystem::path root = argv[1];
    int subjects_per_class = argc > 2 ? std::atoi(argv[2]) : 1;
    int64_t first = argc > 3 ? std::atoll(argv[3]) : 0;
    int64_t last = argc > 4 ? std::atoll(argv[4]) : 600;
    uint64_t seed = argc > 5 ? std::strtoull(argv[5], nullptr, 10) : 1234;
    synth::write_three_class_dataset(root, subjects_per_class, first, last, seed);
    std::cout << "wrote " << subjects_per_class * 3 << " recordings under " << root << "\n";
    return 0;
}
