#pragma once

// Shared helpers for the test suites: a seeded generator for random inputs and
// small table edits on top of the bundled data.

#include <map>
#include <random>
#include <sstream>
#include <string>

#include "mrnaco/mrnaco.hpp"

namespace testing_support {

inline std::string random_amino(std::mt19937_64& rng, std::size_t len) {
    std::uniform_int_distribution<std::size_t> pick(0, mrnaco::kAminoAcids.size() - 1);
    std::string s;
    for (std::size_t k = 0; k < len; ++k) s += mrnaco::kAminoAcids[pick(rng)];
    return s;
}

inline std::string random_rna(std::mt19937_64& rng, std::size_t len) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::string s;
    for (std::size_t k = 0; k < len; ++k) s += "ACGU"[pick(rng)];
    return s;
}

inline mrnaco::Theta random_theta(std::mt19937_64& rng, double scale = 10.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

/// Bundled table text with every row of the given amino acids replaced.
inline std::string table_with(const std::map<char, std::string>& rows) {
    std::istringstream in{std::string(mrnaco::bundled::kHumanCodonTable)};
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.size() > 1 && line[1] == ',' && rows.count(line[0])) continue;
        out += line + "\n";
    }
    for (const auto& [aa, text] : rows) out += text;
    return out;
}

}  // namespace testing_support
