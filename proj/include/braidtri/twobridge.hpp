#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "braidtri/triangulation.hpp"

namespace braidtri {

// Expands "RRRLLR" or run-length "R3L2R1" to plain letters; throws on bad input or length < 2.
std::string parse_twist_word(std::string_view text);

// Layers T_i, T_i' for i = 1..|word|-1, half-twist pairings between layers and a clasp at each end.
// Corners are relabelled where needed so that the result is oriented.
Triangulation build_two_bridge(std::string_view word);

struct TwoBridgeReport {
    std::string word;
    int tets = 0;
    int gluings = 0;
    ValidationReport validation;
    std::vector<int> edge_degrees;  // sorted
    int cusps = 0;
    std::vector<int> euler;         // per cusp
};

TwoBridgeReport twobridge_report(std::string_view word);

}  // namespace braidtri
