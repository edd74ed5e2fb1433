#pragma once

// Values frozen from the test-side oracles (freeze_goldens.cpp): quadrature Lobachevsky,
// developing-map Gauss-Newton volumes, union-find censuses, floating LU ranks.

#include <map>
#include <string>
#include <vector>

namespace golden {

constexpr double lob_pi_6 = 0.50747080320482674;
constexpr double lob_pi_3 = 0.33831386880321801;
constexpr double lob_pi_4 = 0.45798279708860951;

// complete structure volume of tau_p, p = 1..12
inline const std::vector<double> tau_volume = {
    2.828122088330784,  3.6638623767088756, 4.1249032518076767, 4.4153324774538669,
    4.6119613744973167, 4.7517019655179009, 4.8546633386501465, 4.9327140585206699,
    4.9932719729209945, 5.0411812564394216, 5.0797187330518812, 5.1111665875212839,
};

inline const std::map<std::string, double> word_volume = {
    {"RL", 2.0298832128193078},     {"LR", 2.0298832128193078},     {"RLR", 3.6638623767088765},
    {"RRL", 2.8281220883307827},    {"RRRLLR", 6.9475554485925128}, {"RLRLRL", 9.6728077307946858},
    {"RRLL", 4.0597664256386121},   {"RLLLR", 6.1381387890852483},  {"RRLRRR", 5.5004864163472362},
    {"RRRLRR", 5.5004864163472362},
};

struct Census {
    std::vector<int> degrees;  // sorted
    std::vector<int> euler;
};

inline const std::map<std::string, Census> word_census = {
    {"RR", {{2, 2, 4, 4}, {2, 2}}},
    {"RL", {{6, 6}, {0}}},
    {"RRRLLR", {{3, 3, 4, 4, 4, 4, 7, 7, 8, 16}, {0, 0}}},
    {"RRR", {{3, 3, 3, 3, 12}, {2}}},
    {"RRRR", {{3, 3, 3, 3, 4, 4, 8, 8}, {2, 2}}},
};

// rank of the constraint matrix and dimension of the affine solution space of tau_p, p = 1..12
inline const std::vector<int> tau_rank = {5, 8, 13, 16, 21, 24, 29, 32, 37, 40, 45, 48};
inline const std::vector<int> tau_dim = {4, 7, 8, 11, 12, 15, 16, 19, 20, 23, 24, 27};

}  // namespace golden
