#pragma once

#include <array>
#include <string>
#include <vector>

#include "braidtri/triangulation.hpp"

namespace braidtri {

// Tets t1', w0', w1, w1', ..., w_{p-1}, w_{p-1}', w_p, m2, b1, b2' (2p+4 of them).
Triangulation build_hat_tau(int p);
// Tets w0', w1, w1', ..., w_{p-1}, w_{p-1}', w_p, s (2p+1 of them).
Triangulation build_tau(int p);
// 3-2 move at [m2(24)] then 2-0 move at [t1'(23)].
Triangulation simplify_hat_to_tau(const Triangulation& hat, int p, int* mid_tets = nullptr);

std::string w_name(int i, bool primed);

enum Role { R = 0, B = 1, D = 2 };

struct TautVeeringStructure {
    std::vector<std::array<int, 3>> role_pair;  // per tet: edge pair carrying R, B, D
    std::vector<bool> red;                      // per edge class
    std::vector<std::array<bool, 4>> top_face;  // per tet and face: face lies on top
};

TautVeeringStructure assign_veering(const Triangulation& tri);

struct VeeringCheck {
    bool ok = false;
    int handedness = 0;  // +1: pi, blue, red counterclockwise in every tet; -1: the mirror
    std::vector<std::string> violations;
};

VeeringCheck check_veering(const Triangulation& tri, const TautVeeringStructure& st);

struct Involution {
    int p = 0;
    std::vector<int> tet_map;
    std::vector<Perm4> corner_map;
    std::vector<std::array<int, 3>> pair_map;  // pair k of t goes to pair pair_map[t][k] of tet_map[t]
};

// The symmetry of build_tau(p) fixing s and sending w_i' to w_{p-i}.
Involution involution(int p);
Involution involution(const Triangulation& tau, int p);

}  // namespace braidtri
