#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "braidtri/triangulation.hpp"

namespace braidtri {

struct Pachner32Result {
    Triangulation tri;
    int top = -1;     // new tet holding the first endpoint of the edge
    int bottom = -1;  // new tet holding the second endpoint
    // origin[k][c]: the (old tet, old corner) incidences merged into corner c of new tet k
    // (k = 0 top, 1 bottom).
    std::array<std::array<std::vector<std::pair<int, int>>, 4>, 2> origin;
};

// Replaces the three tetrahedra around a degree-3 edge by two sharing a face. Surviving tets keep
// their order; the new ones are appended (top, then bottom).
Pachner32Result pachner_3_2(const Triangulation& tri, const EdgeClass& e,
                            const std::string& top_name = "top",
                            const std::string& bottom_name = "bottom");

// Removes two tetrahedra folded onto each other along a degree-2 edge and sews their outer faces.
Triangulation pachner_2_0(const Triangulation& tri, const EdgeClass& e);

}  // namespace braidtri
