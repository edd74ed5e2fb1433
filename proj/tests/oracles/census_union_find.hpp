#pragma once

// Edge classes and vertex-link counts by union-find over raw face gluings.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "braidtri/triangulation.hpp"

namespace oracle {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline int pair_slot(int a, int b) {
    static const int t[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return t[a][b];
}

// class sizes, sorted
inline std::vector<int> edge_degrees(const braidtri::Triangulation& tri) {
    const int n = tri.size();
    UnionFind uf(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) continue;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    if (a == f || b == f) continue;
                    uf.unite(6 * t + pair_slot(a, b), 6 * g->tet + pair_slot(g->map[a], g->map[b]));
                }
        }
    std::map<int, int> size;
    for (int s = 0; s < 6 * n; ++s) ++size[uf.find(s)];
    std::vector<int> out;
    for (auto [r, c] : size) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

// class id per slot 6t + pair_slot(a, b)
inline std::vector<int> edge_class_of_slot(const braidtri::Triangulation& tri) {
    const int n = tri.size();
    UnionFind uf(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (a != f && b != f) uf.unite(6 * t + pair_slot(a, b), 6 * g->tet + pair_slot(g->map[a], g->map[b]));
        }
    std::map<int, int> id;
    std::vector<int> out(6 * n);
    for (int s = 0; s < 6 * n; ++s) {
        const int r = uf.find(s);
        if (!id.count(r)) id[r] = int(id.size());
        out[s] = id[r];
    }
    return out;
}

// Cusp count and per-cusp V - E + F of the vertex link.
inline std::vector<int> cusp_euler(const braidtri::Triangulation& tri) {
    const int n = tri.size();
    UnionFind corners(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int c = 0; c < 4; ++c)
                if (c != f) corners.unite(4 * t + c, 4 * g->tet + g->map[c]);
        }
    // link vertices are edge ends: end of edge {c, d} at corner c, index 16t + 4c + d
    UnionFind ends(16 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    if (c != d && c != f && d != f) ends.unite(16 * t + 4 * c + d, 16 * g->tet + 4 * g->map[c] + g->map[d]);
        }
    std::map<int, int> cusp;
    for (int s = 0; s < 4 * n; ++s)
        if (!cusp.count(corners.find(s))) cusp[corners.find(s)] = int(cusp.size());
    std::vector<int> V(cusp.size()), E(cusp.size()), F(cusp.size());
    std::map<int, int> end_cusp;
    for (int t = 0; t < n; ++t)
        for (int c = 0; c < 4; ++c) {
            const int k = cusp[corners.find(4 * t + c)];
            ++F[k];
            E[k] += 3;  // each side is shared by two triangles
            for (int d = 0; d < 4; ++d)
                if (d != c) end_cusp[ends.find(16 * t + 4 * c + d)] = k;
        }
    for (const auto& [e, k] : end_cusp) ++V[k];
    std::vector<int> out;
    for (size_t k = 0; k < cusp.size(); ++k) out.push_back(V[k] - E[k] / 2 + F[k]);
    return out;
}

}  // namespace oracle
