#include "braidtri/pachner.hpp"

#include <stdexcept>

namespace braidtri {

namespace {

// Copies all tets except `drop`; gluings between survivors are kept.
Triangulation survivors(const Triangulation& tri, const std::vector<int>& drop,
                        std::vector<int>& index) {
    Triangulation out;
    index.assign(tri.size(), -1);
    for (int t = 0; t < tri.size(); ++t) {
        bool gone = false;
        for (int d : drop) gone |= d == t;
        if (!gone) index[t] = out.add_tet(tri.tet(t).name, tri.tet(t).labels);
    }
    for (const auto& fp : tri.pairings()) {
        const int a = index[fp.from.tet], b = index[fp.to.tet];
        if (a >= 0 && b >= 0) out.glue(a, fp.from.face, b, fp.map);
    }
    return out;
}

Pachner32Result move_3_2(const Triangulation& tri, const EdgeClass& e, bool swap,
                         const std::string& top_name, const std::string& bottom_name) {
    const auto& m = e.members;
    std::array<int, 3> T{}, N{}, S{}, E{}, F{};
    for (int k = 0; k < 3; ++k) {
        T[k] = m[k].tet;
        N[k] = m[k].a;
        S[k] = m[k].b;
        E[k] = m[k].exit;
        F[k] = 6 - N[k] - S[k] - E[k];
    }
    // Equator vertex X_k is corner F[k] of T[k] and corner E[k+1] of T[k+1].
    const std::array<int, 3> posT = swap ? std::array<int, 3>{1, 3, 2} : std::array<int, 3>{1, 2, 3};
    const std::array<int, 3> posB = swap ? std::array<int, 3>{1, 2, 3} : std::array<int, 3>{1, 3, 2};

    std::vector<int> index;
    Pachner32Result res;
    res.tri = survivors(tri, {T[0], T[1], T[2]}, index);
    auto& out = res.tri;
    const auto& L0 = tri.tet(T[0]).labels;
    std::array<std::string, 4> lt{L0[N[0]], "", "", ""}, lb{L0[S[0]], "", "", ""};
    for (int k = 0; k < 3; ++k) {
        lt[posT[k]] = tri.tet(T[k]).labels[F[k]];
        lb[posB[k]] = tri.tet(T[k]).labels[F[k]];
    }
    res.top = out.add_tet(top_name, lt);
    res.bottom = out.add_tet(bottom_name, lb);
    for (int k = 0; k < 3; ++k) {
        const int nxt = (k + 1) % 3;
        res.origin[0][0].push_back({T[k], N[k]});
        res.origin[1][0].push_back({T[k], S[k]});
        for (int side = 0; side < 2; ++side) {
            const auto& pos = side ? posB : posT;
            res.origin[side][pos[k]].push_back({T[k], F[k]});
            res.origin[side][pos[k]].push_back({T[nxt], E[nxt]});
        }
    }
    {
        std::array<int, 4> img{0, 0, 0, 0};
        for (int k = 0; k < 3; ++k) img[posT[k]] = posB[k];
        out.glue(res.top, 0, res.bottom, Perm4(img[0], img[1], img[2], img[3]));
    }

    // Old external face (k, face) -> new tet and corner map.
    auto remap = [&](int k, int face) {
        const int prev = (k + 2) % 3, nxt = (k + 1) % 3;
        std::array<int, 4> img{};
        int tet;
        if (face == S[k]) {
            tet = res.top;
            img[N[k]] = 0;
            img[E[k]] = posT[prev];
            img[F[k]] = posT[k];
            img[S[k]] = posT[nxt];
        } else {
            tet = res.bottom;
            img[S[k]] = 0;
            img[E[k]] = posB[prev];
            img[F[k]] = posB[k];
            img[N[k]] = posB[nxt];
        }
        return std::pair<int, Perm4>{tet, Perm4(img[0], img[1], img[2], img[3])};
    };
    auto member = [&](int t) {
        for (int k = 0; k < 3; ++k)
            if (T[k] == t) return k;
        return -1;
    };
    for (int k = 0; k < 3; ++k)
        for (int face : {S[k], N[k]}) {
            const auto& g = tri.gluing(T[k], face);
            if (!g) continue;
            const auto [nt, M] = remap(k, face);
            if (out.gluing(nt, M[face])) continue;
            const int j = member(g->tet);
            if (j >= 0) {
                const int gface = g->map[face];
                if (gface != S[j] && gface != N[j])
                    throw std::invalid_argument("pachner_3_2: external face glued to an internal face");
                const auto [nt2, M2] = remap(j, gface);
                out.glue(nt, M[face], nt2, M2.of(g->map).of(M.inverse()));
            } else {
                out.glue(nt, M[face], index[g->tet], g->map.of(M.inverse()));
            }
        }
    return res;
}

}  // namespace

Pachner32Result pachner_3_2(const Triangulation& tri, const EdgeClass& e, const std::string& top_name,
                            const std::string& bottom_name) {
    if (e.degree() != 3)
        throw std::invalid_argument("pachner_3_2: edge has degree " + std::to_string(e.degree()) +
                                    ", need 3");
    const auto& m = e.members;
    if (m[0].tet == m[1].tet || m[1].tet == m[2].tet || m[0].tet == m[2].tet)
        throw std::invalid_argument("pachner_3_2: edge tetrahedra are not distinct");
    auto res = move_3_2(tri, e, false, top_name, bottom_name);
    if (is_oriented(tri) && !is_oriented(res.tri)) res = move_3_2(tri, e, true, top_name, bottom_name);
    return res;
}

Triangulation pachner_2_0(const Triangulation& tri, const EdgeClass& e) {
    if (e.degree() != 2)
        throw std::invalid_argument("pachner_2_0: edge has degree " + std::to_string(e.degree()) +
                                    ", need 2");
    const auto& m0 = e.members[0];
    const int A = m0.tet, B = e.members[1].tet;
    if (A == B) throw std::invalid_argument("pachner_2_0: edge tetrahedra are not distinct");
    const int a = m0.a, b = m0.b, k = m0.exit, l = 6 - a - b - k;
    const auto& gk = tri.gluing(A, k);
    const auto& gl = tri.gluing(A, l);
    if (!gk || !gl || gk->tet != B || gl->tet != B || !(gk->map == gl->map))
        throw std::invalid_argument("pachner_2_0: tetrahedra are not folded across the edge");
    const Perm4 phi = gk->map;

    struct Sew {
        int x, fx, y;
        Perm4 map;
    };
    std::vector<Sew> sews;
    for (int x : {a, b}) {
        const auto& ga = tri.gluing(A, x);
        const auto& gb = tri.gluing(B, phi[x]);
        if (!ga || !gb) throw std::invalid_argument("pachner_2_0: outer face unglued");
        if (ga->tet == A || ga->tet == B || gb->tet == A || gb->tet == B)
            throw std::invalid_argument("pachner_2_0: outer faces glued to the collapsing pair");
        const Perm4 map = gb->map.of(phi).of(ga->map.inverse());
        sews.push_back({ga->tet, ga->map[x], gb->tet, map});
    }
    std::vector<int> index;
    Triangulation out = survivors(tri, {A, B}, index);
    for (const auto& s : sews) {
        if (s.x == s.y && s.map[s.fx] == s.fx)
            throw std::invalid_argument("pachner_2_0: collapse would glue a face to itself");
        out.glue(index[s.x], s.fx, index[s.y], s.map);
    }
    return out;
}

}  // namespace braidtri
