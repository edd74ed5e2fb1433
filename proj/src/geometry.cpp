#include "braidtri/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "braidtri/exact.hpp"

namespace braidtri {

namespace {

constexpr double kPi = std::numbers::pi;

double mod_2pi_i(cplx s) {
    const double k = std::round(s.imag() / (2 * kPi));
    return std::abs(s - cplx(0, 2 * kPi * k));
}

// The corners other than v in counterclockwise order seen from v.
std::array<int, 3> ccw_others(int v) {
    std::array<int, 3> q{};
    int k = 0;
    for (int c = 0; c < 4; ++c)
        if (c != v) q[k++] = c;
    if (Perm4(v, q[0], q[1], q[2]).sign() < 0) std::swap(q[1], q[2]);
    return q;
}

struct LinkGraph {
    std::vector<std::pair<int, int>> tris;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::array<int, 4>> nb;     // neighbour triangle across side f
    std::vector<std::array<int, 4>> entry;  // side of the neighbour we arrive through
    std::map<std::pair<int, int>, int> dual;  // (tri, side) -> dual edge id (shared by both ends)
    std::vector<std::pair<int, int>> dual_first;  // canonical (tri, side) of each dual edge
};

LinkGraph link_graph(const Triangulation& tri, const CuspLink& link) {
    LinkGraph g;
    g.tris = link.triangles;
    for (int i = 0; i < int(g.tris.size()); ++i) g.index[g.tris[i]] = i;
    g.nb.resize(g.tris.size());
    g.entry.resize(g.tris.size());
    for (int i = 0; i < int(g.tris.size()); ++i) {
        const auto [t, v] = g.tris[i];
        g.nb[i].fill(-1);
        g.entry[i].fill(-1);
        for (int f = 0; f < 4; ++f) {
            if (f == v) continue;
            const auto& gl = *tri.gluing(t, f);
            g.nb[i][f] = g.index.at({gl.tet, gl.map[v]});
            g.entry[i][f] = gl.map[f];
        }
    }
    for (int i = 0; i < int(g.tris.size()); ++i)
        for (int f = 0; f < 4; ++f) {
            if (g.nb[i][f] < 0 || g.dual.count({i, f})) continue;
            const int id = int(g.dual_first.size());
            g.dual[{i, f}] = id;
            g.dual[{g.nb[i][f], g.entry[i][f]}] = id;
            g.dual_first.emplace_back(i, f);
        }
    return g;
}

QVec cycle_vector(const LinkGraph& g, const std::vector<int>& local, const std::vector<int>& exits) {
    QVec v(g.dual_first.size());
    for (size_t k = 0; k < local.size(); ++k) {
        const int id = g.dual.at({local[k], exits[k]});
        v[id] += g.dual_first[id] == std::pair<int, int>{local[k], exits[k]} ? 1 : -1;
    }
    return v;
}

}  // namespace

TetShape shape_from_angles(double alpha, double beta, double gamma) {
    for (double a : {alpha, beta, gamma})
        if (!(a > 0 && a < kPi)) throw std::invalid_argument("shape_from_angles: angle outside (0, pi)");
    TetShape s;
    const cplx z = std::polar(std::sin(beta) / std::sin(gamma), alpha);
    s.z = {z, 1.0 / (1.0 - z), 1.0 - 1.0 / z};
    return s;
}

std::vector<TetShape> shapes_from_angles(const AngleVector& theta) {
    std::vector<TetShape> out;
    for (size_t t = 0; 3 * t < theta.size(); ++t)
        out.push_back(shape_from_angles(theta[3 * t], theta[3 * t + 1], theta[3 * t + 2]));
    return out;
}

std::vector<EdgeResidual> edge_gluing_residuals(const Triangulation& tri, const std::vector<TetShape>& shapes) {
    std::vector<EdgeResidual> out;
    const auto classes = edge_classes(tri);
    for (int c = 0; c < int(classes.size()); ++c) {
        EdgeResidual r;
        r.edge = c;
        r.degree = classes[c].degree();
        cplx prod = 1;
        double args = 0;
        for (const auto& m : classes[c].members) {
            const cplx z = shapes.at(m.tet).on_pair(edge_pair(m.a, m.b));
            prod *= z;
            args += std::arg(z);
        }
        r.product = prod;
        r.modulus = std::abs(prod - 1.0);
        r.angle = std::abs(args - 2 * kPi);
        out.push_back(r);
    }
    return out;
}

cplx log_holonomy(const Triangulation& tri, const std::vector<TetShape>& shapes, const CuspCycle& c) {
    cplx sum = 0;
    const int n = c.length();
    for (int k = 0; k < n; ++k) {
        const auto [t, v] = c.triangles[k];
        // Side we came in through: the previous step's exit, seen from this tet.
        const int prev = (k + n - 1) % n;
        const int in = tri.gluing(c.triangles[prev].first, c.exits[prev])->map[c.exits[prev]];
        const int out = c.exits[k];
        if (in == out) continue;
        int m = 0;
        while (m == v || m == in || m == out) ++m;
        const auto q = ccw_others(v);
        const int pi = int(std::find(q.begin(), q.end(), in) - q.begin());
        const int po = int(std::find(q.begin(), q.end(), out) - q.begin());
        const cplx lz = std::log(shapes.at(t).on_pair(edge_pair(v, m)));
        sum += po == (pi + 1) % 3 ? -lz : lz;
    }
    return sum;
}

std::vector<CuspResidual> completeness_residuals(const Triangulation& tri, const std::vector<TetShape>& shapes,
                                                 CycleChoice choice) {
    std::vector<CuspResidual> out;
    const auto links = cusp_links(tri);
    const auto classes = edge_classes(tri);
    for (const auto& link : links) {
        if (link.euler_characteristic() != 0)
            throw std::runtime_error("completeness_residuals: cusp " + std::to_string(link.id) + " is not a torus");
        const LinkGraph g = link_graph(tri, link);
        const int T = int(g.tris.size());

        // Breadth-first tree.
        std::vector<int> parent(T, -1), up(T, -1), down(T, -1), depth(T, 0);
        std::vector<bool> seen(T, false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        std::vector<std::vector<bool>> tree(T, std::vector<bool>(4, false));
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int f = 0; f < 4; ++f) {
                const int y = g.nb[x][f];
                if (y < 0 || seen[y]) continue;
                seen[y] = true;
                parent[y] = x;
                down[y] = f;           // side of parent leading to y
                up[y] = g.entry[x][f];  // side of y leading to parent
                depth[y] = depth[x] + 1;
                tree[x][f] = true;
                tree[y][up[y]] = true;
                q.push(y);
            }
        }

        // Fundamental cycles, one per non-tree dual edge.
        std::vector<std::pair<std::vector<int>, std::vector<int>>> cycles;
        for (int id = 0; id < int(g.dual_first.size()); ++id) {
            const auto [x, f] = g.dual_first[id];
            if (tree[x][f]) continue;
            const int y = g.nb[x][f];
            std::vector<int> tris{x}, exits{f};
            // y up to the common ancestor, then down to x.
            int a = y, b = x;
            std::vector<int> ups, downs;
            while (a != b) {
                if (depth[a] >= depth[b]) {
                    ups.push_back(a);
                    a = parent[a];
                } else {
                    downs.push_back(b);
                    b = parent[b];
                }
            }
            for (int node : ups) {
                tris.push_back(node);
                exits.push_back(up[node]);
            }
            int cur = a;  // common ancestor
            std::reverse(downs.begin(), downs.end());
            for (int node : downs) {
                tris.push_back(cur);
                exits.push_back(down[node]);
                cur = node;
            }
            cycles.emplace_back(std::move(tris), std::move(exits));
        }

        // Vertex loops span the null-homologous part.
        std::vector<QVec> rows;
        for (const auto& ec : classes)
            for (int end = 0; end < 2; ++end) {
                std::vector<int> tris, exits;
                for (const auto& m : ec.members) {
                    const int corner = end == 0 ? m.a : m.b;
                    const auto it = g.index.find({m.tet, corner});
                    if (it == g.index.end()) break;
                    tris.push_back(it->second);
                    exits.push_back(m.exit);
                }
                if (int(tris.size()) == ec.degree()) rows.push_back(cycle_vector(g, tris, exits));
            }
        int rank = rational_rank(rows);

        std::vector<int> order(cycles.size());
        for (int i = 0; i < int(order.size()); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const auto la = cycles[a].first.size(), lb = cycles[b].first.size();
            return choice == CycleChoice::Shortest ? la < lb : la > lb;
        });
        CuspResidual cr;
        cr.cusp = link.id;
        int chosen = 0;
        auto to_cycle = [&](int i) {
            CuspCycle c;
            for (int x : cycles[i].first) c.triangles.push_back(g.tris[x]);
            c.exits = cycles[i].second;
            return c;
        };
        for (int i : order) {
            if (chosen == 2) break;
            auto trial = rows;
            trial.push_back(cycle_vector(g, cycles[i].first, cycles[i].second));
            const int r = rational_rank(trial);
            if (r == rank + 1) {
                rows = std::move(trial);
                rank = r;
                cr.basis[chosen] = to_cycle(i);
                cr.log_holonomy[chosen] = log_holonomy(tri, shapes, cr.basis[chosen]);
                cr.residual = std::max(cr.residual, mod_2pi_i(cr.log_holonomy[chosen]));
                ++chosen;
            }
        }
        if (chosen != 2) throw std::runtime_error("completeness_residuals: could not find two independent cycles");
        for (size_t i = 0; i < cycles.size(); ++i)
            cr.all_cycles = std::max(cr.all_cycles, mod_2pi_i(log_holonomy(tri, shapes, to_cycle(int(i)))));
        out.push_back(std::move(cr));
    }
    return out;
}

Verdict verdict(const MaxResult& r, const std::vector<EdgeResidual>& edges, const std::vector<CuspResidual>& cusps,
                int tets, const Tolerances& tol) {
    Verdict v;
    v.boundary = boundary_diagnosis(r, tets);
    for (const auto& e : edges) v.max_edge_residual = std::max({v.max_edge_residual, e.modulus, e.angle});
    for (const auto& c : cusps) v.max_cusp_residual = std::max(v.max_cusp_residual, c.residual);
    if (!r.interior) {
        v.reason = "maximizer is not interior: " + v.boundary.summary;
    } else if (r.status != MaxResult::Status::Converged) {
        v.reason = "optimizer stopped with status " + status_name(r.status);
    } else if (edges.empty() || v.max_edge_residual > tol.edge) {
        v.reason = "edge gluing residual " + std::to_string(v.max_edge_residual) + " above tolerance";
    } else if (cusps.empty() || v.max_cusp_residual > tol.cusp) {
        v.reason = "cusp completeness residual " + std::to_string(v.max_cusp_residual) + " above tolerance";
    } else {
        v.geometric = true;
        v.reason = "interior maximizer with gluing and completeness residuals within tolerance";
    }
    return v;
}

nlohmann::ordered_json to_json(const std::vector<EdgeResidual>& e, const std::vector<CuspResidual>& c) {
    nlohmann::ordered_json j;
    auto ej = nlohmann::ordered_json::array();
    for (const auto& r : e)
        ej.push_back({{"edge", r.edge}, {"degree", r.degree}, {"modulus", r.modulus}, {"angle", r.angle}});
    j["edges"] = ej;
    auto cj = nlohmann::ordered_json::array();
    for (const auto& r : c) {
        auto hol = nlohmann::ordered_json::array();
        for (int k = 0; k < 2; ++k)
            hol.push_back({{"length", r.basis[k].length()},
                           {"re", r.log_holonomy[k].real()},
                           {"im", r.log_holonomy[k].imag()}});
        cj.push_back({{"cusp", r.cusp}, {"residual", r.residual}, {"all_cycles", r.all_cycles}, {"cycles", hol}});
    }
    j["cusps"] = cj;
    return j;
}

}  // namespace braidtri
