// Prints oracle values for golden.hpp. Uses only the builders from the library.

#include <cstdio>
#include <numbers>

#include "braidtri/tau.hpp"
#include "braidtri/twobridge.hpp"
#include "oracles/census_union_find.hpp"
#include "oracles/gluing_newton.hpp"
#include "oracles/lobachevsky_quadrature.hpp"

int main() {
    constexpr double pi = std::numbers::pi;
    std::printf("lob(pi/6) %.17g\nlob(pi/3) %.17g\nlob(pi/4) %.17g\n", oracle::lobachevsky(pi / 6),
                oracle::lobachevsky(pi / 3), oracle::lobachevsky(pi / 4));
    for (int p = 1; p <= 12; ++p) {
        const auto s = oracle::solve_gluing(braidtri::build_tau(p));
        std::printf("tau %d volume %.17g residual %.3g iterations %d min_arg %.6g converged %d starts %d\n", p, s.volume,
                    s.residual, s.iterations, s.min_arg, s.converged, s.starts);
    }
    for (const char* w : {"RL", "LR", "RLR", "RRL", "RRRLLR", "RLRLRL", "RRLL", "LLRR", "RLLLR", "RRLRRR", "RRRLRR"}) {
        const auto tri = braidtri::build_two_bridge(w);
        const auto s = oracle::solve_gluing(tri);
        std::printf("word %s volume %.17g residual %.3g iterations %d min_arg %.6g converged %d starts %d\n", w, s.volume,
                    s.residual, s.iterations, s.min_arg, s.converged, s.starts);
    }
    for (const char* w : {"RR", "RL", "RRRLLR", "RRR", "RRRR"}) {
        const auto tri = braidtri::build_two_bridge(w);
        std::printf("census %s degrees", w);
        for (int d : oracle::edge_degrees(tri)) std::printf(" %d", d);
        std::printf(" euler");
        for (int e : oracle::cusp_euler(tri)) std::printf(" %d", e);
        std::printf("\n");
    }
    for (int p = 1; p <= 12; ++p) {
        const auto tri = braidtri::build_tau(p);
        const int n = tri.size();
        const auto P = oracle::detail::setup(tri);
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + int(P.edge_slots.size()), 3 * n);
        for (int t = 0; t < n; ++t)
            for (int k = 0; k < 3; ++k) A(t, 3 * t + k) = 1;
        for (size_t e = 0; e < P.edge_slots.size(); ++e)
            for (int sl : P.edge_slots[e]) A(n + int(e), sl) += 1;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        std::printf("rank tau %d %d dim %d\n", p, int(lu.rank()), 3 * n - int(lu.rank()));
    }
    for (int p : {1, 2, 3, 50}) {
        const auto tri = braidtri::build_tau(p);
        std::printf("census tau %d degrees", p);
        for (int d : oracle::edge_degrees(tri)) std::printf(" %d", d);
        std::printf(" euler");
        for (int e : oracle::cusp_euler(tri)) std::printf(" %d", e);
        std::printf("\n");
    }
}
