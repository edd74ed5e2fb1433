#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidtri/angles.hpp"
#include "braidtri/triangulation.hpp"
#include "braidtri/volume.hpp"

namespace braidtri {

using cplx = std::complex<double>;

// z on pair 0, z' = 1/(1-z) on pair 1, z'' = 1 - 1/z on pair 2.
struct TetShape {
    std::array<cplx, 3> z;
    cplx on_pair(int k) const { return z[k]; }
};

TetShape shape_from_angles(double alpha, double beta, double gamma);
std::vector<TetShape> shapes_from_angles(const AngleVector& theta);

struct EdgeResidual {
    int edge = 0;
    int degree = 0;
    cplx product;
    double modulus = 0;  // |product - 1|
    double angle = 0;    // |sum of args - 2 pi|
};

std::vector<EdgeResidual> edge_gluing_residuals(const Triangulation& tri, const std::vector<TetShape>& shapes);

// A closed walk of link triangles; step k leaves triangles[k] through side exits[k].
struct CuspCycle {
    std::vector<std::pair<int, int>> triangles;  // (tet, corner)
    std::vector<int> exits;
    int length() const { return int(triangles.size()); }
};

enum class CycleChoice { Shortest, Longest };

struct CuspResidual {
    int cusp = 0;
    std::array<CuspCycle, 2> basis;
    std::array<cplx, 2> log_holonomy;
    double residual = 0;       // max over the basis, after removing multiples of 2 pi i
    double all_cycles = 0;     // max over every fundamental cycle of the spanning tree
};

// Sum of signed log shape parameters along a cycle.
cplx log_holonomy(const Triangulation& tri, const std::vector<TetShape>& shapes, const CuspCycle& c);

std::vector<CuspResidual> completeness_residuals(const Triangulation& tri, const std::vector<TetShape>& shapes,
                                                 CycleChoice choice = CycleChoice::Shortest);

struct Tolerances {
    double edge = 1e-9;
    double cusp = 1e-8;
};

struct Verdict {
    bool geometric = false;
    std::string reason;
    double max_edge_residual = 0;
    double max_cusp_residual = 0;
    BoundaryReport boundary;
};

Verdict verdict(const MaxResult& r, const std::vector<EdgeResidual>& edges, const std::vector<CuspResidual>& cusps,
                int tets, const Tolerances& tol = {});

nlohmann::ordered_json to_json(const std::vector<EdgeResidual>& e, const std::vector<CuspResidual>& c);

}  // namespace braidtri
