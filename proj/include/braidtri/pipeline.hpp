#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidtri/angles.hpp"
#include "braidtri/geometry.hpp"
#include "braidtri/tau.hpp"
#include "braidtri/triangulation.hpp"
#include "braidtri/volume.hpp"

namespace braidtri {

struct SolveOptions {
    MaxOptions max;
    Tolerances tol;
};

// constraints -> interior point -> maximize -> shapes -> residuals -> verdict
struct SolveReport {
    std::string source;
    int tets = 0;
    int cusps = 0;
    std::vector<int> cusp_euler;
    ConstraintSystem cs;
    InteriorPoint lp;
    MaxResult max;
    std::vector<TetShape> shapes;
    std::vector<EdgeResidual> edges;
    std::vector<CuspResidual> cusp_residuals;
    Verdict verdict;
    bool geometric() const { return verdict.geometric; }
};

SolveReport solve_triangulation(const Triangulation& tri, const SolveOptions& opt = {},
                                const Involution* iota = nullptr, std::string source = "");
// build_tau(p) with its involution supplied to the optimizer.
SolveReport solve_tau(int p, const SolveOptions& opt = {});
SolveReport solve_two_bridge(const std::string& word, const SolveOptions& opt = {});

nlohmann::ordered_json to_json(const SolveReport& r);

}  // namespace braidtri
