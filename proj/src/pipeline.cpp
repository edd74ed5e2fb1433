#include "braidtri/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "braidtri/twobridge.hpp"

namespace braidtri {

namespace {

template <class F>
void stage(const char* name, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("stage ") + name + ": " + e.what());
    }
}

}  // namespace

SolveReport solve_triangulation(const Triangulation& tri, const SolveOptions& opt, const Involution* iota,
                                std::string source) {
    SolveReport r;
    r.source = std::move(source);
    r.tets = tri.size();
    stage("cusps", [&] {
        for (const auto& l : cusp_links(tri)) r.cusp_euler.push_back(l.euler_characteristic());
        r.cusps = int(r.cusp_euler.size());
    });
    AngleSpace space;
    stage("constraints", [&] {
        r.cs = build_constraints(tri);
        space = angle_space(r.cs);
    });
    stage("interior point", [&] { r.lp = find_interior_point(r.cs, space); });
    stage("maximize", [&] {
        MaxOptions mo = opt.max;
        mo.iota = iota;
        r.max = maximize(r.cs, mo);
    });
    const bool tori = std::all_of(r.cusp_euler.begin(), r.cusp_euler.end(), [](int e) { return e == 0; });
    if (r.max.interior) {
        stage("shapes", [&] { r.shapes = shapes_from_angles(r.max.theta); });
        stage("edge residuals", [&] { r.edges = edge_gluing_residuals(tri, r.shapes); });
        if (tori) stage("cusp residuals", [&] { r.cusp_residuals = completeness_residuals(tri, r.shapes); });
    }
    stage("verdict", [&] { r.verdict = verdict(r.max, r.edges, r.cusp_residuals, r.tets, opt.tol); });
    if (!tori) {
        r.verdict.geometric = false;
        r.verdict.reason = "cusp link is not a torus; " + r.verdict.reason;
    }
    return r;
}

SolveReport solve_tau(int p, const SolveOptions& opt) {
    const Triangulation tri = build_tau(p);
    const Involution iota = involution(tri, p);
    return solve_triangulation(tri, opt, &iota, "p=" + std::to_string(p));
}

SolveReport solve_two_bridge(const std::string& word, const SolveOptions& opt) {
    const std::string w = parse_twist_word(word);
    return solve_triangulation(build_two_bridge(w), opt, nullptr, w);
}

nlohmann::ordered_json to_json(const SolveReport& r) {
    nlohmann::ordered_json j;
    j["source"] = r.source;
    j["tets"] = r.tets;
    j["cusps"] = r.cusps;
    j["cusp_euler"] = r.cusp_euler;
    j["verdict"] = r.verdict.geometric ? "Geometric" : "Degenerate";
    j["reason"] = r.verdict.reason;
    j["lp"] = {{"status", r.lp.status == InteriorPoint::Status::Interior   ? "interior"
                          : r.lp.status == InteriorPoint::Status::Boundary ? "boundary"
                                                                           : "infeasible"},
               {"slack", r.lp.slack},
               {"reason", r.lp.reason}};
    j["max"] = to_json(r.max, r.cs.tet_names);
    j["max_edge_residual"] = r.verdict.max_edge_residual;
    j["max_cusp_residual"] = r.verdict.max_cusp_residual;
    j["residuals"] = to_json(r.edges, r.cusp_residuals);
    const auto& b = r.verdict.boundary;
    j["boundary"] = {{"interior", b.interior},
                     {"flat_tets", b.flat_tets},
                     {"flat_pattern", b.flat_pattern},
                     {"all_flat", b.all_flat},
                     {"summary", b.summary}};
    return j;
}

}  // namespace braidtri
