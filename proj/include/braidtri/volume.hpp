#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidtri/angles.hpp"

namespace braidtri {

double lobachevsky(double x);

// Sum of Lobachevsky values over all slots; no constraint check.
double volume(const AngleVector& theta);
// Same, after checking the equalities of cs to within tol.
double volume(const ConstraintSystem& cs, const AngleVector& theta, double tol = 1e-9);

// Derivative of the volume along a tangent direction v (A v = 0).
double directional_derivative(const ConstraintSystem& cs, const AngleVector& theta, const AngleVector& v);

struct MaxOptions {
    double tol = 1e-12;
    int max_iter = 200;
    std::uint64_t seed = 1;
    int starts = 1;
    const Involution* iota = nullptr;  // symmetrizes the first start when given
};

struct StartOutcome {
    AngleVector initial;
    AngleVector theta;
    double volume = 0;
    double grad_norm = 0;
    int iterations = 0;
    bool interior = false;
};

struct MaxResult {
    enum class Status { Converged, Boundary, IterationCap, Infeasible };
    Status status = Status::Infeasible;
    AngleVector theta;
    double volume = 0;
    bool interior = false;
    double min_angle = 0;
    double grad_norm = 0;
    int iterations = 0;
    std::vector<int> flat_tets;       // tets with an angle within 1e-6 of 0 or pi
    std::vector<double> volume_trace;  // volume after each accepted step of the reported start
    std::vector<StartOutcome> starts;
    double start_spread = 0;  // largest max-norm distance between two start optima
    std::string message;
};

std::string status_name(MaxResult::Status s);

MaxResult maximize(const ConstraintSystem& cs, const MaxOptions& opt = {});

struct BoundaryReport {
    bool interior = false;
    std::vector<int> flat_tets;
    bool flat_pattern = false;  // every listed tet is (0,0,pi) up to order within 1e-6
    bool all_flat = false;      // every tet is listed
    double volume = 0;
    std::string summary;
};

BoundaryReport boundary_diagnosis(const MaxResult& r, int tets, double tol = 1e-6);

// Random points of the open polytope by hit-and-run from x.
AngleVector random_interior_point(const AngleSpace& space, const AngleVector& x, std::uint64_t seed,
                                  int steps = 20);

nlohmann::ordered_json to_json(const MaxResult& r, const std::vector<std::string>& tet_names);

}  // namespace braidtri
