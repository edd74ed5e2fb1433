#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "braidtri/exact.hpp"
#include "braidtri/tau.hpp"
#include "braidtri/triangulation.hpp"

namespace braidtri {

// Angle slot 3t+k holds the angle on edge pair k of tet t (pairs {01,23}, {02,13}, {03,12}).
using AngleVector = std::vector<double>;

struct ConstraintSystem {
    int tets = 0;
    int edges = 0;
    std::vector<std::vector<int>> A;  // tet rows first, then edge rows
    std::vector<int> rhs_pi;          // rhs in units of pi
    std::vector<std::string> tet_names;

    int rows() const { return int(A.size()); }
    int cols() const { return 3 * tets; }
    std::vector<double> rhs() const;
    double residual(const AngleVector& theta) const;  // max |A theta - rhs|
};

ConstraintSystem build_constraints(const Triangulation& tri);

// Exact affine solution set plus an orthonormal basis of its direction space.
struct AngleSpace {
    AffineSolution exact;
    Eigen::VectorXd base;  // a solution, radians
    Eigen::MatrixXd Q;     // columns span {v : A v = 0}
    int dimension() const { return int(Q.cols()); }
    Eigen::VectorXd project(const Eigen::VectorXd& theta) const;
};

AngleSpace angle_space(const ConstraintSystem& cs);

struct InteriorPoint {
    enum class Status { Interior, Boundary, Infeasible } status = Status::Infeasible;
    AngleVector theta;            // empty when infeasible
    double slack = 0;             // min over slots of min(theta, pi - theta)
    std::vector<double> certificate;  // one multiplier per row of A
    std::string reason;
    bool feasible() const { return status == Status::Interior; }
};

// Maximizes the smallest angle over the polytope.
InteriorPoint find_interior_point(const ConstraintSystem& cs);
InteriorPoint find_interior_point(const ConstraintSystem& cs, const AngleSpace& space);

// Slots that vanish at every point of the closed polytope.
std::vector<bool> forced_zero_slots(const ConstraintSystem& cs, const AngleSpace& space);

// The face of the closed polytope on which the `zero` slots vanish.
struct FacePoint {
    ConstraintSystem cs;  // original rows plus one row per zero slot
    AngleSpace space;
    InteriorPoint point;  // maximizes the smallest of the remaining angles
};

FacePoint restrict_to_face(const ConstraintSystem& cs, const std::vector<bool>& zero);

AngleVector apply_involution(const AngleVector& theta, const Involution& iota);
AngleVector symmetrize(const AngleVector& theta, const Involution& iota);
// The rows of A, with columns pushed through iota, form the same multiset.
bool rows_invariant(const ConstraintSystem& cs, const Involution& iota);

struct CrossCheck {
    bool ok = false;
    std::vector<std::string> mismatches;
    std::vector<std::string> generated;   // edge rows in role symbols
    std::vector<std::string> symmetrized;
};

// Compares the edge rows of build_constraints(build_tau(p)) with the expected symbolic lists.
CrossCheck cross_check_tau_equations(int p, const ConstraintSystem& cs);

// tet,pair,role,radians,over_pi
std::string angles_csv(const Triangulation& tri, const AngleVector& theta,
                       const std::vector<std::array<int, 3>>* roles = nullptr);

std::string pair_label(const Tetrahedron& tet, int k);

}  // namespace braidtri
