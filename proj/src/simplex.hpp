#pragma once

#include <vector>

#include <Eigen/Dense>

namespace braidtri::detail {

struct LpResult {
    enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
    Eigen::VectorXd x;
    double value = 0;
    Eigen::VectorXd dual;  // u with B^T u = c_B at the optimal basis
};

// max c.x subject to A x = b, x >= 0. Dense two-phase tableau, Dantzig pricing with a Bland fallback; rows of A must be
// linearly independent.
LpResult simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace braidtri::detail
