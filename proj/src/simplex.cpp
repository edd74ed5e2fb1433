#include "simplex.hpp"

#include <limits>

namespace braidtri::detail {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> T;  // m constraint rows + objective row; last column is rhs
    std::vector<int> basis;
    int m = 0, cols = 0;

    void pivot(int r, int c) {
        T.row(r) /= T(r, c);
        for (int i = 0; i <= m; ++i)
            if (i != r && T(i, c) != 0) T.row(i) -= T(i, c) * T.row(r);
        basis[r] = c;
    }

    // Recomputes B^-1 [A | b] and the reduced costs; true if a column can still improve.
    bool refactor(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, int n) {
        Eigen::MatrixXd B(m, m);
        Eigen::VectorXd cb(m);
        for (int i = 0; i < m; ++i) {
            const int j = basis[i];
            B.col(i) = j < n ? Eigen::VectorXd(A.col(j)) : Eigen::VectorXd::Unit(m, j - n);
            cb(i) = j < n ? c(j) : 0.0;
        }
        const auto lu = B.fullPivLu();
        T.setZero();
        T.block(0, 0, m, n) = lu.solve(A);
        T.block(0, n, m, m) = lu.inverse();
        T.block(0, cols, m, 1) = lu.solve(b);
        T.block(m, 0, 1, n) = c.transpose() - cb.transpose() * T.block(0, 0, m, n);
        for (int j = 0; j < n; ++j)
            if (T(m, j) > kEps) return true;
        return false;
    }

    // Maximizes the objective row (stored as reduced costs c_j - z_j) over allowed columns.
    bool run(int allowed) {
        int stalled = 0;
        for (int guard = 0; guard < 100000; ++guard) {
            // Largest reduced cost; Bland's rule after a run of degenerate pivots.
            const bool bland = stalled > 50;
            int enter = -1;
            for (int j = 0; j < allowed; ++j)
                if (T(m, j) > kEps && (enter < 0 || (!bland && T(m, j) > T(m, enter)))) {
                    enter = j;
                    if (bland) break;
                }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (T(i, enter) <= kEps) continue;
                const double ratio = T(i, cols) / T(i, enter);
                const bool tie = leave >= 0 && ratio <= best + 1e-12;
                if (ratio < best - 1e-12 || leave < 0 || (tie && basis[i] < basis[leave])) {
                    leave = i;
                    best = std::min(best, ratio);
                }
            }
            if (leave < 0) return false;
            stalled = best <= 1e-12 ? stalled + 1 : 0;
            pivot(leave, enter);
        }
        return false;
    }
};

}  // namespace

LpResult simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const int m = int(A.rows()), n = int(A.cols());
    Tableau tb;
    tb.m = m;
    tb.cols = n + m;
    tb.T.setZero(m + 1, n + m + 1);
    tb.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const double s = b(i) < 0 ? -1.0 : 1.0;
        tb.T.block(i, 0, 1, n) = s * A.row(i);
        tb.T(i, n + i) = 1;
        tb.T(i, n + m) = s * b(i);
        tb.basis[i] = n + i;
    }
    // Phase 1: maximize -sum(artificials).
    for (int i = 0; i < m; ++i) tb.T.row(m) += tb.T.row(i);
    tb.T.block(m, n, 1, m).setZero();
    tb.run(n);
    LpResult res;
    if (tb.T(m, n + m) > 1e-8) return res;  // objective row rhs holds the artificial sum

    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        for (int j = 0; j < n; ++j)
            if (std::abs(tb.T(i, j)) > 1e-9) {
                tb.pivot(i, j);
                break;
            }
    }

    // Phase 2 reduced costs.
    tb.T.row(m).setZero();
    tb.T.block(m, 0, 1, n) = c.transpose();
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < n) tb.T.row(m) -= c(tb.basis[i]) * tb.T.row(i);
    // Rebuild the tableau from the original data at the final basis to shed rounding drift.
    for (int round = 0; round < 4; ++round) {
        if (!tb.run(n)) {
            res.status = LpResult::Unbounded;
            return res;
        }
        if (!tb.refactor(A, b, c, n)) break;
    }
    res.status = LpResult::Optimal;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.x(tb.basis[i]) = tb.T(i, n + m);
    res.value = c.dot(res.x);

    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i) {
        const int j = tb.basis[i];
        B.col(i) = j < n ? Eigen::VectorXd(A.col(j)) : Eigen::VectorXd::Unit(m, j - n);
        cb(i) = j < n ? c(j) : 0.0;
    }
    res.dual = B.transpose().fullPivLu().solve(cb);
    return res;
}

}  // namespace braidtri::detail
