#pragma once

#include <vector>

#include <gmpxx.h>

namespace braidtri {

using QVec = std::vector<mpq_class>;

// Exact solution set of A x = b for a small integer matrix.
struct AffineSolution {
    bool consistent = false;
    int rank = 0;
    std::vector<int> independent_rows;  // original indices of a maximal independent row set
    std::vector<int> pivot_cols;
    QVec particular;                 // a solution when consistent
    std::vector<QVec> nullspace;     // basis of {v : A v = 0}
    QVec certificate;                // u with u^T A = 0 and u^T b != 0 when inconsistent
};

AffineSolution solve_affine(const std::vector<std::vector<int>>& A, const std::vector<mpq_class>& b);

// Rank of a rational row set.
int rational_rank(std::vector<QVec> rows);

// True when target lies in the row space of rows.
bool in_row_space(const std::vector<QVec>& rows, const QVec& target);

}  // namespace braidtri
