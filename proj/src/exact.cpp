#include "braidtri/exact.hpp"

#include <stdexcept>

namespace braidtri {

namespace {

// Row echelon basis kept in reduced form; each stored row also remembers which original rows
// built it, so dependent rows yield a certificate.
struct Echelon {
    int cols = 0;
    int track = 0;
    std::vector<QVec> rows;      // cols + 1 (rhs) + track entries
    std::vector<int> pivot;

    // Reduces r against the basis; returns the first nonzero column or -1.
    int reduce(QVec& r) const {
        for (size_t k = 0; k < rows.size(); ++k) {
            const mpq_class f = r[pivot[k]];
            if (f == 0) continue;
            const auto& p = rows[k];
            for (size_t c = 0; c < r.size(); ++c)
                if (p[c] != 0) r[c] -= f * p[c];
        }
        for (int c = 0; c < cols; ++c)
            if (r[c] != 0) return c;
        return -1;
    }

    void insert(QVec r, int pc) {
        const mpq_class inv = 1 / r[pc];
        for (auto& x : r)
            if (x != 0) x *= inv;
        for (auto& row : rows) {
            const mpq_class f = row[pc];
            if (f == 0) continue;
            for (size_t c = 0; c < r.size(); ++c)
                if (r[c] != 0) row[c] -= f * r[c];
        }
        rows.push_back(std::move(r));
        pivot.push_back(pc);
    }
};

}  // namespace

AffineSolution solve_affine(const std::vector<std::vector<int>>& A, const std::vector<mpq_class>& b) {
    AffineSolution out;
    const int m = int(A.size());
    const int n = m ? int(A[0].size()) : 0;
    if (int(b.size()) != m) throw std::invalid_argument("solve_affine: rhs size mismatch");
    Echelon ech;
    ech.cols = n;
    ech.track = m;
    out.consistent = true;
    for (int i = 0; i < m; ++i) {
        QVec r(n + 1 + m);
        for (int c = 0; c < n; ++c) r[c] = A[i][c];
        r[n] = b[i];
        r[n + 1 + i] = 1;
        const int pc = ech.reduce(r);
        if (pc >= 0) {
            ech.insert(std::move(r), pc);
            out.independent_rows.push_back(i);
        } else if (r[n] != 0 && out.certificate.empty()) {
            out.consistent = false;
            out.certificate.assign(r.begin() + n + 1, r.end());
            // Scale so that u^T b = -1.
            const mpq_class s = -1 / r[n];
            for (auto& x : out.certificate) x *= s;
        }
    }
    out.rank = int(ech.rows.size());
    out.pivot_cols = ech.pivot;
    std::vector<int> where(n, -1);
    for (int k = 0; k < out.rank; ++k) where[ech.pivot[k]] = k;
    if (out.consistent) {
        out.particular.assign(n, 0);
        for (int k = 0; k < out.rank; ++k) out.particular[ech.pivot[k]] = ech.rows[k][n];
    }
    for (int fc = 0; fc < n; ++fc) {
        if (where[fc] >= 0) continue;
        QVec v(n);
        v[fc] = 1;
        for (int k = 0; k < out.rank; ++k) v[ech.pivot[k]] = -ech.rows[k][fc];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

int rational_rank(std::vector<QVec> rows) {
    if (rows.empty()) return 0;
    Echelon ech;
    ech.cols = int(rows[0].size());
    for (auto& r : rows) {
        const int pc = ech.reduce(r);
        if (pc >= 0) ech.insert(std::move(r), pc);
    }
    return int(ech.rows.size());
}

bool in_row_space(const std::vector<QVec>& rows, const QVec& target) {
    std::vector<QVec> all = rows;
    const int base = rational_rank(all);
    all.push_back(target);
    return rational_rank(std::move(all)) == base;
}

}  // namespace braidtri
