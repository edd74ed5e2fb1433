#include "braidtri/angles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "simplex.hpp"

namespace braidtri {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd to_matrix(const std::vector<QVec>& cols, int n) {
    Eigen::MatrixXd W(n, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < n; ++i) W(i, j) = cols[j][i].get_d();
    return W;
}

// max s with x = s*1 + y on free columns, x = y elsewhere, y >= 0 (units of pi).
struct SlackLp {
    detail::LpResult lp;
    Eigen::VectorXd x;
    double s = 0;
};

SlackLp max_slack(const ConstraintSystem& cs, const std::vector<int>& rows,
                  const std::vector<bool>& shifted) {
    const int n = cs.cols(), m = int(rows.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n + 2);
    Eigen::VectorXd b(m), c = Eigen::VectorXd::Zero(n + 2);
    for (int i = 0; i < m; ++i) {
        const auto& row = cs.A[rows[i]];
        double shift = 0;
        for (int j = 0; j < n; ++j) {
            A(i, j) = row[j];
            if (shifted[j]) shift += row[j];
        }
        A(i, n) = shift;
        A(i, n + 1) = -shift;
        b(i) = cs.rhs_pi[rows[i]];
    }
    c(n) = 1;
    c(n + 1) = -1;
    SlackLp out;
    out.lp = detail::simplex_max(A, b, c);
    if (out.lp.status != detail::LpResult::Optimal) return out;
    out.s = out.lp.value;
    out.x = out.lp.x.head(n);
    for (int j = 0; j < n; ++j)
        if (shifted[j]) out.x(j) += out.s;
    return out;
}

double min_slack(const AngleVector& theta) {
    double s = kPi;
    for (double t : theta) s = std::min({s, t, kPi - t});
    return s;
}

}  // namespace

std::vector<double> ConstraintSystem::rhs() const {
    std::vector<double> out;
    for (int r : rhs_pi) out.push_back(r * kPi);
    return out;
}

double ConstraintSystem::residual(const AngleVector& theta) const {
    if (int(theta.size()) != cols()) throw std::invalid_argument("angle vector has wrong dimension");
    double worst = 0;
    for (int i = 0; i < rows(); ++i) {
        double sum = 0;
        for (int j = 0; j < cols(); ++j)
            if (A[i][j]) sum += A[i][j] * theta[j];
        worst = std::max(worst, std::abs(sum - rhs_pi[i] * kPi));
    }
    return worst;
}

ConstraintSystem build_constraints(const Triangulation& tri) {
    if (!tri.closed()) throw std::invalid_argument("build_constraints: triangulation is not closed");
    ConstraintSystem cs;
    cs.tets = tri.size();
    const auto classes = edge_classes(tri);
    cs.edges = int(classes.size());
    for (int t = 0; t < cs.tets; ++t) {
        cs.tet_names.push_back(tri.tet(t).name);
        std::vector<int> row(cs.cols(), 0);
        for (int k = 0; k < 3; ++k) row[3 * t + k] = 1;
        cs.A.push_back(std::move(row));
        cs.rhs_pi.push_back(1);
    }
    for (const auto& ec : classes) {
        std::vector<int> row(cs.cols(), 0);
        for (const auto& m : ec.members) ++row[3 * m.tet + edge_pair(m.a, m.b)];
        cs.A.push_back(std::move(row));
        cs.rhs_pi.push_back(2);
    }
    return cs;
}

Eigen::VectorXd AngleSpace::project(const Eigen::VectorXd& theta) const {
    if (Q.cols() == 0) return base;
    return base + Q * (Q.transpose() * (theta - base));
}

AngleSpace angle_space(const ConstraintSystem& cs) {
    AngleSpace sp;
    std::vector<mpq_class> b;
    for (int r : cs.rhs_pi) b.emplace_back(r);
    sp.exact = solve_affine(cs.A, b);
    const int n = cs.cols();
    sp.base = Eigen::VectorXd::Zero(n);
    if (sp.exact.consistent)
        for (int i = 0; i < n; ++i) sp.base(i) = sp.exact.particular[i].get_d() * kPi;
    const Eigen::MatrixXd W = to_matrix(sp.exact.nullspace, n);
    if (W.cols() > 0) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
        sp.Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, W.cols());
    } else {
        sp.Q = Eigen::MatrixXd::Zero(n, 0);
    }
    return sp;
}

InteriorPoint find_interior_point(const ConstraintSystem& cs) {
    return find_interior_point(cs, angle_space(cs));
}

InteriorPoint find_interior_point(const ConstraintSystem& cs, const AngleSpace& space) {
    InteriorPoint out;
    if (!space.exact.consistent) {
        out.reason = "edge and tetrahedron equations are linearly inconsistent";
        for (const auto& u : space.exact.certificate) out.certificate.push_back(u.get_d());
        return out;
    }
    const auto lp = max_slack(cs, space.exact.independent_rows, std::vector<bool>(cs.cols(), true));
    if (lp.lp.status != detail::LpResult::Optimal) {
        out.reason = "slack program did not reach an optimum";
        return out;
    }
    if (lp.s < -1e-9) {
        // u^T A >= 0 on every column while u^T b = s* < 0.
        out.reason = "no nonnegative angle assignment satisfies the equations";
        out.certificate.assign(cs.rows(), 0.0);
        const auto& rows = space.exact.independent_rows;
        for (int i = 0; i < int(rows.size()); ++i) out.certificate[rows[i]] = lp.lp.dual(i) / -lp.s;
        return out;
    }
    Eigen::VectorXd theta = space.project(lp.x * kPi);
    out.theta.assign(theta.data(), theta.data() + theta.size());
    if (lp.s <= 1e-9) {
        for (auto& t : out.theta) t = std::clamp(t, 0.0, kPi);
        out.status = InteriorPoint::Status::Boundary;
        out.slack = 0;
        out.reason = "closed polytope is nonempty but every point has a zero angle";
        return out;
    }
    out.status = InteriorPoint::Status::Interior;
    out.slack = min_slack(out.theta);
    return out;
}

std::vector<bool> forced_zero_slots(const ConstraintSystem& cs, const AngleSpace& space) {
    const int n = cs.cols();
    std::vector<bool> forced(n, false);
    if (!space.exact.consistent) return forced;
    const auto& rows = space.exact.independent_rows;
    Eigen::MatrixXd A(rows.size(), n);
    Eigen::VectorXd b(rows.size());
    for (int i = 0; i < int(rows.size()); ++i) {
        for (int j = 0; j < n; ++j) A(i, j) = cs.A[rows[i]][j];
        b(i) = cs.rhs_pi[rows[i]];
    }
    for (int j = 0; j < n; ++j) {
        const auto lp = detail::simplex_max(A, b, Eigen::VectorXd::Unit(n, j));
        if (lp.status == detail::LpResult::Optimal && lp.value <= 1e-9) forced[j] = true;
    }
    return forced;
}

FacePoint restrict_to_face(const ConstraintSystem& cs, const std::vector<bool>& zero) {
    FacePoint f;
    f.cs = cs;
    for (int j = 0; j < cs.cols(); ++j) {
        if (!zero[j]) continue;
        std::vector<int> row(cs.cols(), 0);
        row[j] = 1;
        f.cs.A.push_back(std::move(row));
        f.cs.rhs_pi.push_back(0);
    }
    f.space = angle_space(f.cs);
    auto& pt = f.point;
    if (!f.space.exact.consistent) {
        pt.reason = "face equations are inconsistent";
        return f;
    }
    std::vector<bool> shifted(cs.cols());
    for (int j = 0; j < cs.cols(); ++j) shifted[j] = !zero[j];
    const auto lp = max_slack(f.cs, f.space.exact.independent_rows, shifted);
    if (lp.lp.status != detail::LpResult::Optimal || lp.s < -1e-9) {
        pt.reason = "face is empty";
        return f;
    }
    Eigen::VectorXd theta = f.space.project(lp.x * kPi);
    pt.theta.assign(theta.data(), theta.data() + theta.size());
    for (auto& t : pt.theta) t = std::clamp(t, 0.0, kPi);
    pt.status = lp.s > 1e-9 ? InteriorPoint::Status::Interior : InteriorPoint::Status::Boundary;
    pt.slack = lp.s * kPi;
    return f;
}

AngleVector apply_involution(const AngleVector& theta, const Involution& iota) {
    const int n = int(iota.tet_map.size());
    if (int(theta.size()) != 3 * n) throw std::invalid_argument("apply_involution: dimension mismatch");
    AngleVector out(theta.size());
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) out[3 * iota.tet_map[t] + iota.pair_map[t][k]] = theta[3 * t + k];
    return out;
}

AngleVector symmetrize(const AngleVector& theta, const Involution& iota) {
    const auto img = apply_involution(theta, iota);
    AngleVector out(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) out[i] = 0.5 * (theta[i] + img[i]);
    return out;
}

bool rows_invariant(const ConstraintSystem& cs, const Involution& iota) {
    if (int(iota.tet_map.size()) != cs.tets) return false;
    std::vector<std::pair<std::vector<int>, int>> before, after;
    for (int i = 0; i < cs.rows(); ++i) {
        std::vector<int> moved(cs.cols(), 0);
        for (int t = 0; t < cs.tets; ++t)
            for (int k = 0; k < 3; ++k) moved[3 * iota.tet_map[t] + iota.pair_map[t][k]] = cs.A[i][3 * t + k];
        before.emplace_back(cs.A[i], cs.rhs_pi[i]);
        after.emplace_back(std::move(moved), cs.rhs_pi[i]);
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    return before == after;
}

// ---- symbolic edge equations -------------------------------------------------------------

namespace {

// (role, tet name) -> coefficient; every row has rhs 2 pi unless stated.
using SymRow = std::map<std::pair<int, std::string>, int>;

const char* kRoleName[3] = {"R", "B", "D"};

std::string show(const SymRow& row, int rhs = 2) {
    std::string s;
    for (const auto& [key, c] : row) {
        if (c == 0) continue;
        if (!s.empty()) s += c > 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        if (std::abs(c) != 1) s += std::to_string(std::abs(c));
        s += std::string("t") + kRoleName[key.first] + "(" + key.second + ")";
    }
    return s + " = " + std::to_string(rhs) + "pi";
}

std::string W(int i, bool primed) { return w_name(i, primed); }

bool defined(int p, int i, bool primed) {
    if (primed) return i >= 0 && i <= p - 1;
    return i >= 1 && i <= p;
}

// Expected unsymmetrized edge rows.
std::vector<SymRow> expected_rows(int p) {
    std::vector<SymRow> rows;
    SymRow red;
    for (int i = 0; i <= p - 1; ++i) red[{R, W(i, true)}] += 2;
    for (int i = 1; i <= p; ++i) red[{R, W(i, false)}] += 2;
    red[{R, "s"}] += 2;
    red[{D, W(0, true)}] += 1;
    red[{D, W(p, false)}] += 1;
    rows.push_back(red);

    // Undefined diagonal terms are replaced by the diagonal of s.
    auto diag = [&](SymRow& r, int i, bool primed) {
        if (defined(p, i, primed)) r[{D, W(i, primed)}] += 1;
        else r[{D, "s"}] += 1;
    };
    SymRow a, b;
    a[{B, W(0, true)}] += 1;
    diag(a, 1, false);
    a[{B, "s"}] += 1;
    diag(a, p - 1, true);
    a[{B, W(p, false)}] += 1;
    b[{B, W(0, true)}] += 1;
    diag(b, 1, true);
    b[{B, "s"}] += 1;
    diag(b, p - 1, false);
    b[{B, W(p, false)}] += 1;
    rows.push_back(a);
    rows.push_back(b);
    if (p == 1) return rows;

    for (int i = 2; i <= p - 2; ++i) {
        SymRow r;
        r[{D, W(i - 1, false)}] += 1;
        r[{B, W(i, false)}] += 1;
        r[{B, W(i, true)}] += 1;
        r[{D, W(i + 1, true)}] += 1;
        rows.push_back(r);
    }
    for (int i = 1; i <= p - 1; ++i) {
        SymRow r;
        r[{D, W(i - 1, true)}] += 1;
        r[{B, W(i, false)}] += 1;
        r[{B, W(i, true)}] += 1;
        r[{D, W(i + 1, false)}] += 1;
        rows.push_back(r);
    }
    SymRow c, d;
    c[{D, "s"}] += 1;
    c[{B, W(1, true)}] += 1;
    c[{B, W(1, false)}] += 1;
    diag(c, 2, true);
    d[{D, "s"}] += 1;
    d[{B, W(p - 1, true)}] += 1;
    d[{B, W(p - 1, false)}] += 1;
    diag(d, p - 2, false);
    rows.push_back(c);
    // At p = 2 both rows describe the same single edge.
    if (p > 2) rows.push_back(d);
    return rows;
}

// Expected rows after identifying w_i' with w_{p-i}.
std::vector<SymRow> expected_symmetric_rows(int p) {
    const int k = p / 2;
    std::vector<SymRow> rows;
    SymRow red;
    for (int i = 1; i <= p; ++i) red[{R, W(i, false)}] += 4;
    red[{R, "s"}] += 2;
    red[{D, W(p, false)}] += 2;
    rows.push_back(red);
    auto wd = [&](int i) { return i >= 1 && i <= p ? W(i, false) : std::string("s"); };
    SymRow a, b;
    a[{B, W(p, false)}] += 2;
    a[{D, W(1, false)}] += 2;
    a[{B, "s"}] += 1;
    rows.push_back(a);
    b[{B, W(p, false)}] += 2;
    b[{D, wd(p - 1)}] += 2;
    b[{B, "s"}] += 1;
    rows.push_back(b);
    if (p == 1) return rows;
    for (int i = 2; i <= k; ++i) {
        SymRow r;
        r[{D, W(i - 1, false)}] += 1;
        r[{B, W(i, false)}] += 1;
        r[{B, W(p - i, false)}] += 1;
        r[{D, W(p - i - 1, false)}] += 1;
        rows.push_back(r);
    }
    for (int i = 1; i <= k; ++i) {
        SymRow r;
        r[{D, W(p - i + 1, false)}] += 1;
        r[{B, W(i, false)}] += 1;
        r[{B, W(p - i, false)}] += 1;
        r[{D, W(i + 1, false)}] += 1;
        rows.push_back(r);
    }
    SymRow c;
    c[{D, "s"}] += 1;
    c[{B, W(p - 1, false)}] += 1;
    c[{B, W(1, false)}] += 1;
    c[{D, wd(p - 2)}] += 1;
    rows.push_back(c);
    return rows;
}

SymRow clean(SymRow r) {
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

SymRow identify(const SymRow& r, int p) {
    SymRow out;
    for (const auto& [key, c] : r) {
        auto [role, name] = key;
        if (!name.empty() && name.back() == '\'') {
            const int i = std::stoi(name.substr(1, name.size() - 2));
            name = W(p - i, false);
        }
        out[{role, name}] += c;
    }
    return clean(out);
}

std::vector<std::string> sorted_strings(const std::vector<SymRow>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(show(r));
    std::sort(out.begin(), out.end());
    return out;
}

void diff_lists(const std::vector<std::string>& got, const std::vector<std::string>& want,
                const std::string& what, std::vector<std::string>& out) {
    std::vector<std::string> extra, missing;
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
    for (const auto& e : extra) out.push_back(what + ": unexpected " + e);
    for (const auto& m : missing) out.push_back(what + ": missing " + m);
}

// Rows as rational vectors over a shared symbol index plus a trailing rhs entry.
struct SymSpace {
    std::map<std::pair<int, std::string>, int> index;
    int id(const std::pair<int, std::string>& key) {
        auto [it, _] = index.emplace(key, int(index.size()));
        return it->second;
    }
    std::vector<QVec> vectors(const std::vector<std::pair<SymRow, int>>& rows) {
        for (const auto& [r, _] : rows)
            for (const auto& [key, c] : r) id(key);
        std::vector<QVec> out;
        for (const auto& [r, rhs] : rows) {
            QVec v(index.size() + 1);
            for (const auto& [key, c] : r) v[index.at(key)] = c;
            v.back() = rhs;
            out.push_back(std::move(v));
        }
        return out;
    }
};

bool implied(const std::vector<SymRow>& rows, const SymRow& identity) {
    std::vector<std::pair<SymRow, int>> all;
    for (const auto& r : rows) all.emplace_back(r, 2);
    all.emplace_back(identity, 0);
    SymSpace sp;
    auto vecs = sp.vectors(all);
    const QVec target = vecs.back();
    vecs.pop_back();
    return in_row_space(vecs, target);
}

SymRow difference(std::vector<std::pair<std::string, int>> terms) {
    SymRow r;
    for (const auto& [name, c] : terms) r[{D, name}] += c;
    return clean(r);
}

}  // namespace

CrossCheck cross_check_tau_equations(int p, const ConstraintSystem& cs) {
    CrossCheck out;
    const Triangulation tau = build_tau(p);
    const auto veer = assign_veering(tau);
    if (cs.tets != tau.size()) {
        out.mismatches.push_back("constraint system does not match build_tau(" + std::to_string(p) + ")");
        return out;
    }
    std::vector<SymRow> generated;
    for (int i = cs.tets; i < cs.rows(); ++i) {
        SymRow r;
        for (int t = 0; t < cs.tets; ++t)
            for (int role = 0; role < 3; ++role) {
                const int c = cs.A[i][3 * t + veer.role_pair[t][role]];
                if (c) r[{role, cs.tet_names[t]}] += c;
            }
        if (cs.rhs_pi[i] != 2) out.mismatches.push_back("edge row with rhs " + std::to_string(cs.rhs_pi[i]));
        generated.push_back(r);
    }
    out.generated = sorted_strings(generated);
    diff_lists(out.generated, sorted_strings(expected_rows(p)), "edge equations", out.mismatches);

    std::vector<SymRow> sym;
    for (const auto& r : generated) sym.push_back(identify(r, p));
    std::sort(sym.begin(), sym.end());
    sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
    out.symmetrized = sorted_strings(sym);
    auto want = sorted_strings(expected_symmetric_rows(p));
    want.erase(std::unique(want.begin(), want.end()), want.end());
    diff_lists(out.symmetrized, want, "symmetrized equations", out.mismatches);

    // Diagonal identities implied by the symmetrized system.
    std::vector<SymRow> ids{difference({{W(p, false), 1}, {"s", -1}})};
    for (int i = 1; i <= p / 2; ++i) ids.push_back(difference({{W(i, false), 1}, {W(p - i, false), -1}}));
    for (const auto& id : ids)
        if (!id.empty() && !implied(sym, id)) out.mismatches.push_back("not implied: " + show(id, 0));

    // Differences of diagonals implied by the unsymmetrized edge equations.
    auto dd = [&](int i) -> std::vector<std::pair<std::string, int>> {
        return {{W(i, false), 1}, {W(i, true), -1}};
    };
    auto join = [](std::vector<std::pair<std::string, int>> a, std::vector<std::pair<std::string, int>> b) {
        for (auto& [n, c] : b) a.emplace_back(n, -c);
        return a;
    };
    std::vector<SymRow> diffs;
    if (p == 1) {
        diffs.push_back(difference(join({{"s", 1}, {W(0, true), -1}}, {{W(1, false), 1}, {"s", -1}})));
    } else {
        for (int i = 1; i + 2 <= p - 1; ++i) diffs.push_back(difference(join(dd(i), dd(i + 2))));
        if (p >= 3) {
            diffs.push_back(difference(join(dd(p - 2), {{W(p, false), 1}, {"s", -1}})));
            diffs.push_back(difference(join({{"s", 1}, {W(0, true), -1}}, dd(2))));
        }
        diffs.push_back(difference(join(dd(p - 1), dd(1))));
    }
    for (const auto& d : diffs)
        if (!d.empty() && !implied(generated, d)) out.mismatches.push_back("not implied: " + show(d, 0));

    out.ok = out.mismatches.empty();
    return out;
}

std::string pair_label(const Tetrahedron& tet, int k) {
    static constexpr int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    const auto& L = tet.labels;
    const auto* q = pairs[k];
    return L[q[0]] + L[q[1]] + "|" + L[q[2]] + L[q[3]];
}

std::string angles_csv(const Triangulation& tri, const AngleVector& theta,
                       const std::vector<std::array<int, 3>>* roles) {
    if (int(theta.size()) != 3 * tri.size()) throw std::invalid_argument("angles_csv: dimension mismatch");
    std::ostringstream os;
    os.precision(17);
    os << "tet,pair,role,radians,over_pi\n";
    for (int t = 0; t < tri.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::string role = "";
            if (roles)
                for (int r = 0; r < 3; ++r)
                    if ((*roles)[t][r] == k) role = kRoleName[r];
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.15f", theta[3 * t + k] / kPi);
            os << tri.tet(t).name << ',' << pair_label(tri.tet(t), k) << ',' << role << ','
               << theta[3 * t + k] << ',' << buf << '\n';
        }
    return os.str();
}

}  // namespace braidtri
