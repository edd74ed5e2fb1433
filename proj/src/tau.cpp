#include "braidtri/tau.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>

#include "braidtri/pachner.hpp"

namespace braidtri {

namespace {

const std::array<std::string, 4> kW{"0", "1", "2", "5"};
// Corner order b, a, c, d keeps every gluing orientation reversing.
const std::array<std::string, 4> kS{"b", "a", "c", "d"};

void require_p(int p) {
    if (p < 1) throw std::invalid_argument("p must be at least 1, got " + std::to_string(p));
}

void add_w_tets(Triangulation& tri, int p) {
    tri.add_tet(w_name(0, true), kW);
    for (int i = 1; i < p; ++i) {
        tri.add_tet(w_name(i, false), kW);
        tri.add_tet(w_name(i, true), kW);
    }
    tri.add_tet(w_name(p, false), kW);
}

// Half-twist pairings shared by both triangulations.
void glue_w_families(Triangulation& tri, int p) {
    for (int i = 0; i < p; ++i) tri.glue(w_name(i, true), "015", w_name(i + 1, false), "105");
    for (int i = 0; i + 1 < p; ++i) tri.glue(w_name(i, true), "125", w_name(i + 1, true), "025");
    for (int i = 1; i < p; ++i) tri.glue(w_name(i, false), "025", w_name(i + 1, false), "125");
    for (int i = 1; i + 1 < p; ++i) tri.glue(w_name(i, false), "012", w_name(i + 1, true), "102");
}

int ccw_handedness(int v, const std::array<int, 3>& seq) {
    return Perm4(v, seq[0], seq[1], seq[2]).sign();
}

// Corners other than v in counterclockwise order seen from v.
std::array<int, 3> ccw_from(int v) {
    std::array<int, 3> o{};
    int k = 0;
    for (int c = 0; c < 4; ++c)
        if (c != v) o[k++] = c;
    if (ccw_handedness(v, o) < 0) std::swap(o[1], o[2]);
    return o;
}

}  // namespace

std::string w_name(int i, bool primed) { return "w" + std::to_string(i) + (primed ? "'" : ""); }

Triangulation build_hat_tau(int p) {
    require_p(p);
    Triangulation tri;
    tri.add_tet("t1'", {"0", "2", "3", "5"});
    add_w_tets(tri, p);
    tri.add_tet("m2", {"2", "3", "4", "5"});
    tri.add_tet("b1", {"0", "2", "3", "5"});
    tri.add_tet("b2'", {"2", "3", "4", "5"});
    const std::string wp = w_name(p, false);
    if (p == 1) {
        tri.glue("t1'", "023", "m2", "523");
        tri.glue("t1'", "025", "w0'", "025");
        tri.glue("t1'", "035", "w1", "125");
        tri.glue("t1'", "235", "b2'", "245");
        tri.glue("w0'", "015", "w1", "105");
        tri.glue("w0'", "012", "w1", "021");
        tri.glue("w0'", "125", "b1", "035");
        tri.glue("w1", "025", "b1", "025");
        tri.glue("m2", "345", "b2'", "354");
        tri.glue("m2", "234", "b2'", "243");
        tri.glue("m2", "245", "b1", "235");
        tri.glue("b1", "023", "b2'", "523");
    } else {
        glue_w_families(tri, p);
        tri.glue(wp, "025", "b1", "025");
        tri.glue("m2", "234", "b2'", "243");
        tri.glue("m2", "245", "b1", "235");
        tri.glue("t1'", "023", "m2", "523");
        tri.glue("t1'", "025", "w0'", "025");
        tri.glue("t1'", "235", "b2'", "245");
        tri.glue("w0'", "012", wp, "021");
        tri.glue("b1", "023", "b2'", "523");
        tri.glue("t1'", "035", "w1", "125");
        tri.glue("m2", "345", "w1'", "201");
        tri.glue("b1", "035", w_name(p - 1, true), "125");
        tri.glue("b2'", "345", w_name(p - 1, false), "201");
    }
    if (!tri.closed() || !is_oriented(tri)) throw std::logic_error("build_hat_tau: inconsistent tables");
    return tri;
}

Triangulation build_tau(int p) {
    require_p(p);
    Triangulation tri;
    add_w_tets(tri, p);
    tri.add_tet("s", kS);
    const std::string wp = w_name(p, false);
    if (p == 1) {
        tri.glue("w0'", "015", "w1", "105");
        tri.glue("w0'", "012", "w1", "021");
        tri.glue("w0'", "025", "w1", "520");
        tri.glue("w0'", "125", "s", "dbc");
        tri.glue("w1", "125", "s", "cad");
        tri.glue("s", "abc", "s", "bda");
    } else {
        glue_w_families(tri, p);
        tri.glue("w0'", "012", wp, "021");
        tri.glue("w0'", "025", wp, "520");
        tri.glue("s", "cad", "w1", "125");
        tri.glue("s", "abc", "w1'", "201");
        tri.glue("s", "dbc", w_name(p - 1, true), "125");
        tri.glue("s", "bad", w_name(p - 1, false), "201");
    }
    if (!tri.closed() || !is_oriented(tri)) throw std::logic_error("build_tau: inconsistent tables");
    return tri;
}

Triangulation simplify_hat_to_tau(const Triangulation& hat, int p, int* mid_tets) {
    require_p(p);
    if (hat.size() != 2 * p + 4) throw std::invalid_argument("simplify_hat_to_tau: wrong tet count");
    const auto classes = edge_classes(hat);
    const int e24 = find_edge(hat, classes, "m2", "2", "4");
    if (classes[e24].degree() != 3)
        throw std::runtime_error("simplify_hat_to_tau: [m2(24)] has degree " +
                                 std::to_string(classes[e24].degree()) + ", expected 3");
    auto moved = pachner_3_2(hat, classes[e24], "sbar", "s");

    // Corner letters of the two new tets, keyed by an old incidence they absorb.
    const std::map<std::pair<std::string, std::string>, std::string> letter{
        {{"m2", "2"}, "2"}, {{"m2", "3"}, "a"}, {{"m2", "4"}, "b"},
        {{"m2", "5"}, "c"}, {{"b1", "0"}, "d"}};
    std::array<std::array<std::string, 4>, 2> labels;
    for (int k = 0; k < 2; ++k)
        for (int c = 0; c < 4; ++c) {
            for (auto [t, v] : moved.origin[k][c]) {
                auto it = letter.find({hat.tet(t).name, hat.tet(t).labels[v]});
                if (it != letter.end()) labels[k][c] = it->second;
            }
            if (labels[k][c].empty()) throw std::runtime_error("simplify_hat_to_tau: unmatched corner");
        }
    const int top = moved.top, bottom = moved.bottom;
    const bool top_is_bar = std::count(labels[0].begin(), labels[0].end(), "2") == 1;
    moved.tri.rename(top, top_is_bar ? "sbar" : "s");
    moved.tri.rename(bottom, top_is_bar ? "s" : "sbar");
    moved.tri.relabel(top, labels[0]);
    moved.tri.relabel(bottom, labels[1]);

    const auto& mid = moved.tri;
    if (mid_tets) *mid_tets = mid.size();
    const auto classes2 = edge_classes(mid);
    const int e23 = find_edge(mid, classes2, "t1'", "2", "3");
    if (classes2[e23].degree() != 2)
        throw std::runtime_error("simplify_hat_to_tau: [t1'(23)] has degree " +
                                 std::to_string(classes2[e23].degree()) + ", expected 2");
    return pachner_2_0(mid, classes2[e23]);
}

TautVeeringStructure assign_veering(const Triangulation& tri) {
    const auto classes = edge_classes(tri);
    const auto cls = slot_classes(tri, classes);
    const int n = tri.size();
    TautVeeringStructure st;
    int red = 0;
    for (int c = 1; c < int(classes.size()); ++c)
        if (classes[c].degree() > classes[red].degree()) red = c;
    st.red.assign(classes.size(), false);
    st.red[red] = true;

    st.role_pair.resize(n);
    for (int t = 0; t < n; ++t) {
        const auto& L = tri.tet(t).labels;
        int d = -1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if ((L[i] == "0" && L[j] == "2") || (L[i] == "2" && L[j] == "0") ||
                    (L[i] == "a" && L[j] == "c") || (L[i] == "c" && L[j] == "a"))
                    d = edge_pair(i, j);
        if (d < 0) throw std::invalid_argument("assign_veering: " + tri.tet(t).name + " has no diagonal");
        int r = -1;
        for (int k = 0; k < 3; ++k) {
            if (k == d) continue;
            bool all_red = true;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (edge_pair(i, j) == k) all_red = all_red && st.red[cls[t][slot_index(i, j)]];
            if (all_red) r = k;
        }
        if (r < 0) throw std::invalid_argument("assign_veering: " + tri.tet(t).name + " has no red pair");
        st.role_pair[t] = {r, 3 - r - d, d};
    }

    // Top diagonal of tet 0 is its diagonal through corner 0; spread across the gluings.
    std::vector<int> top_diag(n, -1);  // corner paired with... stored as slot index
    auto diag_slots = [&](int t) {
        std::array<int, 2> s{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (edge_pair(i, j) == st.role_pair[t][D]) s[k++] = slot_index(i, j);
        return s;
    };
    auto face_has = [](int f, int slot) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (slot_index(i, j) == slot) return i != f && j != f;
        return false;
    };
    st.top_face.assign(n, std::array<bool, 4>{});
    for (int root = 0; root < n; ++root) {
        if (top_diag[root] >= 0) continue;
        top_diag[root] = diag_slots(root)[0];
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int t = q.front();
            q.pop();
            for (int f = 0; f < 4; ++f) {
                const auto& g = *tri.gluing(t, f);
                if (top_diag[g.tet] >= 0) continue;
                const bool top = face_has(f, top_diag[t]);
                const int f2 = g.map[f];
                const auto ds = diag_slots(g.tet);
                const int inside = face_has(f2, ds[0]) ? ds[0] : ds[1];
                top_diag[g.tet] = top ? (inside == ds[0] ? ds[1] : ds[0]) : inside;
                q.push(g.tet);
            }
        }
    }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) st.top_face[t][f] = face_has(f, top_diag[t]);
    return st;
}

VeeringCheck check_veering(const Triangulation& tri, const TautVeeringStructure& st) {
    VeeringCheck out;
    const int n = tri.size();
    const auto classes = edge_classes(tri);
    const auto cls = slot_classes(tri, classes);
    auto fail = [&](std::string s) { out.violations.push_back(std::move(s)); };
    if (int(st.role_pair.size()) != n || int(st.top_face.size()) != n || st.red.size() != classes.size()) {
        fail("structure dimensions do not match the triangulation");
        return out;
    }
    for (int t = 0; t < n; ++t) {
        auto r = st.role_pair[t];
        std::sort(r.begin(), r.end());
        if (r != std::array<int, 3>{0, 1, 2}) fail("tet " + tri.tet(t).name + ": roles are not a permutation");
    }
    if (!out.violations.empty()) return out;

    // Taut: pi on D only, so each class needs exactly two D slots.
    for (int c = 0; c < int(classes.size()); ++c) {
        int pis = 0;
        for (const auto& m : classes[c].members)
            pis += edge_pair(m.a, m.b) == st.role_pair[m.tet][D];
        if (pis != 2)
            fail("edge class " + std::to_string(c) + ": angle sum " + std::to_string(pis) + "pi, expected 2pi");
    }

    // Colouring pattern seen from every corner.
    int hand = 0;
    for (int t = 0; t < n; ++t) {
        const auto& name = tri.tet(t).name;
        for (int v = 0; v < 4; ++v) {
            const auto o = ccw_from(v);
            std::array<char, 3> kind{};
            for (int k = 0; k < 3; ++k) {
                const int pr = edge_pair(v, o[k]);
                if (pr == st.role_pair[t][D])
                    kind[k] = 'D';
                else
                    kind[k] = st.red[cls[t][slot_index(v, o[k])]] ? 'r' : 'b';
            }
            const int d = int(std::find(kind.begin(), kind.end(), 'D') - kind.begin());
            if (d == 3 || std::count(kind.begin(), kind.end(), 'D') != 1) {
                fail("tet " + name + ": corner " + std::to_string(v) + " does not see one pi edge");
                continue;
            }
            const char next = kind[(d + 1) % 3], last = kind[(d + 2) % 3];
            int h = 0;
            if (next == 'b' && last == 'r') h = 1;
            if (next == 'r' && last == 'b') h = -1;
            if (!h) {
                fail("tet " + name + ": corner " + std::to_string(v) + " needs one red and one blue 0-edge");
                continue;
            }
            if (!hand) hand = h;
            if (h != hand) fail("tet " + name + ": corner " + std::to_string(v) + " has the opposite handedness");
        }
        for (int k : {R, B}) {
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (edge_pair(i, j) == st.role_pair[t][k] && st.red[cls[t][slot_index(i, j)]] != (k == R))
                        fail("tet " + name + ": " + (k == R ? "R" : "B") + " edge has the wrong colour");
        }
    }

    // Transverse taut: the two top faces share one diagonal, and gluings send top to bottom.
    for (int t = 0; t < n; ++t) {
        std::vector<int> tops;
        for (int f = 0; f < 4; ++f)
            if (st.top_face[t][f]) tops.push_back(f);
        bool good = tops.size() == 2;
        if (good) {
            const auto ij = other_corners(tops[0], tops[1]);
            good = edge_pair(ij[0], ij[1]) == st.role_pair[t][D];
        }
        if (!good) fail("tet " + tri.tet(t).name + ": top faces do not share a diagonal");
        for (int f = 0; f < 4; ++f) {
            const auto& g = *tri.gluing(t, f);
            if (st.top_face[t][f] == st.top_face[g.tet][g.map[f]])
                fail("gluing " + tri.tet(t).name + " face " + std::to_string(f) + " joins two " +
                     (st.top_face[t][f] ? "top" : "bottom") + " faces");
        }
    }
    out.handedness = hand;
    out.ok = out.violations.empty();
    return out;
}

Involution involution(int p) { return involution(build_tau(p), p); }

Involution involution(const Triangulation& tau, int p) {
    require_p(p);
    const int n = tau.size();
    Involution inv;
    inv.p = p;
    inv.tet_map.resize(n);
    for (int t = 0; t < n; ++t) {
        const auto& name = tau.tet(t).name;
        if (name == "s") {
            inv.tet_map[t] = t;
            continue;
        }
        const bool primed = name.back() == '\'';
        const int i = std::stoi(name.substr(1));
        inv.tet_map[t] = tau.at(w_name(p - i, !primed));
    }
    const auto st = assign_veering(tau);
    std::array<int, 4> base{0, 1, 2, 3};
    do {
        std::vector<std::optional<Perm4>> cm(n);
        cm[0] = Perm4(base[0], base[1], base[2], base[3]);
        std::queue<int> q;
        q.push(0);
        bool ok = true;
        while (ok && !q.empty()) {
            const int t = q.front();
            q.pop();
            for (int f = 0; f < 4 && ok; ++f) {
                const auto& g = *tau.gluing(t, f);
                const auto& img = tau.gluing(inv.tet_map[t], (*cm[t])[f]);
                if (!img || img->tet != inv.tet_map[g.tet]) {
                    ok = false;
                    break;
                }
                const Perm4 want = img->map.of(*cm[t]).of(g.map.inverse());
                if (!cm[g.tet]) {
                    cm[g.tet] = want;
                    q.push(g.tet);
                } else if (!(*cm[g.tet] == want)) {
                    ok = false;
                }
            }
        }
        if (!ok) continue;
        inv.corner_map.clear();
        inv.pair_map.assign(n, {});
        for (int t = 0; t < n && ok; ++t) {
            if (!cm[t]) {
                ok = false;
                break;
            }
            inv.corner_map.push_back(*cm[t]);
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    inv.pair_map[t][edge_pair(i, j)] = edge_pair((*cm[t])[i], (*cm[t])[j]);
            for (int r = 0; r < 3; ++r)
                if (inv.pair_map[t][st.role_pair[t][r]] != st.role_pair[inv.tet_map[t]][r]) ok = false;
        }
        if (ok) return inv;
    } while (std::next_permutation(base.begin(), base.end()));
    throw std::logic_error("involution: no role preserving symmetry found");
}

}  // namespace braidtri
