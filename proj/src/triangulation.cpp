#include "braidtri/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace braidtri {

int Triangulation::add_tet(std::string name, std::array<std::string, 4> labels) {
    tets_.push_back({std::move(name), std::move(labels)});
    glue_.emplace_back();
    return size() - 1;
}

void Triangulation::glue(int t, int f, int t2, Perm4 map) {
    if (t < 0 || t >= size() || t2 < 0 || t2 >= size() || f < 0 || f > 3)
        throw std::out_of_range("glue: bad face reference");
    if (!map.valid()) throw std::invalid_argument("glue: map is not a permutation");
    const int f2 = map[f];
    if (t == t2 && f == f2)
        throw std::invalid_argument("glue: face " + tets_[t].name + "/" + std::to_string(f) +
                                    " glued to itself");
    if (glue_[t][f] || glue_[t2][f2])
        throw std::invalid_argument("glue: face of " + tets_[t].name + " or " + tets_[t2].name +
                                    " already glued");
    glue_[t][f] = Gluing{t2, map};
    glue_[t2][f2] = Gluing{t, map.inverse()};
}

void Triangulation::glue(std::string_view a, std::string_view ta, std::string_view b,
                         std::string_view tb) {
    const int A = at(a), B = at(b);
    if (ta.size() != 3 || tb.size() != 3)
        throw std::invalid_argument("glue: triples must have three labels");
    std::array<int, 4> img{-1, -1, -1, -1};
    int usedA = 0, usedB = 0;
    for (int k = 0; k < 3; ++k) {
        const int ca = corner(A, ta.substr(k, 1)), cb = corner(B, tb.substr(k, 1));
        img[ca] = cb;
        usedA |= 1 << ca;
        usedB |= 1 << cb;
    }
    if (std::popcount(unsigned(usedA)) != 3 || std::popcount(unsigned(usedB)) != 3)
        throw std::invalid_argument("glue: repeated label in triple");
    int fa = 0, fb = 0;
    for (int c = 0; c < 4; ++c) {
        if (!(usedA >> c & 1)) fa = c;
        if (!(usedB >> c & 1)) fb = c;
    }
    img[fa] = fb;
    glue(A, fa, B, Perm4(img[0], img[1], img[2], img[3]));
}

void Triangulation::unglue(int t, int f) {
    auto& g = glue_.at(t)[f];
    if (!g) return;
    glue_[g->tet][g->map[f]].reset();
    g.reset();
}

int Triangulation::find(std::string_view name) const {
    for (int t = 0; t < size(); ++t)
        if (tets_[t].name == name) return t;
    return -1;
}

int Triangulation::at(std::string_view name) const {
    const int t = find(name);
    if (t < 0) throw std::invalid_argument("no tetrahedron named " + std::string(name));
    return t;
}

int Triangulation::corner(int t, std::string_view label) const {
    const auto& L = tets_.at(t).labels;
    for (int c = 0; c < 4; ++c)
        if (L[c] == label) return c;
    throw std::invalid_argument("tetrahedron " + tets_[t].name + " has no corner " +
                                std::string(label));
}

void Triangulation::permute_corners(int t, Perm4 sigma) {
    std::array<std::string, 4> L;
    for (int c = 0; c < 4; ++c) L[sigma[c]] = tets_[t].labels[c];
    tets_[t].labels = L;
    // Collect the gluings of t, drop them, re-add through sigma.
    std::vector<std::pair<int, Gluing>> old;
    for (int f = 0; f < 4; ++f)
        if (glue_[t][f]) old.emplace_back(f, *glue_[t][f]);
    for (auto& [f, g] : old) unglue(t, f);
    const Perm4 inv = sigma.inverse();
    for (auto& [f, g] : old) {
        if (glue_[t][sigma[f]]) continue;  // self gluing already restored
        int t2 = g.tet;
        Perm4 m = g.map.of(inv);
        if (t2 == t) m = sigma.of(m);
        glue(t, sigma[f], t2, m);
    }
}

bool Triangulation::closed() const { return glued_face_count() == 4 * size(); }

int Triangulation::glued_face_count() const {
    int n = 0;
    for (const auto& g : glue_)
        for (const auto& x : g) n += x.has_value();
    return n;
}

std::vector<FacePairing> Triangulation::pairings() const {
    std::vector<FacePairing> out;
    for (int t = 0; t < size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = glue_[t][f];
            if (!g) continue;
            FaceRef a{t, f}, b{g->tet, g->map[f]};
            if (b < a) continue;
            out.push_back({a, b, g->map});
        }
    return out;
}

ValidationReport validate(const Triangulation& tri) {
    ValidationReport r;
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (!g) {
                r.unglued.push_back({t, f});
                continue;
            }
            const auto& back = tri.gluing(g->tet, g->map[f]);
            if (!back || back->tet != t || !(back->map == g->map.inverse()))
                r.problems.push_back("pairing at " + tri.tet(t).name + " face " +
                                     std::to_string(f) + " is not involutive");
            if (g->tet == t && g->map[f] == f)
                r.problems.push_back("face " + std::to_string(f) + " of " + tri.tet(t).name +
                                     " glued to itself");
        }
    r.closed = r.unglued.empty();
    if (r.closed && r.problems.empty()) {
        const auto classes = edge_classes(tri);
        std::vector<std::array<int, 6>> seen(tri.size(), std::array<int, 6>{});
        for (const auto& c : classes)
            for (const auto& m : c.members) ++seen[m.tet][slot_index(m.a, m.b)];
        for (int t = 0; t < tri.size(); ++t)
            for (int s = 0; s < 6; ++s)
                if (seen[t][s] != 1)
                    r.problems.push_back("edge slot " + std::to_string(s) + " of " + tri.tet(t).name +
                                         " is identified with itself in reverse");
    }
    const auto signs = orientation_signs(tri);
    r.orientable = signs.has_value();
    r.oriented = r.orientable && is_oriented(tri);
    r.ok = r.closed && r.problems.empty();
    return r;
}

std::vector<EdgeClass> edge_classes(const Triangulation& tri) {
    if (!tri.closed()) throw std::invalid_argument("edge_classes: triangulation is not closed");
    const int n = tri.size();
    std::vector<std::array<bool, 6>> done(n, std::array<bool, 6>{});
    std::vector<EdgeClass> out;
    for (int t0 = 0; t0 < n; ++t0)
        for (int i0 = 0; i0 < 4; ++i0)
            for (int j0 = i0 + 1; j0 < 4; ++j0) {
                if (done[t0][slot_index(i0, j0)]) continue;
                EdgeClass cls;
                int t = t0, a = i0, b = j0, k = other_corners(i0, j0)[0];
                const int start_k = k;
                do {
                    cls.members.push_back({t, a, b, k});
                    done[t][slot_index(a, b)] = true;
                    const int l = 6 - a - b - k;
                    const auto& g = *tri.gluing(t, k);
                    t = g.tet;
                    a = g.map[a];
                    b = g.map[b];
                    k = g.map[l];
                } while (!(t == t0 && a == i0 && b == j0 && k == start_k) &&
                         cls.members.size() <= size_t(12 * n));
                out.push_back(std::move(cls));
            }
    return out;
}

std::vector<std::array<int, 6>> slot_classes(const Triangulation& tri,
                                             const std::vector<EdgeClass>& classes) {
    std::vector<std::array<int, 6>> out(tri.size());
    for (auto& a : out) a.fill(-1);
    for (int c = 0; c < int(classes.size()); ++c)
        for (const auto& m : classes[c].members) out[m.tet][slot_index(m.a, m.b)] = c;
    return out;
}

int find_edge(const Triangulation& tri, const std::vector<EdgeClass>& classes,
              std::string_view name, std::string_view la, std::string_view lb) {
    const int t = tri.at(name);
    const int a = tri.corner(t, la), b = tri.corner(t, lb);
    return slot_classes(tri, classes)[t][slot_index(a, b)];
}

std::vector<CuspLink> cusp_links(const Triangulation& tri) {
    if (!tri.closed()) throw std::invalid_argument("cusp_links: triangulation is not closed");
    const int n = tri.size();
    std::vector<int> comp(4 * n, -1);
    std::vector<CuspLink> out;
    for (int s = 0; s < 4 * n; ++s) {
        if (comp[s] >= 0) continue;
        CuspLink link;
        link.id = int(out.size());
        std::queue<int> q;
        q.push(s);
        comp[s] = link.id;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            const int t = x / 4, v = x % 4;
            link.triangles.emplace_back(t, v);
            std::array<std::pair<int, int>, 4> nb;
            nb.fill({-1, -1});
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                const auto& g = *tri.gluing(t, f);
                const int y = 4 * g.tet + g.map[v];
                nb[f] = {g.tet, g.map[v]};
                if (comp[y] < 0) {
                    comp[y] = link.id;
                    q.push(y);
                }
            }
            link.neighbours.push_back(nb);
        }
        out.push_back(std::move(link));
    }
    // Vertices of a link are edge ends.
    const auto classes = edge_classes(tri);
    std::vector<std::set<std::pair<int, int>>> ends(out.size());
    for (int c = 0; c < int(classes.size()); ++c)
        for (const auto& m : classes[c].members) {
            ends[comp[4 * m.tet + m.a]].insert({c, 0});
            ends[comp[4 * m.tet + m.b]].insert({c, 1});
        }
    for (auto& link : out) {
        link.vertices = int(ends[link.id].size());
        link.edges = 3 * int(link.triangles.size()) / 2;
    }
    return out;
}

std::optional<std::vector<int>> orientation_signs(const Triangulation& tri) {
    const int n = tri.size();
    std::vector<int> o(n, 0);
    for (int root = 0; root < n; ++root) {
        if (o[root]) continue;
        o[root] = 1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                const int want = -o[t] * g->map.sign();
                if (!o[g->tet]) {
                    o[g->tet] = want;
                    stack.push_back(g->tet);
                } else if (o[g->tet] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return o;
}

bool is_oriented(const Triangulation& tri) {
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluing(t, f);
            if (g && g->map.sign() != -1) return false;
        }
    return true;
}

Triangulation oriented_copy(const Triangulation& tri) {
    const auto signs = orientation_signs(tri);
    if (!signs) throw std::invalid_argument("triangulation is not orientable");
    Triangulation out = tri;
    for (int t = 0; t < tri.size(); ++t)
        if ((*signs)[t] < 0) out.permute_corners(t, Perm4(1, 0, 2, 3));
    return out;
}

std::string format_pairing(const Triangulation& tri, const FacePairing& fp) {
    const auto& A = tri.tet(fp.from.tet);
    const auto& B = tri.tet(fp.to.tet);
    auto cs = face_corners(fp.from.face);
    std::sort(cs.begin(), cs.end(), [&](int x, int y) { return A.labels[x] < A.labels[y]; });
    std::string l, r;
    for (int c : cs) {
        l += A.labels[c];
        r += B.labels[fp.map[c]];
    }
    return A.name + "(" + l + ")~" + B.name + "(" + r + ")";
}

namespace {

struct Side {
    std::string name, triple;
};

std::pair<Side, Side> split_pairing(std::string_view text) {
    const auto tilde = text.find('~');
    if (tilde == std::string_view::npos) throw std::invalid_argument("pairing needs '~'");
    auto side = [](std::string_view s) {
        const auto open = s.find('('), close = s.find(')');
        if (open == std::string_view::npos || close == std::string_view::npos || close < open)
            throw std::invalid_argument("bad pairing side: " + std::string(s));
        return Side{std::string(s.substr(0, open)), std::string(s.substr(open + 1, close - open - 1))};
    };
    return {side(text.substr(0, tilde)), side(text.substr(tilde + 1))};
}

std::string sorted_form(const Side& a, const Side& b) {
    std::vector<std::pair<char, char>> z;
    for (size_t k = 0; k < a.triple.size(); ++k) z.emplace_back(a.triple[k], b.triple[k]);
    std::sort(z.begin(), z.end());
    std::string l, r;
    for (auto [x, y] : z) {
        l += x;
        r += y;
    }
    return a.name + "(" + l + ")~" + b.name + "(" + r + ")";
}

}  // namespace

std::string canonical_pairing(std::string_view text) {
    const auto [a, b] = split_pairing(text);
    if (a.triple.size() != 3 || b.triple.size() != 3)
        throw std::invalid_argument("pairing triples must have three labels");
    return std::min(sorted_form(a, b), sorted_form(b, a));
}

std::vector<std::string> canonical_pairings(const Triangulation& tri) {
    std::vector<std::string> out;
    for (const auto& fp : tri.pairings()) out.push_back(canonical_pairing(format_pairing(tri, fp)));
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::ordered_json to_json(const Triangulation& tri) {
    nlohmann::ordered_json doc;
    doc["tets"] = nlohmann::ordered_json::array();
    for (const auto& t : tri.tets()) {
        nlohmann::ordered_json rec;
        rec["name"] = t.name;
        rec["labels"] = t.labels;
        doc["tets"].push_back(rec);
    }
    doc["gluings"] = nlohmann::ordered_json::array();
    for (const auto& fp : tri.pairings()) {
        nlohmann::ordered_json rec;
        rec["from"] = {fp.from.tet, fp.from.face};
        rec["to"] = {fp.to.tet, fp.to.face};
        auto m = nlohmann::ordered_json::array();
        for (int c : face_corners(fp.from.face)) m.push_back({c, fp.map[c]});
        rec["map"] = m;
        doc["gluings"].push_back(rec);
    }
    return doc;
}

Triangulation from_json(const nlohmann::json& doc) {
    Triangulation tri;
    if (!doc.is_object() || !doc.contains("tets") || !doc.contains("gluings"))
        throw std::runtime_error("document needs \"tets\" and \"gluings\"");
    int k = 0;
    for (const auto& rec : doc.at("tets")) {
        try {
            std::array<std::string, 4> labels{"0", "1", "2", "3"};
            if (rec.contains("labels")) labels = rec.at("labels").get<std::array<std::string, 4>>();
            tri.add_tet(rec.at("name").get<std::string>(), labels);
        } catch (const std::exception& e) {
            throw std::runtime_error("tets[" + std::to_string(k) + "]: " + e.what());
        }
        ++k;
    }
    k = 0;
    for (const auto& rec : doc.at("gluings")) {
        const std::string where = "gluings[" + std::to_string(k++) + "]: ";
        try {
            const auto from = rec.at("from").get<std::array<int, 2>>();
            const auto to = rec.at("to").get<std::array<int, 2>>();
            const auto pairs = rec.at("map").get<std::vector<std::array<int, 2>>>();
            if (from[0] < 0 || from[0] >= tri.size() || to[0] < 0 || to[0] >= tri.size() ||
                from[1] < 0 || from[1] > 3 || to[1] < 0 || to[1] > 3)
                throw std::runtime_error("face reference out of range");
            if (pairs.size() != 3) throw std::runtime_error("map needs three corner pairs");
            std::array<int, 4> img{-1, -1, -1, -1};
            img[from[1]] = to[1];
            for (auto [c, d] : pairs) {
                if (c < 0 || c > 3 || d < 0 || d > 3) throw std::runtime_error("corner out of range");
                if (c == from[1]) throw std::runtime_error("map uses the opposite corner of the source face");
                if (d == to[1])
                    throw std::runtime_error("corner " + std::to_string(c) +
                                             " maps to the opposite corner of the target face");
                if (img[c] != -1) throw std::runtime_error("corner repeated in map");
                img[c] = d;
            }
            const Perm4 p(img[0], img[1], img[2], img[3]);
            if (!p.valid()) throw std::runtime_error("map is not a bijection");
            tri.glue(from[0], from[1], to[0], p);
        } catch (const std::exception& e) {
            throw std::runtime_error(where + e.what());
        }
    }
    return tri;
}

}  // namespace braidtri
