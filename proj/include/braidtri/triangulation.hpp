#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "braidtri/perm.hpp"

namespace braidtri {

struct Tetrahedron {
    std::string name;
    std::array<std::string, 4> labels{"0", "1", "2", "3"};
};

struct FaceRef {
    int tet = -1;
    int face = -1;  // opposite corner
    auto operator<=>(const FaceRef&) const = default;
};

struct Gluing {
    int tet = -1;
    Perm4 map;  // corners of this tet -> corners of the partner
};

struct FacePairing {
    FaceRef from;
    FaceRef to;
    Perm4 map;
};

class Triangulation {
public:
    int add_tet(std::string name, std::array<std::string, 4> labels = {"0", "1", "2", "3"});

    // Glues face f of t to face map[f] of t2 and records the inverse.
    void glue(int t, int f, int t2, Perm4 map);
    // Label form: glue("t2'", "015", "m1", "105").
    void glue(std::string_view a, std::string_view triple_a, std::string_view b,
              std::string_view triple_b);
    void unglue(int t, int f);

    int size() const { return int(tets_.size()); }
    const Tetrahedron& tet(int t) const { return tets_.at(t); }
    const std::vector<Tetrahedron>& tets() const { return tets_; }
    const std::optional<Gluing>& gluing(int t, int f) const { return glue_.at(t)[f]; }

    int find(std::string_view name) const;
    int at(std::string_view name) const;  // throws when absent
    int corner(int t, std::string_view label) const;

    void rename(int t, std::string name) { tets_.at(t).name = std::move(name); }
    void relabel(int t, std::array<std::string, 4> labels) { tets_.at(t).labels = std::move(labels); }

    // Renumbers the corners of t by sigma (old corner c becomes sigma[c]); labels follow.
    void permute_corners(int t, Perm4 sigma);

    bool closed() const;
    int glued_face_count() const;

    // Each pairing once, listed from its smaller (tet, face) end.
    std::vector<FacePairing> pairings() const;

private:
    std::vector<Tetrahedron> tets_;
    std::vector<std::array<std::optional<Gluing>, 4>> glue_;
};

struct ValidationReport {
    bool ok = false;
    bool closed = false;
    bool oriented = false;
    bool orientable = false;
    std::vector<FaceRef> unglued;
    std::vector<std::string> problems;
};

ValidationReport validate(const Triangulation& tri);

struct EdgeMember {
    int tet = -1;
    int a = -1, b = -1;  // endpoints in traversal orientation
    int exit = -1;       // corner opposite the face the walk leaves through
};

struct EdgeClass {
    std::vector<EdgeMember> members;
    int degree() const { return int(members.size()); }
};

// Index of the slot {i, j} among 01,02,03,12,13,23.
constexpr int slot_index(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

std::vector<EdgeClass> edge_classes(const Triangulation& tri);

// class_of[t][slot] for the classes returned by edge_classes.
std::vector<std::array<int, 6>> slot_classes(const Triangulation& tri,
                                             const std::vector<EdgeClass>& classes);

// Class containing the edge between the corners labelled la and lb of tet `name`.
int find_edge(const Triangulation& tri, const std::vector<EdgeClass>& classes,
              std::string_view name, std::string_view la, std::string_view lb);

struct CuspLink {
    int id = 0;
    std::vector<std::pair<int, int>> triangles;  // (tet, corner)
    std::vector<std::array<std::pair<int, int>, 4>> neighbours;  // across side f, entry f == corner unused
    int vertices = 0;
    int edges = 0;
    int euler_characteristic() const { return vertices - edges + int(triangles.size()); }
};

std::vector<CuspLink> cusp_links(const Triangulation& tri);

// +1/-1 per tet making every gluing orientation reversing, if one exists.
std::optional<std::vector<int>> orientation_signs(const Triangulation& tri);
bool is_oriented(const Triangulation& tri);
// Swaps corners 0 and 1 of the negatively signed tets.
Triangulation oriented_copy(const Triangulation& tri);

// "w0'(015)~w1(105)" with the left triple in label order.
std::string format_pairing(const Triangulation& tri, const FacePairing& fp);
// Orientation- and side-independent form of a pairing string.
std::string canonical_pairing(std::string_view text);
std::vector<std::string> canonical_pairings(const Triangulation& tri);

nlohmann::ordered_json to_json(const Triangulation& tri);
Triangulation from_json(const nlohmann::json& doc);

}  // namespace braidtri
