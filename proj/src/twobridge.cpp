#include "braidtri/twobridge.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace braidtri {

namespace {

struct Rule {
    bool front_a;
    const char* a;
    bool front_b;
    const char* b;
};

// Faces of layer i (left) glued to faces of layer i+1 (right).
constexpr Rule kR[4] = {
    {true, "013", true, "023"},
    {true, "123", false, "213"},
    {false, "023", false, "013"},
    {false, "012", true, "021"},
};
constexpr Rule kL[4] = {
    {true, "013", false, "103"},
    {true, "123", true, "023"},
    {false, "012", true, "102"},
    {false, "023", false, "123"},
};

std::string layer(int i, bool front) { return "T" + std::to_string(i) + (front ? "" : "'"); }

}  // namespace

std::string parse_twist_word(std::string_view text) {
    std::string out;
    size_t i = 0;
    while (i < text.size()) {
        const char c = char(std::toupper(static_cast<unsigned char>(text[i])));
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c != 'R' && c != 'L') throw std::invalid_argument(std::string("twist word: unexpected '") + text[i] + "'");
        ++i;
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        int count = 1;
        if (j > i) {
            if (j - i > 4) throw std::invalid_argument("twist word: run length too large");
            count = std::stoi(std::string(text.substr(i, j - i)));
        }
        out.append(size_t(count), c);
        i = j;
    }
    if (out.size() < 2) throw std::invalid_argument("twist word must have at least 2 letters");
    return out;
}

Triangulation build_two_bridge(std::string_view word_text) {
    const std::string w = parse_twist_word(word_text);
    const int N = int(w.size());
    Triangulation tri;
    for (int i = 1; i < N; ++i) {
        tri.add_tet(layer(i, true));
        tri.add_tet(layer(i, false));
    }
    for (int i = 1; i + 1 < N; ++i)
        for (const auto& r : w[i] == 'R' ? kR : kL) tri.glue(layer(i, r.front_a), r.a, layer(i + 1, r.front_b), r.b);
    // Bottom clasp: T1 faces 012, 023 against T1' faces.
    if (w.front() == 'R') {
        tri.glue("T1", "012", "T1'", "013");
        tri.glue("T1", "023", "T1'", "123");
    } else {
        tri.glue("T1", "012", "T1'", "312");
        tri.glue("T1", "023", "T1'", "013");
    }
    const std::string top = layer(N - 1, true), topb = layer(N - 1, false);
    if (w.back() == 'R') {
        tri.glue(topb, "012", top, "013");
        tri.glue(topb, "023", top, "123");
    } else {
        tri.glue(topb, "012", top, "312");
        tri.glue(topb, "023", top, "013");
    }
    return oriented_copy(tri);
}

TwoBridgeReport twobridge_report(std::string_view word) {
    TwoBridgeReport rep;
    rep.word = parse_twist_word(word);
    const Triangulation tri = build_two_bridge(rep.word);
    rep.tets = tri.size();
    rep.gluings = int(tri.pairings().size());
    rep.validation = validate(tri);
    for (const auto& ec : edge_classes(tri)) rep.edge_degrees.push_back(ec.degree());
    std::sort(rep.edge_degrees.begin(), rep.edge_degrees.end());
    const auto links = cusp_links(tri);
    rep.cusps = int(links.size());
    for (const auto& l : links) rep.euler.push_back(l.euler_characteristic());
    return rep;
}

}  // namespace braidtri
