#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace braidtri {

// Permutation of the four corners of a tetrahedron.
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

    constexpr int operator[](int i) const { return img_[i]; }

    constexpr Perm4 inverse() const {
        Perm4 out;
        for (int i = 0; i < 4; ++i) out.img_[img_[i]] = std::uint8_t(i);
        return out;
    }

    // (a.of(b))[i] == a[b[i]]
    constexpr Perm4 of(const Perm4& other) const {
        Perm4 out;
        for (int i = 0; i < 4; ++i) out.img_[i] = img_[other.img_[i]];
        return out;
    }

    constexpr int sign() const {
        int s = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) s = -s;
        return s;
    }

    constexpr bool valid() const {
        int seen = 0;
        for (int i = 0; i < 4; ++i) {
            if (img_[i] > 3) return false;
            seen |= 1 << img_[i];
        }
        return seen == 15;
    }

    constexpr bool operator==(const Perm4&) const = default;

    std::string str() const {
        std::string s;
        for (int i = 0; i < 4; ++i) s += char('0' + img_[i]);
        return s;
    }

private:
    std::array<std::uint8_t, 4> img_;
};

// Opposite-edge pair of an edge {i, j}: 0 = {01,23}, 1 = {02,13}, 2 = {03,12}.
constexpr int edge_pair(int i, int j) {
    if (i > j) { int t = i; i = j; j = t; }
    if ((i == 0 && j == 1) || (i == 2 && j == 3)) return 0;
    if ((i == 0 && j == 2) || (i == 1 && j == 3)) return 1;
    return 2;
}

// The two corners besides i and j, in increasing order.
constexpr std::array<int, 2> other_corners(int i, int j) {
    std::array<int, 2> out{};
    int k = 0;
    for (int c = 0; c < 4; ++c)
        if (c != i && c != j) out[k++] = c;
    return out;
}

// Corners of face f (the face opposite corner f), increasing.
constexpr std::array<int, 3> face_corners(int f) {
    std::array<int, 3> out{};
    int k = 0;
    for (int c = 0; c < 4; ++c)
        if (c != f) out[k++] = c;
    return out;
}

}  // namespace braidtri
