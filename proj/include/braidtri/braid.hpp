#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace braidtri {

// Letters: +1 = s1, -1 = s1^-1, +2 = s2, -2 = s2^-1.
class BraidWord {
public:
    BraidWord() = default;
    explicit BraidWord(std::vector<int> letters);

    // "C^2 s1^5 s2^-1", "(s1 s2)^5 s1", "σ1σ2σ1"; throws std::invalid_argument on bad input.
    static BraidWord parse(std::string_view text);
    static BraidWord s1(int power = 1);
    static BraidWord s2(int power = 1);
    static BraidWord full_twist();  // C = (s1 s2)^3

    const std::vector<int>& letters() const { return letters_; }
    int size() const { return int(letters_.size()); }
    BraidWord operator*(const BraidWord& o) const;
    BraidWord pow(int k) const;
    BraidWord inverse() const;
    // Moves the first k letters to the end.
    BraidWord rotated(int k) const;
    // Run-length form such as "s1^3 s2 s1^-1".
    std::string str() const;
    bool operator==(const BraidWord&) const = default;

private:
    std::vector<int> letters_;
};

int exponent_sum(const BraidWord& w);

// Integer Laurent polynomial in t: exponent -> coefficient.
using Laurent = std::map<int, mpz_class>;

struct BurauMatrix {
    std::array<Laurent, 4> m;  // row-major 2x2
    BurauMatrix operator*(const BurauMatrix& o) const;
    bool operator==(const BurauMatrix& o) const;
    Laurent trace() const;
    Laurent det() const;
    std::string str() const;
    static BurauMatrix identity();
};

std::string laurent_str(const Laurent& p);

BurauMatrix reduced_burau(const BraidWord& w);
bool equal_in_b3(const BraidWord& a, const BraidWord& b);

struct ChainStep {
    int index = 0;
    std::string relation;  // "=" or "~"
    BraidWord from, to;
    int rotation = -1;     // left rotation of `from` that equals `to` in B3 (conjugacy steps)
    bool ok = false;
    std::string note;
};

struct ChainReport {
    int p = 0;
    bool ok = false;
    std::vector<ChainStep> steps;
    int failed_step = -1;
    int exponent_sum_start = 0;
    int exponent_sum_end = 0;
    bool same_trace_and_det = false;
};

using ChainTamper = std::function<void(std::vector<BraidWord>&)>;

// The chain from C^2 s1^p s2^-1 to s1^3 s2 s1^(p+6) s2. `tamper` may edit the words before checking.
std::vector<BraidWord> pretzel_chain_words(int p);
ChainReport verify_pretzel_chain(int p, const ChainTamper& tamper = {});

struct TLinkReport {
    int p = 0;
    bool equality = false;  // C^2 s1^p s2^-1 == s1^p (s1 s2)^5 s1
    int rotation = -1;      // letters moved from the end of s1^p (s1 s2)^5 s1 to its front to get s1^(p+1) (s1 s2)^5
    bool ok = false;
};

TLinkReport verify_tlink_form(int p);

std::string format_chain(const ChainReport& r);

}  // namespace braidtri
