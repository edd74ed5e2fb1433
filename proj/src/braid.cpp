#include "braidtri/braid.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace braidtri {

namespace {

std::vector<int> free_reduce(const std::vector<int>& in) {
    std::vector<int> out;
    for (int x : in) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

void clean(Laurent& p) { std::erase_if(p, [](const auto& kv) { return kv.second == 0; }); }

Laurent mul(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
    clean(out);
    return out;
}

Laurent add(Laurent a, const Laurent& b, int sign = 1) {
    for (const auto& [e, c] : b) a[e] += sign * c;
    clean(a);
    return a;
}

Laurent mono(int c, int e) {
    Laurent p;
    if (c) p[e] = c;
    return p;
}

BurauMatrix generator(int letter) {
    BurauMatrix g;
    switch (letter) {
        case 1: g.m = {mono(-1, 1), mono(1, 0), Laurent{}, mono(1, 0)}; break;
        case -1: g.m = {mono(-1, -1), mono(1, -1), Laurent{}, mono(1, 0)}; break;
        case 2: g.m = {mono(1, 0), Laurent{}, mono(1, 1), mono(-1, 1)}; break;
        case -2: g.m = {mono(1, 0), Laurent{}, mono(1, 0), mono(-1, -1)}; break;
        default: throw std::invalid_argument("bad braid letter");
    }
    return g;
}

struct Parser {
    std::string_view s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*' || s[i] == '.')) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("braid word: " + what + " at position " + std::to_string(i));
    }
    bool starts(std::string_view t) const { return s.substr(i, t.size()) == t; }

    int exponent() {
        skip();
        if (i >= s.size() || s[i] != '^') return 1;
        ++i;
        skip();
        bool brace = false;
        if (i < s.size() && s[i] == '{') {
            brace = true;
            ++i;
        }
        int sign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) sign = s[i++] == '-' ? -1 : 1;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected exponent");
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i++] - '0');
            if (v > 100000) fail("exponent too large");
        }
        if (brace) {
            if (i >= s.size() || s[i] != '}') fail("expected }");
            ++i;
        }
        return sign * int(v);
    }

    BraidWord atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            BraidWord w = sequence();
            skip();
            if (i >= s.size() || s[i] != ')') fail("expected )");
            ++i;
            return w;
        }
        if (s[i] == 'C') {
            ++i;
            return BraidWord::full_twist();
        }
        if (s[i] == 's' || starts("σ")) {
            i += s[i] == 's' ? 1 : std::string_view("σ").size();
            skip();
            if (i < s.size() && s[i] == '_') ++i;
            if (i < s.size() && (s[i] == '1' || s[i] == '2')) return BraidWord({s[i++] - '0'});
            if (starts("₁")) { i += std::string_view("₁").size(); return BraidWord({1}); }
            if (starts("₂")) { i += std::string_view("₂").size(); return BraidWord({2}); }
            fail("expected generator index 1 or 2");
        }
        fail(std::string("unexpected character '") + s[i] + "'");
    }

    BraidWord sequence() {
        BraidWord w;
        for (;;) {
            skip();
            if (i >= s.size() || s[i] == ')') return w;
            BraidWord a = atom();
            w = w * a.pow(exponent());
        }
    }
};

}  // namespace

BraidWord::BraidWord(std::vector<int> letters) : letters_(free_reduce(letters)) {
    for (int x : letters_)
        if (x != 1 && x != -1 && x != 2 && x != -2) throw std::invalid_argument("bad braid letter");
}

BraidWord BraidWord::parse(std::string_view text) {
    Parser p{text};
    BraidWord w = p.sequence();
    p.skip();
    if (p.i != text.size()) p.fail("unbalanced )");
    return w;
}

BraidWord BraidWord::s1(int power) { return BraidWord({1}).pow(power); }
BraidWord BraidWord::s2(int power) { return BraidWord({2}).pow(power); }
BraidWord BraidWord::full_twist() { return BraidWord({1, 2}).pow(3); }

BraidWord BraidWord::operator*(const BraidWord& o) const {
    std::vector<int> l = letters_;
    l.insert(l.end(), o.letters_.begin(), o.letters_.end());
    return BraidWord(std::move(l));
}

BraidWord BraidWord::inverse() const {
    std::vector<int> l;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) l.push_back(-*it);
    return BraidWord(std::move(l));
}

BraidWord BraidWord::pow(int k) const {
    const BraidWord base = k < 0 ? inverse() : *this;
    BraidWord out;
    for (int j = 0; j < std::abs(k); ++j) out = out * base;
    return out;
}

BraidWord BraidWord::rotated(int k) const {
    if (letters_.empty()) return *this;
    const int n = size();
    k = ((k % n) + n) % n;
    std::vector<int> l(letters_.begin() + k, letters_.end());
    l.insert(l.end(), letters_.begin(), letters_.begin() + k);
    return BraidWord(std::move(l));
}

std::string BraidWord::str() const {
    if (letters_.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < letters_.size()) {
        size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
        const int run = int(j - i) * (letters_[i] > 0 ? 1 : -1);
        if (!out.empty()) out += ' ';
        out += "s" + std::to_string(std::abs(letters_[i]));
        if (run != 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

int exponent_sum(const BraidWord& w) {
    int s = 0;
    for (int x : w.letters()) s += x > 0 ? 1 : -1;
    return s;
}

BurauMatrix BurauMatrix::identity() {
    BurauMatrix I;
    I.m = {mono(1, 0), Laurent{}, Laurent{}, mono(1, 0)};
    return I;
}

BurauMatrix BurauMatrix::operator*(const BurauMatrix& o) const {
    BurauMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[2 * i + j] = add(mul(m[2 * i], o.m[j]), mul(m[2 * i + 1], o.m[2 + j]));
    return r;
}

bool BurauMatrix::operator==(const BurauMatrix& o) const { return m == o.m; }

Laurent BurauMatrix::trace() const { return add(m[0], m[3]); }
Laurent BurauMatrix::det() const { return add(mul(m[0], m[3]), mul(m[1], m[2]), -1); }

std::string laurent_str(const Laurent& p) {
    if (p.empty()) return "0";
    std::string out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.get_str();
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        if (c < 0) cs = cs.substr(1);
        if (e == 0) out += cs;
        else {
            if (cs != "1") out += cs + "*";
            out += e == 1 ? "t" : "t^" + std::to_string(e);
        }
    }
    return out;
}

std::string BurauMatrix::str() const {
    return "[[" + laurent_str(m[0]) + ", " + laurent_str(m[1]) + "], [" + laurent_str(m[2]) + ", " +
           laurent_str(m[3]) + "]]";
}

BurauMatrix reduced_burau(const BraidWord& w) {
    BurauMatrix r = BurauMatrix::identity();
    for (int x : w.letters()) r = r * generator(x);
    return r;
}

bool equal_in_b3(const BraidWord& a, const BraidWord& b) { return reduced_burau(a) == reduced_burau(b); }

std::vector<BraidWord> pretzel_chain_words(int p) {
    using W = BraidWord;
    const W C = W::full_twist(), s1 = W::s1(), s2 = W::s2();
    const W s121 = s1 * s2 * s1, s212 = s2 * s1 * s2;
    return {
        C.pow(2) * W::s1(p) * W::s2(-1),
        s212 * s121 * C * W::s1(p) * W::s2(-1),
        s212 * C * W::s1(p + 2),
        s1 * s2 * C * W::s1(p + 3),
        s2 * s121 * s121 * W::s1(p + 4),
        s1 * s2 * s1 * s1 * s1 * s2 * W::s1(p + 5),
        W::s1(3) * s2 * W::s1(p + 6) * s2,
    };
}

ChainReport verify_pretzel_chain(int p, const ChainTamper& tamper) {
    ChainReport rep;
    rep.p = p;
    auto words = pretzel_chain_words(p);
    if (tamper) tamper(words);
    static const char* relation[] = {"=", "~", "=", "~", "=", "~"};
    static const char* notes[] = {
        "C = (s2 s1 s2)(s1 s2 s1)",
        "conjugate, then C central",
        "braid relation and C central",
        "conjugate, C = (s1 s2 s1)^2",
        "braid relation",
        "conjugate",
    };
    rep.ok = true;
    for (size_t k = 0; k + 1 < words.size(); ++k) {
        ChainStep st;
        st.index = int(k);
        st.relation = k < 6 ? relation[k] : "=";
        st.note = k < 6 ? notes[k] : "";
        st.from = words[k];
        st.to = words[k + 1];
        if (st.relation == "=") {
            st.ok = equal_in_b3(st.from, st.to);
        } else {
            const BurauMatrix target = reduced_burau(st.to);
            for (int r = 1; r < std::max(1, st.from.size()); ++r)
                if (reduced_burau(st.from.rotated(r)) == target) {
                    st.rotation = r;
                    break;
                }
            st.ok = st.rotation >= 0;
        }
        if (!st.ok && rep.failed_step < 0) {
            rep.failed_step = int(k);
            rep.ok = false;
        }
        rep.steps.push_back(std::move(st));
    }
    rep.exponent_sum_start = exponent_sum(words.front());
    rep.exponent_sum_end = exponent_sum(words.back());
    const BurauMatrix a = reduced_burau(words.front()), b = reduced_burau(words.back());
    rep.same_trace_and_det = a.trace() == b.trace() && a.det() == b.det();
    return rep;
}

TLinkReport verify_tlink_form(int p) {
    using W = BraidWord;
    TLinkReport rep;
    rep.p = p;
    const W s12 = W::s1() * W::s2();
    const W lhs = W::full_twist().pow(2) * W::s1(p) * W::s2(-1);
    const W mid = W::s1(p) * s12.pow(5) * W::s1();
    const W target = W::s1(p + 1) * s12.pow(5);
    rep.equality = equal_in_b3(lhs, mid) && equal_in_b3(lhs, W::s1(p) * s12.pow(6) * W::s2(-1));
    for (int r = 0; r < mid.size(); ++r)
        if (mid.rotated(-r) == target) {
            rep.rotation = r;
            break;
        }
    rep.ok = rep.equality && rep.rotation >= 0;
    return rep;
}

std::string format_chain(const ChainReport& r) {
    std::ostringstream os;
    os << "p=" << r.p << "  exponent sums " << r.exponent_sum_start << " -> " << r.exponent_sum_end << '\n';
    for (const auto& st : r.steps) {
        os << "  step " << st.index << "  " << st.relation << "  " << (st.ok ? "ok  " : "FAIL") << "  ";
        if (st.relation == "~") os << (st.rotation >= 0 ? "rotate left " + std::to_string(st.rotation) : std::string("no rotation")) << "  ";
        os << st.from.str() << "  ->  " << st.to.str() << "  (" << st.note << ")\n";
    }
    return os.str();
}

}  // namespace braidtri
