#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "braidtri/triangulation.hpp"

namespace support {

// Sections of data/pairing_tables.txt, keyed "hat 1", "tau 3", ...
inline std::map<std::string, std::vector<std::string>> load_tables() {
    std::ifstream in(std::string(BRAIDTRI_TEST_DATA) + "/pairing_tables.txt");
    if (!in) throw std::runtime_error("missing pairing_tables.txt");
    std::map<std::string, std::vector<std::string>> out;
    std::string line, cur;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '[') {
            cur = line.substr(1, line.size() - 2);
            continue;
        }
        out[cur].push_back(line);
    }
    return out;
}

// t2' and m1 are the table names of w0' and w_p.
inline std::string rename(std::string s, int p) {
    auto sub = [&](const std::string& from, const std::string& to) {
        for (size_t k = 0; (k = s.find(from, k)) != std::string::npos; k += to.size()) s.replace(k, from.size(), to);
    };
    sub("t2'", "w0'");
    sub("m1", "w" + std::to_string(p));
    return s;
}

inline std::vector<std::string> canonical(const std::vector<std::string>& rows, int p) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(braidtri::canonical_pairing(rename(r, p)));
    std::sort(out.begin(), out.end());
    return out;
}

// The generic pairing families for tau_p, p >= 3.
inline std::vector<std::string> generic_tau_rows(int p) {
    auto w = [](int i, bool primed) { return "w" + std::to_string(i) + (primed ? "'" : ""); };
    std::vector<std::string> r;
    for (int i = 0; i <= p - 1; ++i) r.push_back(w(i, true) + "(015)~" + w(i + 1, false) + "(105)");
    for (int i = 0; i <= p - 2; ++i) r.push_back(w(i, true) + "(125)~" + w(i + 1, true) + "(025)");
    for (int i = 1; i <= p - 1; ++i) r.push_back(w(i, false) + "(025)~" + w(i + 1, false) + "(125)");
    for (int i = 1; i <= p - 2; ++i) r.push_back(w(i, false) + "(012)~" + w(i + 1, true) + "(102)");
    r.push_back("w0'(012)~" + w(p, false) + "(021)");
    r.push_back("w0'(025)~" + w(p, false) + "(520)");
    r.push_back("s(cad)~w1(125)");
    r.push_back("s(abc)~w1'(201)");
    r.push_back("s(dbc)~" + w(p - 1, true) + "(125)");
    r.push_back("s(bad)~" + w(p - 1, false) + "(201)");
    return r;
}

struct CliResult {
    int code = -1;
    std::string out;
};

inline CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(BRAIDTRI_CLI) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

inline std::string random_word(std::mt19937_64& rng, int len) {
    std::string w;
    for (int i = 0; i < len; ++i) w += (rng() & 1) ? 'R' : 'L';
    return w;
}

}  // namespace support
