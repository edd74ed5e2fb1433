// braidtri command line: build, simplify, solve, angles, shapes, braid-check, twobridge.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "braidtri/braid.hpp"
#include "braidtri/pipeline.hpp"
#include "braidtri/tau.hpp"
#include "braidtri/twobridge.hpp"

using namespace braidtri;
using ojson = nlohmann::ordered_json;

namespace {

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string command;
    std::string p_range;
    std::string word;
    std::string file;
    double tol = 1e-12;
    int max_iter = 200;
    std::uint64_t seed = 1;
    int starts = 1;
    Format format = Format::Text;
    std::string output;
    bool lp_point = false;
    int tamper_step = -1;
};

struct Job {
    enum class Kind { Tau, Word, File } kind = Kind::Tau;
    int p = 0;
    std::string word, file;
    std::string label() const {
        switch (kind) {
            case Kind::Tau: return "p=" + std::to_string(p);
            case Kind::Word: return word;
            default: return file;
        }
    }
};

struct JobOutput {
    ojson json;
    std::string text;
    std::vector<std::string> csv;
    int code = 0;
};

std::string g12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<int> parse_range(const std::string& s) {
    auto num = [&](const std::string& t) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size()) throw std::invalid_argument("bad --p value '" + s + "'");
        return v;
    };
    int a = 0, b = 0;
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        a = b = num(s);
    } else {
        a = num(s.substr(0, dots));
        b = num(s.substr(dots + 2));
    }
    if (a < 1) throw std::invalid_argument("--p must be at least 1");
    if (b < a) throw std::invalid_argument("empty --p range '" + s + "'");
    if (b > 1000) throw std::invalid_argument("--p above 1000 not supported");
    std::vector<int> out;
    for (int p = a; p <= b; ++p) out.push_back(p);
    return out;
}

std::vector<Job> make_jobs(const RunConfig& cfg, bool allow_word, bool allow_file) {
    const int given = !cfg.p_range.empty() + !cfg.word.empty() + !cfg.file.empty();
    if (given != 1) throw std::invalid_argument("give exactly one of --p, --word, --file");
    std::vector<Job> jobs;
    if (!cfg.p_range.empty()) {
        for (int p : parse_range(cfg.p_range)) jobs.push_back({Job::Kind::Tau, p, "", ""});
    } else if (!cfg.word.empty()) {
        if (!allow_word) throw std::invalid_argument(cfg.command + " does not take --word");
        jobs.push_back({Job::Kind::Word, 0, parse_twist_word(cfg.word), ""});
    } else {
        if (!allow_file) throw std::invalid_argument(cfg.command + " does not take --file");
        jobs.push_back({Job::Kind::File, 0, "", cfg.file});
    }
    return jobs;
}

Triangulation load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return from_json(doc);
}

Triangulation job_triangulation(const Job& j) {
    switch (j.kind) {
        case Job::Kind::Tau: return build_tau(j.p);
        case Job::Kind::Word: return build_two_bridge(j.word);
        default: return load_file(j.file);
    }
}

SolveOptions solve_options(const RunConfig& cfg) {
    SolveOptions o;
    o.max.tol = cfg.tol;
    o.max.max_iter = cfg.max_iter;
    o.max.seed = cfg.seed;
    o.max.starts = cfg.starts;
    return o;
}

SolveReport job_solve(const Job& j, const RunConfig& cfg) {
    const auto opt = solve_options(cfg);
    if (j.kind == Job::Kind::Tau) return solve_tau(j.p, opt);
    return solve_triangulation(job_triangulation(j), opt, nullptr, j.label());
}

// Role names per angle slot for tau_p; empty otherwise.
std::vector<std::array<std::string, 3>> slot_roles(const Job& j, const Triangulation& tri) {
    std::vector<std::array<std::string, 3>> out(tri.size());
    if (j.kind != Job::Kind::Tau) return out;
    const auto st = assign_veering(tri);
    static const char* names[3] = {"R", "B", "D"};
    for (int t = 0; t < tri.size(); ++t)
        for (int r = 0; r < 3; ++r) out[t][st.role_pair[t][r]] = names[r];
    return out;
}

// ---- commands

JobOutput cmd_build(const Job& j, const RunConfig&) {
    const Triangulation tri = job_triangulation(j);
    const auto rep = validate(tri);
    JobOutput o;
    o.code = rep.ok ? 0 : 1;
    std::vector<int> degrees;
    std::map<int, int> census;
    ojson cusps = ojson::array();
    if (rep.closed) {
        for (const auto& ec : edge_classes(tri)) {
            degrees.push_back(ec.degree());
            ++census[ec.degree()];
        }
        for (const auto& l : cusp_links(tri))
            cusps.push_back({{"id", l.id}, {"triangles", l.triangles.size()}, {"euler", l.euler_characteristic()}});
    }
    ojson cj = ojson::array();
    std::string census_str;
    for (auto [d, c] : census) {
        cj.push_back({{"degree", d}, {"count", c}});
        census_str += (census_str.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(c);
    }
    std::vector<std::string> pairings;
    for (const auto& fp : tri.pairings()) pairings.push_back(format_pairing(tri, fp));

    o.json["source"] = j.label();
    o.json["tets"] = tri.size();
    o.json["gluings"] = tri.pairings().size();
    o.json["valid"] = rep.ok;
    o.json["closed"] = rep.closed;
    o.json["oriented"] = rep.oriented;
    o.json["problems"] = rep.problems;
    o.json["edge_degrees"] = degrees;
    o.json["degree_census"] = cj;
    o.json["cusps"] = cusps;
    o.json["pairings"] = pairings;
    o.json["triangulation"] = to_json(tri);

    std::ostringstream t;
    t << j.label() << ": tets " << tri.size() << ", gluings " << tri.pairings().size() << ", valid "
      << (rep.ok ? "yes" : "no") << ", edges " << degrees.size() << " (" << census_str << "), cusps "
      << cusps.size() << "\n";
    for (const auto& c : cusps) t << "  cusp " << c["id"] << " euler " << c["euler"] << "\n";
    for (const auto& s : pairings) t << "  " << s << "\n";
    for (const auto& s : rep.problems) t << "  problem: " << s << "\n";
    o.text = t.str();
    std::string euler;
    for (const auto& c : cusps) euler += (euler.empty() ? "" : " ") + c["euler"].dump();
    o.csv.push_back(j.label() + "," + std::to_string(tri.size()) + "," + std::to_string(tri.pairings().size()) +
                    "," + (rep.ok ? "true" : "false") + "," + std::to_string(degrees.size()) + "," + census_str +
                    "," + std::to_string(cusps.size()) + "," + euler);
    return o;
}

JobOutput cmd_simplify(const Job& j, const RunConfig&) {
    const Triangulation hat = build_hat_tau(j.p);
    int mid = 0;
    const Triangulation simp = simplify_hat_to_tau(hat, j.p, &mid);
    const Triangulation tau = build_tau(j.p);
    auto names = [](const Triangulation& t) {
        std::vector<std::string> n;
        for (const auto& x : t.tets()) n.push_back(x.name);
        std::sort(n.begin(), n.end());
        return n;
    };
    const bool same = names(simp) == names(tau) && canonical_pairings(simp) == canonical_pairings(tau);
    JobOutput o;
    o.code = same ? 0 : 1;
    o.json["source"] = j.label();
    o.json["tets"] = {hat.size(), mid, simp.size()};
    o.json["matches_tau"] = same;
    o.json["pairings"] = canonical_pairings(simp);
    o.text = j.label() + ": tets " + std::to_string(hat.size()) + " -> " + std::to_string(mid) + " -> " +
             std::to_string(simp.size()) + ", matches build_tau " + (same ? "yes" : "no") + "\n";
    o.csv.push_back(j.label() + "," + std::to_string(hat.size()) + "," + std::to_string(mid) + "," +
                    std::to_string(simp.size()) + "," + (same ? "true" : "false"));
    return o;
}

JobOutput cmd_solve(const Job& j, const RunConfig& cfg) {
    const SolveReport r = job_solve(j, cfg);
    JobOutput o;
    o.code = r.geometric() ? 0 : 2;
    o.json = to_json(r);
    const char* v = r.geometric() ? "Geometric" : "Degenerate";
    std::ostringstream t;
    t << r.source << ": " << v << ", volume " << g12(r.max.volume) << ", min_angle " << g12(r.max.min_angle)
      << ", grad_norm " << g12(r.max.grad_norm) << ", iterations " << r.max.iterations << ", edge_residual "
      << g12(r.verdict.max_edge_residual) << ", cusp_residual " << g12(r.verdict.max_cusp_residual) << "\n";
    if (!r.geometric()) t << "  " << r.verdict.reason << "\n";
    o.text = t.str();
    o.csv.push_back(r.source + "," + std::to_string(r.tets) + "," + v + "," + status_name(r.max.status) + "," +
                    g12(r.max.volume) + "," + g12(r.max.min_angle) + "," + g12(r.max.grad_norm) + "," +
                    std::to_string(r.max.iterations) + "," + g12(r.verdict.max_edge_residual) + "," +
                    g12(r.verdict.max_cusp_residual));
    return o;
}

JobOutput cmd_angles(const Job& j, const RunConfig& cfg) {
    const Triangulation tri = job_triangulation(j);
    AngleVector theta;
    JobOutput o;
    std::string kind;
    if (cfg.lp_point) {
        kind = "interior_point";
        const auto ip = find_interior_point(build_constraints(tri));
        theta = ip.theta;
        o.code = ip.feasible() ? 0 : 2;
    } else {
        kind = "maximizer";
        const SolveReport r = job_solve(j, cfg);
        theta = r.max.theta;
        o.code = r.max.interior ? 0 : 2;
    }
    const auto roles = slot_roles(j, tri);
    o.json["source"] = j.label();
    o.json["kind"] = kind;
    ojson rows = ojson::array();
    std::ostringstream t;
    t << j.label() << " (" << kind << ")\n";
    for (size_t s = 0; s < theta.size(); ++s) {
        const int tet = int(s / 3), k = int(s % 3);
        const auto& name = tri.tet(tet).name;
        const auto pair = pair_label(tri.tet(tet), k);
        const double over_pi = theta[s] / std::numbers::pi;
        rows.push_back({{"tet", name}, {"pair", pair}, {"role", roles[tet][k]}, {"radians", theta[s]},
                        {"over_pi", over_pi}});
        t << "  " << name << " " << pair << " " << (roles[tet][k].empty() ? "-" : roles[tet][k]) << " "
          << g12(theta[s]) << " " << g12(over_pi) << "\n";
        o.csv.push_back(j.label() + "," + name + "," + pair + "," + roles[tet][k] + "," + g12(theta[s]) + "," +
                        g12(over_pi));
    }
    if (theta.empty()) t << "  no angle structure\n";
    o.json["angles"] = rows;
    o.text = t.str();
    return o;
}

JobOutput cmd_shapes(const Job& j, const RunConfig& cfg) {
    const SolveReport r = job_solve(j, cfg);
    JobOutput o;
    o.code = r.geometric() ? 0 : 2;
    o.json["source"] = r.source;
    o.json["verdict"] = r.geometric() ? "Geometric" : "Degenerate";
    ojson sj = ojson::array();
    std::ostringstream t;
    t << r.source << ": " << (r.geometric() ? "Geometric" : "Degenerate") << "\n";
    for (size_t k = 0; k < r.shapes.size(); ++k) {
        const auto& z = r.shapes[k].z;
        const auto& name = r.cs.tet_names[k];
        sj.push_back({{"tet", name},
                      {"z", {z[0].real(), z[0].imag()}},
                      {"z1", {z[1].real(), z[1].imag()}},
                      {"z2", {z[2].real(), z[2].imag()}}});
        t << "  " << name << " z = " << g12(z[0].real()) << (z[0].imag() < 0 ? " - " : " + ")
          << g12(std::abs(z[0].imag())) << "i\n";
        o.csv.push_back(r.source + "," + name + "," + g12(z[0].real()) + "," + g12(z[0].imag()) + "," +
                        g12(z[1].real()) + "," + g12(z[1].imag()) + "," + g12(z[2].real()) + "," +
                        g12(z[2].imag()));
    }
    o.json["shapes"] = sj;
    const auto res = to_json(r.edges, r.cusp_residuals);
    o.json["edges"] = res["edges"];
    o.json["cusps"] = res["cusps"];
    for (const auto& e : r.edges)
        t << "  edge " << e.edge << " degree " << e.degree << " |prod-1| " << g12(e.modulus) << " |args-2pi| "
          << g12(e.angle) << "\n";
    for (const auto& c : r.cusp_residuals) t << "  cusp " << c.cusp << " residual " << g12(c.residual) << "\n";
    if (!r.geometric()) t << "  " << r.verdict.reason << "\n";
    o.text = t.str();
    return o;
}

JobOutput cmd_braid_check(const Job& j, const RunConfig& cfg) {
    ChainTamper tamper;
    if (cfg.tamper_step >= 0) {
        const int k = cfg.tamper_step;
        tamper = [k](std::vector<BraidWord>& w) {
            if (k >= int(w.size())) return;
            auto letters = w[k].letters();
            if (!letters.empty()) letters.pop_back();
            w[k] = BraidWord(letters);
        };
    }
    const ChainReport chain = verify_pretzel_chain(j.p, tamper);
    const TLinkReport tl = verify_tlink_form(j.p);
    const bool ok = chain.ok && tl.ok;
    JobOutput o;
    o.code = ok ? 0 : 1;
    ojson steps = ojson::array();
    for (const auto& s : chain.steps)
        steps.push_back({{"index", s.index},
                         {"relation", s.relation},
                         {"from", s.from.str()},
                         {"to", s.to.str()},
                         {"rotation", s.rotation},
                         {"ok", s.ok},
                         {"note", s.note}});
    o.json["p"] = j.p;
    o.json["ok"] = ok;
    o.json["chain"] = {{"ok", chain.ok},
                       {"failed_step", chain.failed_step},
                       {"exponent_sum_start", chain.exponent_sum_start},
                       {"exponent_sum_end", chain.exponent_sum_end},
                       {"same_trace_and_det", chain.same_trace_and_det},
                       {"steps", steps}};
    o.json["tlink"] = {{"ok", tl.ok}, {"equality", tl.equality}, {"rotation", tl.rotation}};
    o.text = format_chain(chain) + "  t-link form: equality " + (tl.equality ? "yes" : "no") + ", rotation " +
             std::to_string(tl.rotation) + (tl.ok ? ", ok" : ", FAILED") + "\n";
    o.csv.push_back(std::to_string(j.p) + "," + (chain.ok ? "true" : "false") + "," +
                    std::to_string(chain.failed_step) + "," + (tl.ok ? "true" : "false") + "," +
                    std::to_string(chain.exponent_sum_start) + "," + std::to_string(chain.exponent_sum_end));
    return o;
}

JobOutput cmd_twobridge(const Job& j, const RunConfig&) {
    const TwoBridgeReport r = twobridge_report(j.word);
    JobOutput o;
    o.code = r.validation.ok ? 0 : 1;
    o.json["word"] = r.word;
    o.json["tets"] = r.tets;
    o.json["gluings"] = r.gluings;
    o.json["valid"] = r.validation.ok;
    o.json["edge_degrees"] = r.edge_degrees;
    o.json["cusps"] = r.cusps;
    o.json["euler"] = r.euler;
    std::string deg, eul;
    for (int d : r.edge_degrees) deg += (deg.empty() ? "" : " ") + std::to_string(d);
    for (int e : r.euler) eul += (eul.empty() ? "" : " ") + std::to_string(e);
    o.text = r.word + ": tets " + std::to_string(r.tets) + ", gluings " + std::to_string(r.gluings) + ", valid " +
             (r.validation.ok ? "yes" : "no") + ", edge degrees [" + deg + "], cusps " + std::to_string(r.cusps) +
             ", euler [" + eul + "]\n";
    o.csv.push_back(r.word + "," + std::to_string(r.tets) + "," + std::to_string(r.gluings) + "," +
                    (r.validation.ok ? "true" : "false") + "," + deg + "," + std::to_string(r.cusps) + "," + eul);
    return o;
}

const std::map<std::string, std::string> kCsvHeader{
    {"build", "source,tets,gluings,valid,edges,degree_census,cusps,euler"},
    {"simplify", "source,hat_tets,mid_tets,tets,matches_tau"},
    {"solve", "source,tets,verdict,status,volume,min_angle,grad_norm,iterations,edge_residual,cusp_residual"},
    {"angles", "source,tet,pair,role,radians,over_pi"},
    {"shapes", "source,tet,z_re,z_im,z1_re,z1_im,z2_re,z2_im"},
    {"braid-check", "p,chain_ok,failed_step,tlink_ok,exponent_sum_start,exponent_sum_end"},
    {"twobridge", "word,tets,gluings,valid,edge_degrees,cusps,euler"},
};

int thread_count(size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BRAIDTRI_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) n = std::min<unsigned>(n, unsigned(v));
    }
    return int(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

template <class Fn>
std::vector<JobOutput> run_jobs(const std::vector<Job>& jobs, Fn fn) {
    std::vector<JobOutput> out(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < jobs.size();) {
            try {
                out[i] = fn(jobs[i]);
            } catch (const std::exception& e) {
                out[i].code = 1;
                out[i].json = {{"source", jobs[i].label()}, {"error", e.what()}};
                out[i].text = jobs[i].label() + ": error: " + e.what() + "\n";
            }
        }
    };
    const int n = thread_count(jobs.size());
    std::vector<std::thread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

int worst(const std::vector<JobOutput>& outs) {
    int code = 0;
    for (const auto& o : outs) {
        if (o.code == 1) return 1;
        code = std::max(code, o.code);
    }
    return code;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool solver, bool word, bool file) {
    sub->add_option("--p", cfg.p_range, "p or a range a..b");
    if (word) sub->add_option("--word", cfg.word, "two-bridge word, e.g. RRRLLR or R3L2R1");
    if (file) sub->add_option("--file", cfg.file, "triangulation JSON document");
    if (solver) {
        sub->add_option("--tol", cfg.tol, "gradient-norm stop tolerance");
        sub->add_option("--max-iter", cfg.max_iter, "Newton iteration cap");
        sub->add_option("--seed", cfg.seed, "seed for multi-start points");
        sub->add_option("--starts", cfg.starts, "number of starts")->check(CLI::PositiveNumber);
    }
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}}));
    sub->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal triangulations of braid-closure and two-bridge complements; angle structures and volume"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* build = app.add_subcommand("build", "construct a triangulation and report its censuses");
    add_common(build, cfg, false, true, true);
    auto* simplify = app.add_subcommand("simplify", "3-2 and 2-0 moves from the initial to the simplified one");
    add_common(simplify, cfg, false, false, false);
    auto* solve = app.add_subcommand("solve", "maximize volume and decide geometricity");
    add_common(solve, cfg, true, true, true);
    auto* angles = app.add_subcommand("angles", "angle structure at the volume maximizer");
    add_common(angles, cfg, true, true, true);
    angles->add_flag("--lp", cfg.lp_point, "report the max-min-angle point instead");
    auto* shapes = app.add_subcommand("shapes", "shape parameters and gluing/completeness residuals");
    add_common(shapes, cfg, true, true, true);
    auto* braid = app.add_subcommand("braid-check", "replay the braid conjugacy chains");
    add_common(braid, cfg, false, false, false);
    braid->add_option("--tamper-step", cfg.tamper_step, "test hook: drop the last letter of chain word k")
        ->group("");
    auto* twob = app.add_subcommand("twobridge", "layered two-bridge triangulation summary");
    add_common(twob, cfg, false, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    std::vector<JobOutput> outs;
    try {
        std::vector<Job> jobs;
        if (cfg.command == "simplify" || cfg.command == "braid-check") {
            if (cfg.p_range.empty()) throw std::invalid_argument(cfg.command + " needs --p");
            jobs = make_jobs(cfg, false, false);
        } else if (cfg.command == "twobridge") {
            if (cfg.word.empty()) throw std::invalid_argument("twobridge needs --word");
            jobs = make_jobs(cfg, true, false);
        } else {
            jobs = make_jobs(cfg, true, true);
        }
        if (cfg.max_iter < 1) throw std::invalid_argument("--max-iter must be positive");
        if (!(cfg.tol > 0)) throw std::invalid_argument("--tol must be positive");

        using Cmd = JobOutput (*)(const Job&, const RunConfig&);
        static const std::map<std::string, Cmd> table{
            {"build", cmd_build},   {"simplify", cmd_simplify},       {"solve", cmd_solve},
            {"angles", cmd_angles}, {"braid-check", cmd_braid_check}, {"shapes", cmd_shapes},
            {"twobridge", cmd_twobridge}};
        const Cmd fn = table.at(cfg.command);
        outs = run_jobs(jobs, [&](const Job& j) { return fn(j, cfg); });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::ostringstream os;
    if (cfg.format == Format::Json) {
        ojson doc;
        doc["command"] = cfg.command;
        doc["results"] = ojson::array();
        for (auto& o : outs) doc["results"].push_back(std::move(o.json));
        os << doc.dump(2) << "\n";
    } else if (cfg.format == Format::Csv) {
        os << kCsvHeader.at(cfg.command) << "\n";
        for (const auto& o : outs)
            for (const auto& row : o.csv) os << row << "\n";
    } else {
        for (const auto& o : outs) os << o.text;
    }
    for (const auto& o : outs)
        if (o.code == 1 && cfg.format != Format::Text) std::cerr << o.text;

    if (cfg.output.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.output << "\n";
            return 1;
        }
        f << os.str();
    }
    return worst(outs);
}
