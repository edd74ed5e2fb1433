#include "braidtri/volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace braidtri {

namespace {

constexpr double kPi = std::numbers::pi;

// zeta(2n) / (n (2n + 1)), n = 1..kTerms
constexpr int kTerms = 30;
const std::array<double, kTerms>& series_coefficients() {
    static const auto table = [] {
        std::array<double, kTerms> c{};
        for (int n = 1; n <= kTerms; ++n) c[n - 1] = std::riemann_zeta(2.0 * n) / (n * (2.0 * n + 1));
        return c;
    }();
    return table;
}

// 0 <= x <= pi/2
double lob_reduced(double x) {
    if (x == 0) return 0;
    const auto& c = series_coefficients();
    const double u = (x / kPi) * (x / kPi);
    double sum = 0, power = u;
    for (int n = 0; n < kTerms; ++n) {
        sum += c[n] * power;
        power *= u;
    }
    return x * (1 - std::log(2 * x) + sum);
}

std::vector<bool> active_slots(const AngleSpace& sp) {
    std::vector<bool> act(sp.base.size(), false);
    for (int i = 0; i < int(act.size()); ++i) act[i] = sp.Q.cols() > 0 && sp.Q.row(i).norm() > 1e-12;
    return act;
}

double min_active_slack(const Eigen::VectorXd& th, const std::vector<bool>& act) {
    double m = kPi;
    for (int i = 0; i < th.size(); ++i)
        if (act[i]) m = std::min({m, th(i), kPi - th(i)});
    return m;
}

double volume_of(const Eigen::VectorXd& th) {
    double v = 0;
    for (int i = 0; i < th.size(); ++i) v += lobachevsky(th(i));
    return v;
}

// Largest step along dir keeping active slots inside (0, pi): [lo, hi].
std::pair<double, double> step_interval(const Eigen::VectorXd& th, const Eigen::VectorXd& dir,
                                        const std::vector<bool>& act) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < th.size(); ++i) {
        if (!act[i] || std::abs(dir(i)) < 1e-15) continue;
        const double a = -th(i) / dir(i), b = (kPi - th(i)) / dir(i);
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
    }
    return {lo, hi};
}

struct NewtonRun {
    Eigen::VectorXd theta;
    double volume = 0;
    double grad_norm = 0;
    int iterations = 0;
    bool boundary = false;
    bool capped = false;
    bool at_floor = false;  // stopped on the round-off floor of the gradient
    std::vector<double> trace;
};

NewtonRun newton(const AngleSpace& sp, Eigen::VectorXd th, double tol, int max_iter) {
    const auto act = active_slots(sp);
    const Eigen::MatrixXd& Q = sp.Q;
    const int n = int(th.size());
    NewtonRun run;
    Eigen::VectorXd f(n), h(n), b(n);
    double vol = volume_of(th);
    run.trace.push_back(vol);
    double prev_grad = std::numeric_limits<double>::infinity();
    for (int it = 0;; ++it) {
        for (int i = 0; i < n; ++i) {
            f(i) = act[i] ? -std::log(std::sin(th(i))) : 0.0;
            h(i) = act[i] ? -1.0 / std::tan(th(i)) : 0.0;
            const double s = std::min(th(i), kPi - th(i));
            b(i) = act[i] ? 1.0 / (s * s) : 0.0;
        }
        const Eigen::VectorXd g = Q.transpose() * f;
        run.grad_norm = g.norm();
        run.iterations = it;
        if (run.grad_norm <= tol || Q.cols() == 0) break;
        // rounding theta moves slot i of f by about eps / slack_i
        const double floor = 4 * std::numeric_limits<double>::epsilon() * kPi * std::sqrt(b.sum());
        if (run.grad_norm <= floor && run.grad_norm > 0.5 * prev_grad) {
            run.at_floor = true;
            break;
        }
        prev_grad = run.grad_norm;
        if (min_active_slack(th, act) <= 1e-10) {
            run.boundary = true;
            break;
        }
        if (it >= max_iter) {
            run.capped = true;
            break;
        }
        auto direction = [&](double lam) {
            const Eigen::VectorXd w = -h + lam * b;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Q.transpose() * w.asDiagonal() * Q);
            Eigen::VectorXd d = ldlt.solve(g);
            if (ldlt.info() != Eigen::Success || !(g.dot(d) > 0)) d = g;
            return d;
        };
        Eigen::VectorXd d = direction(0);
        Eigen::VectorXd dir = Q * d;
        double reach = step_interval(th, dir, act).second;
        if (0.99 * reach < 1) {
            // the box cuts the Newton step short: bend it away from small slacks
            d = direction(run.grad_norm * min_active_slack(th, act));
            dir = Q * d;
            reach = step_interval(th, dir, act).second;
        }
        double alpha = std::min(1.0, 0.99 * reach);
        const double slope = g.dot(d);
        Eigen::VectorXd next;
        double nvol = vol;
        for (int k = 0; k < 60; ++k) {
            next = sp.project(th + alpha * dir);
            nvol = volume_of(next);
            if (run.grad_norm < 1e-6 || nvol >= vol + 1e-4 * alpha * slope) break;
            alpha *= 0.5;
        }
        th = next;
        vol = nvol;
        run.trace.push_back(vol);
    }
    run.theta = th;
    run.volume = vol;
    return run;
}

double max_dist(const AngleVector& a, const AngleVector& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

AngleVector to_vec(const Eigen::VectorXd& v) { return AngleVector(v.data(), v.data() + v.size()); }

}  // namespace

double lobachevsky(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double r = x - kPi * std::floor(x / kPi);
    if (r >= kPi) r -= kPi;
    if (r < 0) r = 0;
    return r <= kPi / 2 ? lob_reduced(r) : -lob_reduced(kPi - r);
}

double volume(const AngleVector& theta) {
    double v = 0;
    for (double t : theta) v += lobachevsky(t);
    return v;
}

double volume(const ConstraintSystem& cs, const AngleVector& theta, double tol) {
    if (cs.residual(theta) > tol) throw std::invalid_argument("volume: angle vector violates the equations");
    return volume(theta);
}

double directional_derivative(const ConstraintSystem& cs, const AngleVector& theta, const AngleVector& v) {
    if (int(theta.size()) != cs.cols() || int(v.size()) != cs.cols())
        throw std::invalid_argument("directional_derivative: dimension mismatch");
    double scale = 1;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (int i = 0; i < cs.rows(); ++i) {
        double s = 0;
        for (int j = 0; j < cs.cols(); ++j) s += cs.A[i][j] * v[j];
        if (std::abs(s) > 1e-9 * scale) throw std::invalid_argument("directional_derivative: v is not tangent");
    }
    double d = 0;
    for (int j = 0; j < cs.cols(); ++j) {
        if (!(theta[j] > 0 && theta[j] < kPi)) throw std::invalid_argument("directional_derivative: boundary point");
        d -= v[j] * std::log(std::sin(theta[j]));
    }
    return d;
}

AngleVector random_interior_point(const AngleSpace& space, const AngleVector& x, std::uint64_t seed, int steps) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto act = active_slots(space);
    Eigen::VectorXd th = Eigen::Map<const Eigen::VectorXd>(x.data(), Eigen::Index(x.size()));
    if (space.Q.cols() == 0) return x;
    for (int s = 0; s < steps; ++s) {
        Eigen::VectorXd r(space.Q.cols());
        for (auto& c : r) c = normal(rng);
        const Eigen::VectorXd dir = space.Q * r;
        const auto [lo, hi] = step_interval(th, dir, act);
        if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) continue;
        const double a = lo + (hi - lo) * (0.025 + 0.95 * unif(rng));
        th = space.project(th + a * dir);
    }
    return to_vec(th);
}

std::string status_name(MaxResult::Status s) {
    switch (s) {
        case MaxResult::Status::Converged: return "converged";
        case MaxResult::Status::Boundary: return "boundary";
        case MaxResult::Status::IterationCap: return "iteration_cap";
        case MaxResult::Status::Infeasible: return "infeasible";
    }
    return "?";
}

MaxResult maximize(const ConstraintSystem& cs, const MaxOptions& opt) {
    MaxResult res;
    AngleSpace space = angle_space(cs);
    const InteriorPoint ip = find_interior_point(cs, space);
    AngleVector start;
    bool on_face = false;
    if (ip.status == InteriorPoint::Status::Infeasible) {
        res.status = MaxResult::Status::Infeasible;
        res.volume = std::numeric_limits<double>::quiet_NaN();
        res.message = ip.reason;
        return res;
    }
    if (ip.status == InteriorPoint::Status::Boundary) {
        FacePoint face = restrict_to_face(cs, forced_zero_slots(cs, space));
        if (face.point.status == InteriorPoint::Status::Infeasible) {
            res.status = MaxResult::Status::Infeasible;
            res.volume = std::numeric_limits<double>::quiet_NaN();
            res.message = face.point.reason;
            return res;
        }
        space = std::move(face.space);
        start = face.point.theta;
        on_face = true;
        res.message = ip.reason;
    } else {
        start = ip.theta;
        if (opt.iota) {
            const auto sym = symmetrize(start, *opt.iota);
            start = to_vec(space.project(Eigen::Map<const Eigen::VectorXd>(sym.data(), Eigen::Index(sym.size()))));
        }
    }

    const int starts = std::max(1, opt.starts);
    int best = -1;
    std::vector<NewtonRun> runs;
    for (int k = 0; k < starts; ++k) {
        StartOutcome so;
        so.initial = k == 0 ? start : random_interior_point(space, start, opt.seed + std::uint64_t(k));
        Eigen::VectorXd th0 = Eigen::Map<const Eigen::VectorXd>(so.initial.data(), Eigen::Index(so.initial.size()));
        NewtonRun run = newton(space, th0, opt.tol, opt.max_iter);
        so.theta = to_vec(run.theta);
        so.volume = run.volume;
        so.grad_norm = run.grad_norm;
        so.iterations = run.iterations;
        so.interior = !on_face && !run.boundary;
        if (best < 0 || run.volume > runs[best].volume) best = k;
        res.starts.push_back(std::move(so));
        runs.push_back(std::move(run));
    }
    for (int a = 0; a < starts; ++a)
        for (int b = a + 1; b < starts; ++b)
            res.start_spread = std::max(res.start_spread, max_dist(res.starts[a].theta, res.starts[b].theta));

    const NewtonRun& run = runs[best];
    res.theta = to_vec(run.theta);
    res.volume = run.volume;
    res.grad_norm = run.grad_norm;
    res.iterations = run.iterations;
    res.volume_trace = run.trace;
    res.min_angle = *std::min_element(res.theta.begin(), res.theta.end());
    for (int t = 0; t < cs.tets; ++t)
        for (int k = 0; k < 3; ++k) {
            const double a = res.theta[3 * t + k];
            if (a <= 1e-6 || a >= kPi - 1e-6) {
                res.flat_tets.push_back(t);
                break;
            }
        }
    res.interior = !on_face && !run.boundary && res.min_angle > 1e-10 && res.flat_tets.empty();
    if (on_face || run.boundary)
        res.status = MaxResult::Status::Boundary;
    else if (run.capped)
        res.status = MaxResult::Status::IterationCap;
    else
        res.status = MaxResult::Status::Converged;
    if (res.status == MaxResult::Status::Converged && run.at_floor)
        res.message = "stopped at the round-off floor with gradient norm " + std::to_string(res.grad_norm);
    if (res.status == MaxResult::Status::IterationCap)
        res.message = "iteration cap of " + std::to_string(opt.max_iter) + " reached with gradient norm " +
                      std::to_string(res.grad_norm);
    return res;
}

BoundaryReport boundary_diagnosis(const MaxResult& r, int tets, double tol) {
    BoundaryReport rep;
    rep.interior = r.interior;
    rep.volume = r.volume;
    if (r.status == MaxResult::Status::Infeasible) {
        rep.summary = "no angle structure: " + r.message;
        return rep;
    }
    if (r.interior) {
        rep.summary = "interior, no flat tets";
        return rep;
    }
    rep.flat_tets = r.flat_tets;
    rep.flat_pattern = !rep.flat_tets.empty();
    for (int t : rep.flat_tets) {
        std::array<double, 3> a{r.theta[3 * t], r.theta[3 * t + 1], r.theta[3 * t + 2]};
        std::sort(a.begin(), a.end());
        if (a[0] > tol || a[1] > tol || std::abs(a[2] - kPi) > tol) rep.flat_pattern = false;
    }
    rep.all_flat = int(rep.flat_tets.size()) == tets;
    rep.summary = std::to_string(rep.flat_tets.size()) + " of " + std::to_string(tets) + " tets flat" +
                  (rep.flat_pattern ? " with (0,0,pi) angles" : ", not all of the (0,0,pi) shape") +
                  (rep.all_flat ? ", degeneracy reaches every tet" : "");
    return rep;
}

nlohmann::ordered_json to_json(const MaxResult& r, const std::vector<std::string>& names) {
    nlohmann::ordered_json j;
    j["status"] = status_name(r.status);
    j["interior"] = r.interior;
    j["volume"] = r.volume;
    j["min_angle"] = r.min_angle;
    j["grad_norm"] = r.grad_norm;
    j["iterations"] = r.iterations;
    auto flat = nlohmann::ordered_json::array();
    for (int t : r.flat_tets) flat.push_back(names.at(t));
    j["flat_tets"] = flat;
    auto th = nlohmann::ordered_json::array();
    for (size_t t = 0; 3 * t < r.theta.size(); ++t)
        th.push_back({{"tet", names.at(t)}, {"angles", {r.theta[3 * t], r.theta[3 * t + 1], r.theta[3 * t + 2]}}});
    j["theta"] = th;
    auto st = nlohmann::ordered_json::array();
    for (const auto& s : r.starts)
        st.push_back({{"volume", s.volume}, {"grad_norm", s.grad_norm}, {"iterations", s.iterations},
                      {"interior", s.interior}});
    j["starts"] = st;
    j["start_spread"] = r.start_spread;
    j["message"] = r.message;
    return j;
}

}  // namespace braidtri
