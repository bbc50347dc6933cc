#include "rwre/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

namespace rwre {

namespace {

struct IndexMap {
    std::unordered_map<Site, int, SiteHash> idx;
    std::vector<Site> sites;

    explicit IndexMap(const std::vector<Site>& v) {
        sites = v;
        for (std::size_t i = 0; i < v.size(); ++i) idx.emplace(v[i], int(i));
        if (idx.size() != v.size()) throw std::invalid_argument("oracle: duplicate sites in V");
    }
    int at(const Site& x) const {
        auto it = idx.find(x);
        return it == idx.end() ? -1 : it->second;
    }
};

using SpMat = Eigen::SparseMatrix<double>;

// (I - P) restricted to v_set; transitions leaving v_set are dropped (absorbed).
SpMat interior_system(const RealizedEnv& omega, const IndexMap& im) {
    const int n = int(im.sites.size());
    const int d = omega.d;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(n) * (2 * d + 1));
    for (int i = 0; i < n; ++i) {
        const Site& x = im.sites[std::size_t(i)];
        const TransitionVector& tv = omega.at(x);
        trip.emplace_back(i, i, 1.0);
        for (int j = 0; j < 2 * d; ++j) {
            int k = im.at(x + unit_step(j, d));
            if (k >= 0) trip.emplace_back(i, k, -tv.prob(j));
        }
    }
    SpMat m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Eigen::VectorXd sparse_solve(const SpMat& m, const Eigen::VectorXd& rhs, const char* what) {
    Eigen::SparseLU<SpMat> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) throw std::runtime_error(std::string(what) + ": factorization failed");
    Eigen::VectorXd x = lu.solve(rhs);
    double res = (m * x - rhs).norm();
    if (!(res < 1e-12 * std::max(1.0, rhs.norm()) + 1e-12))
        throw std::runtime_error(std::string(what) + ": residual too large");
    return x;
}

}  // namespace

std::vector<Site> exterior_boundary(const std::vector<Site>& v_set, int d) {
    std::unordered_map<Site, bool, SiteHash> in;
    for (const auto& x : v_set) in.emplace(x, true);
    std::unordered_map<Site, bool, SiteHash> out;
    std::vector<Site> res;
    for (const auto& x : v_set) {
        for (int j = 0; j < 2 * d; ++j) {
            Site y = x + unit_step(j, d);
            if (!in.count(y) && out.emplace(y, true).second) res.push_back(y);
        }
    }
    return res;
}

std::vector<Site> box_sites(const Site& lo, const Site& hi) {
    int d = lo.d;
    std::vector<Site> out;
    Site cur = lo;
    for (;;) {
        out.push_back(cur);
        int axis = 0;
        while (axis < d) {
            if (cur.c[axis] < hi.c[axis]) {
                ++cur.c[axis];
                break;
            }
            cur.c[axis] = lo.c[axis];
            ++axis;
        }
        if (axis == d) break;
    }
    return out;
}

AbsorbingSolve solve_absorbing(const RealizedEnv& omega, const std::vector<Site>& v_set,
                               const Site& start, std::size_t budget) {
    if (v_set.size() > budget) throw std::runtime_error("solve_absorbing: budget exceeded");
    IndexMap im(v_set);
    if (im.at(start) < 0) throw std::invalid_argument("solve_absorbing: start not in V");
    const int n = int(v_set.size());
    const int d = omega.d;

    SpMat m = interior_system(omega, im);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[im.at(start)] = 1.0;
    // Green row: G(start, y) solves (I - P)^T g = delta_start
    Eigen::VectorXd g = sparse_solve(SpMat(m.transpose()), rhs, "solve_absorbing");

    AbsorbingSolve out;
    out.v_set = v_set;
    out.start = start;
    double total_time = 0;
    for (int i = 0; i < n; ++i) {
        out.green.emplace(v_set[std::size_t(i)], g[i]);
        total_time += g[i];
    }
    out.expected_exit_time = total_time;
    for (int i = 0; i < n; ++i) {
        const Site& x = v_set[std::size_t(i)];
        const TransitionVector& tv = omega.at(x);
        for (int j = 0; j < 2 * d; ++j) {
            Site y = x + unit_step(j, d);
            if (im.at(y) < 0) out.exit_law[y] += g[i] * tv.prob(j);
        }
    }
    return out;
}

std::unordered_map<Site, double, SiteHash> solve_exit_functional(
    const RealizedEnv& omega, const std::vector<Site>& v_set,
    const std::function<double(const Site&)>& boundary_value, std::size_t budget) {
    if (v_set.size() > budget) throw std::runtime_error("solve_exit_functional: budget exceeded");
    IndexMap im(v_set);
    const int n = int(v_set.size());
    const int d = omega.d;
    SpMat m = interior_system(omega, im);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const Site& x = im.sites[std::size_t(i)];
        const TransitionVector& tv = omega.at(x);
        for (int j = 0; j < 2 * d; ++j) {
            Site y = x + unit_step(j, d);
            if (im.at(y) < 0) rhs[i] += tv.prob(j) * boundary_value(y);
        }
    }
    Eigen::VectorXd h = sparse_solve(m, rhs, "solve_exit_functional");
    std::unordered_map<Site, double, SiteHash> out;
    for (int i = 0; i < n; ++i) out.emplace(im.sites[std::size_t(i)], h[i]);
    return out;
}

double hitting_before_exit(const RealizedEnv& omega, const std::vector<Site>& v_set,
                           const Site& start, const Site& target) {
    if (start == target) return 1.0;
    // target becomes absorbing: solve on V \ {target} with boundary value 1 at target
    std::vector<Site> v2;
    v2.reserve(v_set.size());
    for (const auto& x : v_set)
        if (!(x == target)) v2.push_back(x);
    auto h = solve_exit_functional(omega, v2, [&](const Site& y) { return y == target ? 1.0 : 0.0; });
    auto it = h.find(start);
    if (it == h.end()) throw std::invalid_argument("hitting_before_exit: start not in V");
    return it->second;
}

double expected_exit_time_via_hitting(const RealizedEnv& omega, const std::vector<Site>& v_set,
                                      const Site& start) {
    const int d = omega.d;
    double total = 0;
    for (const auto& x : v_set) {
        double hit = hitting_before_exit(omega, v_set, start, x);
        if (hit == 0) continue;
        // P_x[~H_x > T] by one-step decomposition through the hitting solve
        std::vector<Site> v2;
        v2.reserve(v_set.size());
        for (const auto& y : v_set)
            if (!(y == x)) v2.push_back(y);
        auto hx = solve_exit_functional(omega, v2, [&](const Site& y) { return y == x ? 1.0 : 0.0; });
        const TransitionVector& tv = omega.at(x);
        double ret = 0;
        for (int j = 0; j < 2 * d; ++j) {
            Site y = x + unit_step(j, d);
            if (y == x) continue;
            auto it = hx.find(y);
            double hy = (it != hx.end()) ? it->second : (y == x ? 1.0 : 0.0);
            ret += tv.prob(j) * hy;
        }
        double escape = 1.0 - ret;
        if (escape <= 0) throw std::runtime_error("expected_exit_time_via_hitting: degenerate escape");
        total += hit / escape;
    }
    return total;
}

PathDistribution enumerate_paths(const RealizedEnv& omega, const Site& start, int n_steps,
                                 std::size_t budget) {
    const int d = omega.d;
    double count = std::pow(double(2 * d), double(n_steps));
    if (count > double(budget)) throw std::runtime_error("enumerate_paths: budget exceeded");
    PathDistribution out;
    out.n_steps = n_steps;
    std::vector<int> codes;
    std::function<void(const Site&, double)> rec = [&](const Site& x, double p) {
        if (int(codes.size()) == n_steps) {
            out.atoms.emplace_back(codes, p);
            return;
        }
        const TransitionVector& tv = omega.at(x);
        for (int j = 0; j < 2 * d; ++j) {
            codes.push_back(j);
            rec(x + unit_step(j, d), p * tv.prob(j));
            codes.pop_back();
        }
    };
    rec(start, 1.0);
    return out;
}

std::vector<double> enumerate_annealed(const EnvironmentSpec& spec, const std::vector<Site>& sites,
                                       const std::function<std::vector<double>(const RealizedEnv&)>& f,
                                       std::size_t budget) {
    spec.validate();
    if (spec.kind != EnvKind::IidFiniteAlphabet && spec.kind != EnvKind::Homogeneous)
        throw std::invalid_argument("enumerate_annealed: i.i.d. finite-alphabet specs only");
    std::size_t m = spec.alphabet.size();
    double count = std::pow(double(m), double(sites.size()));
    if (count > double(budget)) throw std::runtime_error("enumerate_annealed: budget exceeded");

    auto weight_of = [&](std::size_t a) {
        return spec.weights.empty() ? 1.0 / double(m) : spec.weights[a];
    };
    std::vector<double> acc;
    std::vector<std::size_t> assign(sites.size(), 0);
    for (;;) {
        RealizedEnv re;
        re.d = spec.d;
        re.kappa = spec.kappa;
        double w = 1.0;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            re.table.emplace(sites[i], spec.alphabet[assign[i]]);
            w *= weight_of(assign[i]);
        }
        std::vector<double> val = f(re);
        if (acc.empty()) acc.assign(val.size(), 0.0);
        if (val.size() != acc.size()) throw std::logic_error("enumerate_annealed: f size changed");
        for (std::size_t i = 0; i < val.size(); ++i) acc[i] += w * val[i];
        // next assignment
        std::size_t axis = 0;
        while (axis < assign.size()) {
            if (++assign[axis] < m) break;
            assign[axis] = 0;
            ++axis;
        }
        if (axis == assign.size()) break;
        if (sites.empty()) break;
    }
    return acc;
}

}  // namespace rwre
