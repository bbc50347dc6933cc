#include "rwre/ballisticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwre/parallel.hpp"
#include "rwre/walk.hpp"

namespace rwre {

std::vector<Site> sites_in_box(const BoxSpec& box) {
    int d = box.center.d;
    double reach = std::sqrt(box.depth * box.depth + double(d - 1) * box.width * box.width);
    std::int64_t r = std::int64_t(std::ceil(reach)) + 1;
    Site lo = box.center, hi = box.center;
    for (int i = 0; i < d; ++i) {
        lo.c[i] -= r;
        hi.c[i] += r;
    }
    std::vector<Site> out;
    for (const auto& y : box_sites(lo, hi))
        if (box.contains(y)) out.push_back(y);
    return out;
}

double exact_box_fail_probability(const RealizedEnv& omega, const BoxSpec& box) {
    auto v = sites_in_box(box);
    AbsorbingSolve solve = solve_absorbing(omega, v, box.center);
    double p_plus = 0;
    for (const auto& [y, p] : solve.exit_law)
        if (box_positive_boundary_hit(box, y)) p_plus += p;
    return 1.0 - p_plus;
}

TConditionReport estimate_condition_T(const EnvironmentSpec& spec, const TConditionParams& params) {
    if (params.m_grid.size() < 3) throw std::invalid_argument("estimate_condition_T: need >= 3 grid points");
    if (!std::is_sorted(params.m_grid.begin(), params.m_grid.end()))
        throw std::invalid_argument("estimate_condition_T: m_grid must be increasing");
    if (params.samples_per_m < 100)
        throw std::invalid_argument("estimate_condition_T: need >= 100 samples per M");
    spec.validate();

    TConditionReport rep;
    rep.direction = Direction::from_integer(params.l);
    rep.aspect = params.aspect;
    rep.m_grid = params.m_grid;
    rep.samples_per_m = params.samples_per_m;

    Site origin(spec.d);
    const std::int64_t n = params.samples_per_m;
    for (std::size_t mi = 0; mi < params.m_grid.size(); ++mi) {
        double M = params.m_grid[mi];
        BoxSpec box = BoxSpec::make(origin, M, params.aspect * M, rep.direction);
        // slot per task: 0 = positive exit, 1 = wrong-face exit, 2 = horizon
        std::vector<std::int8_t> result(std::size_t(n), 0);
        for_each_task(n, params.workers, [&](std::int64_t i) {
            std::uint64_t task = (std::uint64_t(mi) << 40) + std::uint64_t(i);
            Environment env(spec.with_seed(hash_combine(params.master_seed, hash_combine(1, task))));
            Rng rng(params.master_seed, hash_combine(2, task));
            StopSpec stop;
            stop.triggers.push_back(StopBoxExit{box});
            stop.horizon = params.horizon;
            StopOutcome out = stream_walk(env, origin, stop, WalkMode::Quenched, rng,
                                          [](std::int64_t, const Site&, Eps) {});
            if (out.kind == StopKind::Horizon)
                result[std::size_t(i)] = 2;
            else if (!box_positive_boundary_hit(box, out.position))
                result[std::size_t(i)] = 1;
        });
        std::int64_t fail = 0, horizon = 0;
        for (auto r : result) {
            if (r != 0) ++fail;
            if (r == 2) ++horizon;
        }
        rep.n_failures.push_back(fail);
        rep.n_horizon.push_back(horizon);
        rep.p_fail.push_back(double(fail) / double(n));
        rep.ci.push_back(wilson_interval(fail, n));
    }

    bool any_all_horizon = false;
    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < rep.m_grid.size(); ++i) {
        if (rep.n_horizon[i] == n) any_all_horizon = true;
        double p = rep.p_fail[i];
        if (p == 0) p = rule_of_three(n);  // upper bound for a never-seen event
        p = std::min(p, 1.0 - 0.5 / double(n));
        x.push_back(rep.m_grid[i]);
        y.push_back(std::log(p));
        w.push_back(double(n) * p / (1.0 - p));  // 1 / Var(log p_hat), binomial
    }
    rep.fit = wls_line(x, y, w);
    if (any_all_horizon)
        rep.verdict = TVerdict::Inconclusive;
    else if (rep.fit.slope + 2.0 * rep.fit.se_slope < 0)
        rep.verdict = TVerdict::SupportsT;
    else
        rep.verdict = TVerdict::RejectsT;
    return rep;
}

KalikowKernel kalikow_kernel_exact(const RealizedEnv& omega, const std::vector<Site>& v_set,
                                   const Site& start) {
    AbsorbingSolve solve = solve_absorbing(omega, v_set, start);
    KalikowKernel k;
    k.v_set = v_set;
    k.start = start;
    k.n_env_samples = 1;
    k.exact = true;
    const int d = omega.d;
    for (const auto& x : v_set) {
        double g = solve.green.at(x);
        if (!(g > 0)) throw std::runtime_error("kalikow_kernel_exact: vanishing occupation");
        const TransitionVector& tv = omega.at(x);
        TransitionVector row;
        row.d = d;
        for (int j = 0; j < 2 * d; ++j) row.p[std::size_t(j)] = g * tv.prob(j) / g;
        k.p_hat.emplace(x, row);
    }
    return k;
}

namespace {

KalikowKernel kernel_from_sums(const std::vector<Site>& v_set, const Site& start, int d,
                               const std::vector<double>& acc, std::size_t n_env, bool exact) {
    // acc layout per site: 2d numerator entries then the denominator
    KalikowKernel k;
    k.v_set = v_set;
    k.start = start;
    k.n_env_samples = n_env;
    k.exact = exact;
    const std::size_t stride = std::size_t(2 * d) + 1;
    for (std::size_t i = 0; i < v_set.size(); ++i) {
        double den = acc[i * stride + std::size_t(2 * d)];
        if (!(den > 0)) throw std::runtime_error("kalikow kernel: vanishing occupation");
        TransitionVector row;
        row.d = d;
        for (int j = 0; j < 2 * d; ++j) row.p[std::size_t(j)] = acc[i * stride + std::size_t(j)] / den;
        k.p_hat.emplace(v_set[i], row);
    }
    return k;
}

std::vector<double> green_omega_vector(const RealizedEnv& re, const std::vector<Site>& v_set,
                                       const Site& start) {
    const int d = re.d;
    const std::size_t stride = std::size_t(2 * d) + 1;
    AbsorbingSolve solve = solve_absorbing(re, v_set, start);
    std::vector<double> out(v_set.size() * stride, 0.0);
    for (std::size_t i = 0; i < v_set.size(); ++i) {
        double g = solve.green.at(v_set[i]);
        const TransitionVector& tv = re.at(v_set[i]);
        for (int j = 0; j < 2 * d; ++j) out[i * stride + std::size_t(j)] = g * tv.prob(j);
        out[i * stride + std::size_t(2 * d)] = g;
    }
    return out;
}

}  // namespace

KalikowKernel kalikow_kernel_annealed(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                      const Site& start, std::size_t n_env,
                                      std::uint64_t master_seed) {
    if (n_env < 1) throw std::invalid_argument("kalikow_kernel_annealed: n_env < 1");
    spec.validate();
    const int d = spec.d;
    std::vector<double> acc(v_set.size() * (std::size_t(2 * d) + 1), 0.0);
    for (std::size_t i = 0; i < n_env; ++i) {
        Environment env(spec.with_seed(hash_combine(master_seed, i)));
        RealizedEnv re = RealizedEnv::from(env, v_set);
        std::vector<double> v = green_omega_vector(re, v_set, start);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j];
    }
    return kernel_from_sums(v_set, start, d, acc, n_env, spec.kind == EnvKind::Homogeneous);
}

KalikowKernel kalikow_kernel_enumerated(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                        const Site& start, std::size_t budget) {
    const int d = spec.d;
    std::vector<double> acc = enumerate_annealed(
        spec, v_set, [&](const RealizedEnv& re) { return green_omega_vector(re, v_set, start); },
        budget);
    std::size_t n_env = std::size_t(std::llround(std::pow(double(spec.alphabet.size()), double(v_set.size()))));
    return kernel_from_sums(v_set, start, d, acc, n_env, true);
}

double kalikow_delta(const EnvironmentSpec& spec, const std::vector<std::vector<Site>>& v_family,
                     const RVec& ell, std::size_t n_env, std::uint64_t master_seed,
                     std::size_t enumeration_budget) {
    if (v_family.empty()) throw std::invalid_argument("kalikow_delta: empty family");
    spec.validate();
    Site origin(spec.d);
    double probe = std::numeric_limits<double>::infinity();
    for (const auto& v_set : v_family) {
        KalikowKernel k;
        if (spec.kind == EnvKind::Homogeneous) {
            Environment env(spec);
            k = kalikow_kernel_exact(RealizedEnv::from(env, v_set), v_set, origin);
        } else if (spec.kind == EnvKind::IidFiniteAlphabet &&
                   std::pow(double(spec.alphabet.size()), double(v_set.size())) <=
                       double(enumeration_budget)) {
            k = kalikow_kernel_enumerated(spec, v_set, origin, enumeration_budget);
        } else {
            k = kalikow_kernel_annealed(spec, v_set, origin, n_env, master_seed);
        }
        for (const auto& x : v_set) probe = std::min(probe, dot(k.drift_at(x), ell));
    }
    return probe;
}

std::unordered_map<Site, double, SiteHash> kalikow_exit_law(const KalikowKernel& kernel) {
    RealizedEnv chain;
    chain.d = kernel.p_hat.begin()->second.d;
    chain.table = kernel.p_hat;
    return solve_absorbing(chain, kernel.v_set, kernel.start).exit_law;
}

double verify_kalikow_proposition(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                  const Site& start, std::size_t budget) {
    spec.validate();
    std::unordered_map<Site, double, SiteHash> kal, ann;
    if (spec.kind == EnvKind::Homogeneous) {
        Environment env(spec);
        RealizedEnv re = RealizedEnv::from(env, v_set);
        kal = kalikow_exit_law(kalikow_kernel_exact(re, v_set, start));
        ann = solve_absorbing(re, v_set, start).exit_law;
    } else if (spec.kind == EnvKind::IidFiniteAlphabet) {
        kal = kalikow_exit_law(kalikow_kernel_enumerated(spec, v_set, start, budget));
        // annealed exit law by full enumeration, indexed over the boundary
        std::vector<Site> bdry = exterior_boundary(v_set, spec.d);
        std::sort(bdry.begin(), bdry.end());
        std::vector<double> law = enumerate_annealed(
            spec, v_set,
            [&](const RealizedEnv& re) {
                AbsorbingSolve s = solve_absorbing(re, v_set, start);
                std::vector<double> out(bdry.size(), 0.0);
                for (std::size_t i = 0; i < bdry.size(); ++i) {
                    auto it = s.exit_law.find(bdry[i]);
                    if (it != s.exit_law.end()) out[i] = it->second;
                }
                return out;
            },
            budget);
        for (std::size_t i = 0; i < bdry.size(); ++i) ann.emplace(bdry[i], law[i]);
    } else {
        throw std::invalid_argument("verify_kalikow_proposition: exact route needs a finite-alphabet i.i.d. or homogeneous spec");
    }
    double tv = 0;
    for (const auto& [y, p] : kal) {
        auto it = ann.find(y);
        tv += std::fabs(p - (it == ann.end() ? 0.0 : it->second));
    }
    for (const auto& [y, q] : ann)
        if (!kal.count(y)) tv += q;
    return 0.5 * tv;
}

SupermartingaleReport supermartingale_diagnostic(const EnvironmentSpec& spec, const Site& l,
                                                 const std::vector<double>& eta_grid,
                                                 const std::vector<Site>& v_set, int n_max) {
    spec.validate();
    for (double eta : eta_grid)
        if (eta < 0) throw std::invalid_argument("supermartingale_diagnostic: negative eta");
    if (spec.kind == EnvKind::IidContinuous || spec.kind == EnvKind::MarkovFiniteAlphabet)
        throw std::invalid_argument("supermartingale_diagnostic: needs an explicit annealed one-step kernel");
    const int d = spec.d;
    // annealed mean one-step kernel
    TransitionVector bar;
    bar.d = d;
    for (std::size_t a = 0; a < spec.alphabet.size(); ++a) {
        double w = spec.weights.empty() ? 1.0 / double(spec.alphabet.size()) : spec.weights[a];
        for (int j = 0; j < 2 * d; ++j) bar.p[std::size_t(j)] += w * spec.alphabet[a].prob(j);
    }

    std::unordered_map<Site, std::size_t, SiteHash> idx;
    for (std::size_t i = 0; i < v_set.size(); ++i) idx.emplace(v_set[i], i);
    Site origin(d);
    if (!idx.count(origin)) throw std::invalid_argument("supermartingale_diagnostic: v_set must contain 0");

    SupermartingaleReport rep;
    rep.eta_grid = eta_grid;
    const double tol = 1e-12;
    for (double eta : eta_grid) {
        auto h = [&](const Site& x) { return std::exp(-eta * double(dot(x, l))); };
        double mult = 0;
        for (int j = 0; j < 2 * d; ++j) mult += bar.prob(j) * h(unit_step(j, d));
        rep.one_step_mult.push_back(mult);

        std::vector<double> p(v_set.size(), 0.0);
        p[idx.at(origin)] = 1.0;
        double absorbed_h = 0;
        double prev = 1.0;  // E[H_0] with X_0 = 0
        bool mono = true;
        for (int n = 1; n <= n_max; ++n) {
            std::vector<double> q(v_set.size(), 0.0);
            for (std::size_t i = 0; i < v_set.size(); ++i) {
                if (p[i] == 0) continue;
                for (int j = 0; j < 2 * d; ++j) {
                    Site y = v_set[i] + unit_step(j, d);
                    double mass = p[i] * bar.prob(j);
                    auto it = idx.find(y);
                    if (it != idx.end())
                        q[it->second] += mass;
                    else
                        absorbed_h += mass * h(y);
                }
            }
            p.swap(q);
            double e_n = absorbed_h;
            for (std::size_t i = 0; i < v_set.size(); ++i) e_n += p[i] * h(v_set[i]);
            if (e_n > prev * (1.0 + tol) + tol) mono = false;
            prev = e_n;
        }
        rep.non_increasing.push_back(mono ? 1 : 0);
        if (mono) rep.eta0_probe = std::max(rep.eta0_probe, eta);
    }
    return rep;
}

}  // namespace rwre
