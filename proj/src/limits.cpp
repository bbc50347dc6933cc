#include "rwre/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwre/parallel.hpp"
#include "rwre/walk.hpp"

namespace rwre {

LlnResult lln_check(const EnvironmentSpec& spec, const Site& l, std::int64_t n,
                    std::int64_t n_traj, std::uint64_t master_seed, int workers) {
    if (n < 1000) throw std::invalid_argument("lln_check: n < 1e3");
    if (n_traj < 1) throw std::invalid_argument("lln_check: no trajectories");
    spec.validate();
    const int d = spec.d;
    Site origin(d);
    std::vector<Site> finals(static_cast<std::size_t>(n_traj), Site(d));
    for_each_task(n_traj, workers, [&](std::int64_t i) {
        Environment env(spec.with_seed(hash_combine(master_seed, hash_combine(6, std::uint64_t(i)))));
        Rng rng(master_seed, hash_combine(7, std::uint64_t(i)));
        StopSpec stop;
        stop.horizon = n;
        Site last = origin;
        stream_walk(env, origin, stop, WalkMode::Quenched, rng,
                    [&](std::int64_t, const Site& x, Eps) { last = x; });
        finals[std::size_t(i)] = last;
    });
    LlnResult res;
    res.n = n;
    res.n_traj = std::size_t(n_traj);
    res.v_hat = RVec(d);
    res.ci_halfwidth = RVec(d);
    for (int k = 0; k < d; ++k) {
        std::vector<double> xs;
        xs.reserve(std::size_t(n_traj));
        for (const auto& x : finals) xs.push_back(double(x.c[k]) / double(n));
        MeanCi mc = mean_ci(xs);
        res.v_hat.c[k] = mc.mean;
        res.ci_halfwidth.c[k] = 3.0 * mc.se;
    }
    res.positive_drift = dot(res.v_hat, l) > 0;
    return res;
}

CltReport clt_scaling(const EnvironmentSpec& spec, const RVec& v, const RVec& ell,
                      const std::vector<std::int64_t>& n_grid, std::int64_t n_traj,
                      std::uint64_t master_seed, int workers) {
    spec.validate();
    const int d = spec.d;
    Rotation rot = rotation_to(ell);  // columns form an orthonormal basis, first = ell
    Site origin(d);
    CltReport rep;
    rep.v_used = v;
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        std::int64_t n = n_grid[ni];
        std::vector<Site> finals(static_cast<std::size_t>(n_traj), Site(d));
        for_each_task(n_traj, workers, [&](std::int64_t i) {
            std::uint64_t task = (std::uint64_t(ni) << 40) + std::uint64_t(i);
            Environment env(spec.with_seed(hash_combine(master_seed, hash_combine(8, task))));
            Rng rng(master_seed, hash_combine(9, task));
            StopSpec stop;
            stop.horizon = n;
            Site last = origin;
            stream_walk(env, origin, stop, WalkMode::Quenched, rng,
                        [&](std::int64_t, const Site& x, Eps) { last = x; });
            finals[std::size_t(i)] = last;
        });
        CltRow row;
        row.n = n;
        for (int axis = 0; axis < d; ++axis) {
            RVec w(d);
            for (int i = 0; i < d; ++i) w.c[i] = rot.at(i, axis);  // column axis of R
            std::vector<double> scaled;
            scaled.reserve(std::size_t(n_traj));
            for (const auto& x : finals) {
                RVec centered = RVec::from(x) - double(n) * v;
                scaled.push_back(dot(centered, w) / std::sqrt(double(n)));
            }
            CltProjection proj;
            proj.axis = axis;
            proj.var_per_step = variance(scaled);  // Var(X_n.w)/n by construction
            proj.ad_p = anderson_darling_normal(scaled).p;
            row.projections.push_back(proj);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<double> renewal_covariance(const RegenStats& stats, const RVec& v) {
    if (stats.increments.size() < 2)
        throw std::invalid_argument("renewal_covariance: need >= 2 increments");
    const int d = v.d;
    std::size_t n = stats.increments.size();
    double mean_dtau = 0;
    for (const auto& [t, x] : stats.increments) mean_dtau += double(t);
    mean_dtau /= double(n);
    std::vector<RVec> blocks;
    blocks.reserve(n);
    RVec mean_b(d);
    for (const auto& [t, x] : stats.increments) {
        RVec b = RVec::from(x) - double(t) * v;
        blocks.push_back(b);
        mean_b = mean_b + b;
    }
    mean_b = (1.0 / double(n)) * mean_b;
    std::vector<double> cov(std::size_t(d) * std::size_t(d), 0.0);
    for (const auto& b : blocks) {
        RVec c = b - mean_b;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) cov[std::size_t(i) * std::size_t(d) + std::size_t(j)] += c.c[i] * c.c[j];
    }
    for (auto& e : cov) e /= double(n - 1) * mean_dtau;
    return cov;
}

NearIidReport near_iid_test(const RegenStats& stats, double mu_band) {
    if (stats.increments.size() < 200)
        throw std::invalid_argument("near_iid_test: need >= 200 increments");
    std::vector<double> dtau, dxl;
    for (const auto& [t, x] : stats.increments) {
        dtau.push_back(double(t));
        dxl.push_back(double(dot(x, stats.l)));
    }
    auto halves_ks = [](const std::vector<double>& xs) {
        std::size_t h = xs.size() / 2;
        return ks_two_sample_p(std::vector<double>(xs.begin(), xs.begin() + std::ptrdiff_t(h)),
                               std::vector<double>(xs.begin() + std::ptrdiff_t(h), xs.end()));
    };
    NearIidReport rep;
    rep.n_increments = stats.increments.size();
    rep.mu_band = mu_band;
    rep.p_ks_dtau = halves_ks(dtau);
    rep.p_ks_dxl = halves_ks(dxl);
    rep.z_lag1_dtau = spearman_lag1(dtau).z;
    rep.z_lag1_dxl = spearman_lag1(dxl).z;
    double alpha = 0.01 / mu_band;       // KS threshold relaxed by the mixing band
    double z_cut = 2.576 * mu_band;      // two-sided 1% normal cutoff, widened
    rep.pass = rep.p_ks_dtau > alpha && rep.p_ks_dxl > alpha &&
               std::fabs(rep.z_lag1_dtau) < z_cut && std::fabs(rep.z_lag1_dxl) < z_cut;
    return rep;
}

TailFitReport tau_tail_fit(const std::vector<std::int64_t>& taus,
                           const std::vector<double>& alpha_grid) {
    if (taus.size() < 1000) throw std::invalid_argument("tau_tail_fit: need >= 1e3 samples");
    std::vector<double> sorted;
    sorted.reserve(taus.size());
    for (auto t : taus) sorted.push_back(double(t));
    std::sort(sorted.begin(), sorted.end());
    TailFitReport rep;
    // log-spaced u grid between the median and the 99.5th percentile
    double u_lo = sorted[sorted.size() / 2];
    double u_hi = sorted[std::size_t(0.995 * double(sorted.size() - 1))];
    if (!(u_hi > u_lo && u_lo >= 1.0))
        throw std::invalid_argument("tau_tail_fit: degenerate tail");
    const int kPoints = 12;
    for (int i = 0; i < kPoints; ++i) {
        double u = u_lo * std::pow(u_hi / u_lo, double(i) / double(kPoints - 1));
        auto it = std::upper_bound(sorted.begin(), sorted.end(), u);
        double surv = double(sorted.end() - it) / double(sorted.size());
        if (surv <= 0) break;
        rep.u_grid.push_back(u);
        rep.survival.push_back(surv);
    }
    if (rep.u_grid.size() < 3) throw std::runtime_error("tau_tail_fit: too few tail points");
    for (double alpha : alpha_grid) {
        std::vector<double> x, y, w;
        for (std::size_t i = 0; i < rep.u_grid.size(); ++i) {
            x.push_back(std::pow(std::log(rep.u_grid[i]), alpha));
            y.push_back(std::log(rep.survival[i]));
            double ns = rep.survival[i] * double(taus.size());
            w.push_back(ns * rep.survival[i] / std::max(1e-12, 1.0 - rep.survival[i]));
        }
        LineFit fit = wls_line(x, y, w);
        TailFitRow row;
        row.alpha = alpha;
        row.slope = fit.slope;
        row.decreasing = fit.slope < 0;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace rwre
