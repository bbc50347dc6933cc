#include "rwre/regeneration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rwre {

BarEpsilon bar_epsilon(const Site& l) {
    if (l.is_zero()) throw std::invalid_argument("bar_epsilon: zero vector");
    BarEpsilon be;
    be.l = l;
    be.symbols.reserve(std::size_t(l.l1()));
    for (int axis = 0; axis < l.d; ++axis) {
        std::int64_t v = l.c[axis];
        if (v == 0) continue;
        int code = 2 * axis + (v > 0 ? 0 : 1);
        for (std::int64_t i = 0; i < std::llabs(v); ++i) be.symbols.push_back(Eps(code));
    }
    return be;
}

std::vector<RegenerationRecord> detect_regenerations(const CoupledTrajectory& traj,
                                                     const DetectParams& params) {
    const Site& l = params.l;
    if (l.is_zero()) throw std::invalid_argument("detect_regenerations: zero l");
    const std::int64_t l1 = l.l1();
    if (params.L < l1 || params.L % l1 != 0)
        throw std::invalid_argument("detect_regenerations: L must be a positive multiple of |l|_1");
    const std::int64_t N = std::int64_t(traj.positions.size()) - 1;
    const int L = params.L;
    std::vector<RegenerationRecord> out;
    if (N < L) return out;

    BarEpsilon base = bar_epsilon(l);
    const double l2 = l.l2();
    const double thresh = params.cert_threshold > 0 ? params.cert_threshold : 50.0 * l2;

    std::vector<std::int64_t> dotl(std::size_t(N) + 1);
    for (std::int64_t n = 0; n <= N; ++n) dotl[std::size_t(n)] = dot(traj.positions[std::size_t(n)], l);
    std::vector<std::int64_t> prefmax(std::size_t(N) + 1);
    prefmax[0] = dotl[0];
    for (std::int64_t n = 1; n <= N; ++n) prefmax[std::size_t(n)] = std::max(prefmax[std::size_t(n - 1)], dotl[std::size_t(n)]);

    auto eps_window_matches = [&](std::int64_t n) {
        for (int i = 0; i < L; ++i) {
            Eps want = base.symbols[std::size_t(i) % base.symbols.size()];
            if (traj.epsilons[std::size_t(n - L + i)] != want) return false;
        }
        return true;
    };

    int k = 0;
    std::int64_t n = L;
    while (n <= N) {
        std::int64_t rec_idx = n - L;
        bool record = rec_idx == 0 ? true : dotl[std::size_t(rec_idx)] > prefmax[std::size_t(rec_idx - 1)];
        if (!record || !eps_window_matches(n)) {
            ++n;
            continue;
        }
        // S-candidate at n; certify D' = infinity against the cone at X_n
        ConeSpec cone{traj.positions[std::size_t(n)], l, params.zeta};
        std::int64_t m = n + 1;
        bool refuted = false, certified = false;
        double margin = 0;
        for (; m <= N; ++m) {
            const Site& y = traj.positions[std::size_t(m)];
            if (!cone.contains(y)) {
                refuted = true;
                break;
            }
            double disp = double(dotl[std::size_t(m)] - dotl[std::size_t(n)]) / l2;
            if (disp >= thresh) {
                certified = true;
                margin = disp;
                break;
            }
        }
        if (refuted) {
            // R_k = m; the next candidate's end time must exceed it
            n = m + 1;
            continue;
        }
        RegenerationRecord rec;
        rec.k = ++k;
        rec.tau = n;
        rec.position = traj.positions[std::size_t(n)];
        rec.certified = certified;
        rec.cone_margin = margin;
        out.push_back(rec);
        if (!certified) break;  // horizon expired mid-certification; rest of path unusable
        ++n;
    }
    return out;
}

std::pair<CoupledTrajectory, std::vector<RegenerationRecord>> run_and_detect(
    const Environment& env, const Site& start, const DetectParams& params, std::int64_t max_steps,
    Rng& rng) {
    StopSpec stop;
    stop.horizon = max_steps;
    auto [traj, outcome] = run_until(env, start, stop, WalkMode::Coupled, rng);
    (void)outcome;
    auto records = detect_regenerations(traj, params);
    return {std::move(traj), std::move(records)};
}

void RegenStats::add_trajectory(const std::vector<RegenerationRecord>& records) {
    const RegenerationRecord* prev = nullptr;
    for (const auto& r : records) {
        if (!r.certified) {
            ++n_truncated;
            continue;
        }
        ++n_certified;
        if (!prev) {
            firsts.emplace_back(r.tau, r.position);
        } else {
            increments.emplace_back(r.tau - prev->tau, r.position - prev->position);
        }
        prev = &r;
    }
}

void RegenStats::merge(const RegenStats& other) {
    firsts.insert(firsts.end(), other.firsts.begin(), other.firsts.end());
    increments.insert(increments.end(), other.increments.begin(), other.increments.end());
    n_certified += other.n_certified;
    n_truncated += other.n_truncated;
}

namespace {

RVec mean_position(const std::vector<std::pair<std::int64_t, Site>>& xs, int d) {
    RVec m(d);
    for (const auto& [t, x] : xs) m = m + RVec::from(x);
    return (1.0 / double(xs.size())) * m;
}

}  // namespace

DirectionEstimate estimate_direction(const RegenStats& stats, Rng& rng, int n_boot) {
    if (stats.firsts.empty()) throw std::invalid_argument("estimate_direction: empty stats");
    int d = stats.firsts.front().second.d;
    RVec m = mean_position(stats.firsts, d);
    double norm = m.l2();
    if (norm == 0) throw std::runtime_error("estimate_direction: zero mean displacement");
    DirectionEstimate est;
    est.v_hat = (1.0 / norm) * m;
    est.n = stats.firsts.size();
    est.reliable = est.n >= 30;
    if (est.n >= 2) {
        std::vector<double> angles;
        angles.reserve(std::size_t(n_boot));
        for (int b = 0; b < n_boot; ++b) {
            RVec bm(d);
            for (std::size_t i = 0; i < stats.firsts.size(); ++i) {
                const auto& pick = stats.firsts[rng.uniform_below(stats.firsts.size())];
                bm = bm + RVec::from(pick.second);
            }
            double bn = bm.l2();
            if (bn == 0) continue;
            double c = dot(bm, est.v_hat) / bn;
            angles.push_back(std::acos(std::min(1.0, std::max(-1.0, c))));
        }
        if (!angles.empty()) {
            std::sort(angles.begin(), angles.end());
            est.cone_halfangle = angles[std::size_t(0.99 * double(angles.size() - 1))];
        }
    }
    return est;
}

VelocityEstimate velocity_from_firsts(const RegenStats& stats) {
    if (stats.firsts.empty()) throw std::invalid_argument("velocity_from_firsts: empty stats");
    int d = stats.firsts.front().second.d;
    std::size_t n = stats.firsts.size();
    double mean_tau = 0;
    for (const auto& [t, x] : stats.firsts) mean_tau += double(t);
    mean_tau /= double(n);
    RVec mean_x = mean_position(stats.firsts, d);
    VelocityEstimate est;
    est.v = (1.0 / mean_tau) * mean_x;
    est.n = n;
    est.ci_halfwidth = RVec(d);
    if (n >= 2) {
        double var_tau = 0;
        for (const auto& [t, x] : stats.firsts) var_tau += (double(t) - mean_tau) * (double(t) - mean_tau);
        var_tau /= double(n - 1);
        for (int i = 0; i < d; ++i) {
            double var_x = 0, cov = 0;
            for (const auto& [t, x] : stats.firsts) {
                double dx = double(x.c[i]) - mean_x.c[i];
                var_x += dx * dx;
                cov += dx * (double(t) - mean_tau);
            }
            var_x /= double(n - 1);
            cov /= double(n - 1);
            double r = mean_x.c[i] / mean_tau;
            double var_ratio = (var_x - 2.0 * r * cov + r * r * var_tau) / (mean_tau * mean_tau * double(n));
            est.ci_halfwidth.c[i] = 3.0 * std::sqrt(std::max(0.0, var_ratio));
        }
    }
    return est;
}

VelocityTable estimate_velocity(const std::map<int, RegenStats>& stats_by_L) {
    VelocityTable table;
    int best_L = -1;
    for (const auto& [L, stats] : stats_by_L) {
        if (stats.firsts.size() < 30) continue;
        table.per_L.emplace(L, velocity_from_firsts(stats));
        best_L = std::max(best_L, L);
    }
    if (best_L < 0)
        throw std::invalid_argument("estimate_velocity: no L with >= 30 certified samples");
    table.v = table.per_L.at(best_L).v;
    return table;
}

ExpMomentEstimate exp_moment_xtau(const RegenStats& stats, double c, double kappa) {
    if (c <= 0) throw std::invalid_argument("exp_moment_xtau: c <= 0");
    if (stats.firsts.empty()) throw std::invalid_argument("exp_moment_xtau: empty stats");
    double scale = c * std::pow(kappa, double(stats.L));
    std::vector<double> vals;
    vals.reserve(stats.firsts.size());
    for (const auto& [t, x] : stats.firsts) vals.push_back(std::exp(scale * double(dot(x, stats.l))));
    ExpMomentEstimate est;
    est.n = vals.size();
    double sum = std::accumulate(vals.begin(), vals.end(), 0.0);
    est.value = sum / double(vals.size());
    double mx = *std::max_element(vals.begin(), vals.end());
    est.heavy_tail_warning = vals.size() >= 2 && mx > 0.5 * sum;
    if (vals.size() >= 2) {
        double s2 = 0;
        for (double v : vals) s2 += (v - est.value) * (v - est.value);
        est.se = std::sqrt(s2 / double(vals.size() - 1) / double(vals.size()));
    }
    return est;
}

double sup_displacement_Y(const CoupledTrajectory& traj, const RegenerationRecord& record) {
    if (record.tau < 0 || std::size_t(record.tau) >= traj.positions.size() ||
        !(traj.positions[std::size_t(record.tau)] == record.position))
        throw std::invalid_argument("sup_displacement_Y: record not on trajectory");
    double y = 0;
    for (std::int64_t n = 0; n <= record.tau; ++n)
        y = std::max(y, traj.positions[std::size_t(n)].l2());
    return y;
}

FluctuationOutcome transverse_fluctuation(const CoupledTrajectory& traj, const RVec& v_hat,
                                          const Site& l, double u, double gamma, double rho) {
    if (u <= 0) throw std::invalid_argument("transverse_fluctuation: u <= 0");
    FluctuationOutcome out;
    const auto& pos = traj.positions;
    double last_dot = double(dot(pos.back(), l));
    if (last_dot <= u) {
        out.censored = true;
        return out;
    }
    std::size_t m_u = 0;
    for (std::size_t n = 0; n < pos.size(); ++n)
        if (double(dot(pos[n], l)) <= u) m_u = n;
    double sup = 0;
    for (std::size_t n = 0; n <= m_u; ++n)
        sup = std::max(sup, project_orthogonal(RVec::from(pos[n]), v_hat).l2());
    out.sup_transverse = sup;
    out.event = sup >= rho * std::pow(u, gamma);
    return out;
}

}  // namespace rwre
