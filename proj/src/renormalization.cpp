#include "rwre/renormalization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "rwre/oracle.hpp"
#include "rwre/parallel.hpp"

namespace rwre {

namespace {

// componentwise offset of y from the anchor in the rotated frame
RVec anchor_frame(const BlockPair& b, const Site& y) {
    RVec u = b.rotation.apply_inv(y);
    for (int i = 0; i < u.d; ++i) u.c[i] -= double(b.z.c[i]);
    return u;
}

}  // namespace

bool BlockPair::in_inner(const Site& y) const {
    RVec t = anchor_frame(*this, y);
    for (int i = 0; i < t.d; ++i)
        if (!(t.c[i] > 0 && t.c[i] < m0)) return false;
    return true;
}

bool BlockPair::in_outer(const Site& y) const {
    RVec t = anchor_frame(*this, y);
    double p = pad();
    for (int i = 0; i < t.d; ++i)
        if (!(t.c[i] > -p && t.c[i] < m0 + p)) return false;
    return true;
}

bool BlockPair::positive_exit(const Site& y) const {
    return anchor_frame(*this, y).c[0] >= m0 + pad();
}

BlockPair make_block_pair(const Site& z, double m0, double gamma, const RVec& v_hat) {
    if (!(m0 > 0)) throw std::invalid_argument("make_block_pair: m0 <= 0");
    if (!(gamma > 5.0 / 9.0 && gamma < 1.0))
        throw std::invalid_argument("make_block_pair: gamma outside (5/9, 1)");
    BlockPair b;
    b.z = z;
    b.m0 = m0;
    b.gamma = gamma;
    b.rotation = rotation_to(v_hat);
    const int d = z.d;
    double pad = b.pad();
    // bounding sphere of the outer cube in real coordinates
    RVec center_rot(d);
    for (int i = 0; i < d; ++i) center_rot.c[i] = double(z.c[i]) + m0 / 2.0;
    RVec c_real = b.rotation.apply(center_rot);
    double radius = (m0 / 2.0 + pad) * std::sqrt(double(d));
    Site lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo.c[i] = std::int64_t(std::floor(c_real.c[i] - radius)) - 1;
        hi.c[i] = std::int64_t(std::ceil(c_real.c[i] + radius)) + 1;
    }
    for (const auto& y : box_sites(lo, hi)) {
        if (b.in_outer(y)) {
            b.outer.push_back(y);
            if (b.in_inner(y)) b.inner.push_back(y);
        }
    }
    if (b.inner.empty()) throw std::invalid_argument("make_block_pair: empty inner block (m0 too small)");
    return b;
}

BoxReport classify_block(const RealizedEnv& omega, const BlockPair& block, ClassifyMethod method,
                         std::int64_t samples_per_site, Rng& rng, std::size_t exact_budget,
                         std::int64_t horizon) {
    BoxReport rep;
    rep.anchor = block.z;
    rep.m0 = block.m0;
    rep.method = method;
    const int d = omega.d;
    if (method == ClassifyMethod::Exact) {
        if (block.outer.size() > exact_budget)
            throw std::runtime_error("classify_block: exact budget exceeded");
        auto h = solve_exit_functional(omega, block.outer,
                                       [&](const Site& y) { return block.positive_exit(y) ? 1.0 : 0.0; });
        double pmin = 1.0;
        for (const auto& x : block.inner) pmin = std::min(pmin, h.at(x));
        rep.p_plus_min = pmin;
        rep.good = pmin >= 0.5;
        rep.ci = {pmin, pmin};
        return rep;
    }
    if (samples_per_site <= 0) throw std::invalid_argument("classify_block: zero samples");
    double pmin = 1.0;
    Interval ci_min{1.0, 1.0};
    bool all_good = true;
    for (const auto& start : block.inner) {
        std::int64_t hits = 0;
        for (std::int64_t s = 0; s < samples_per_site; ++s) {
            Site x = start;
            bool positive = false;
            for (std::int64_t n = 0; n < horizon; ++n) {
                const TransitionVector& tv = omega.at(x);
                double u = rng.uniform();
                double acc = 0;
                int j = 2 * d - 1;
                for (int k = 0; k < 2 * d; ++k) {
                    acc += tv.prob(k);
                    if (u < acc) {
                        j = k;
                        break;
                    }
                }
                x = x + unit_step(j, d);
                if (!block.in_outer(x)) {
                    positive = block.positive_exit(x);
                    break;
                }
            }
            if (positive) ++hits;
        }
        double p = double(hits) / double(samples_per_site);
        Interval ci = wilson_interval(hits, samples_per_site);
        if (p < pmin) {
            pmin = p;
            ci_min = ci;
        }
        // conservative: an interval straddling 1/2 classifies the block bad
        if (ci.lo < 0.5) all_good = false;
    }
    rep.p_plus_min = pmin;
    rep.ci = ci_min;
    rep.good = all_good;
    return rep;
}

std::vector<BadFractionRow> bad_fraction_scan(const EnvironmentSpec& spec,
                                              const std::vector<double>& m0_grid, double gamma,
                                              std::int64_t n_blocks, const RVec& v_hat,
                                              std::uint64_t master_seed, int workers) {
    if (!std::is_sorted(m0_grid.begin(), m0_grid.end()))
        throw std::invalid_argument("bad_fraction_scan: m0_grid must be increasing");
    spec.validate();
    std::vector<BadFractionRow> rows;
    Site origin(spec.d);
    for (std::size_t mi = 0; mi < m0_grid.size(); ++mi) {
        BlockPair block = make_block_pair(origin, m0_grid[mi], gamma, v_hat);
        std::vector<std::int8_t> bad(std::size_t(n_blocks), 0);
        for_each_task(n_blocks, workers, [&](std::int64_t i) {
            std::uint64_t task = (std::uint64_t(mi) << 40) + std::uint64_t(i);
            Environment env(spec.with_seed(hash_combine(master_seed, hash_combine(3, task))));
            RealizedEnv re = RealizedEnv::from(env, block.outer);
            Rng rng(master_seed, hash_combine(4, task));
            ClassifyMethod method =
                block.outer.size() <= 40'000 ? ClassifyMethod::Exact : ClassifyMethod::Mc;
            BoxReport rep = classify_block(re, block, method, 1000, rng);
            bad[std::size_t(i)] = rep.good ? 0 : 1;
        });
        BadFractionRow row;
        row.m0 = m0_grid[mi];
        row.n_blocks = n_blocks;
        for (auto b : bad) row.n_bad += b;
        row.p_bad = double(row.n_bad) / double(n_blocks);
        row.ci = wilson_interval(row.n_bad, n_blocks);
        rows.push_back(row);
    }
    return rows;
}

TubeSpec build_tube(const Site& z, double m0, double m1, double M, const RVec& v_hat, const Site& l,
                    double gamma) {
    if (!(M > 0)) throw std::invalid_argument("build_tube: M <= 0");
    double k = m1 / m0;
    if (std::fabs(k - std::round(k)) > 1e-9)
        throw std::invalid_argument("build_tube: m1 must be a multiple of m0");
    if (std::fabs(m0 - std::round(m0)) > 1e-9)
        throw std::invalid_argument("build_tube: integer m0 required for anchor arithmetic");
    double a = dot(v_hat, RVec::from(l)) / l.l2();
    if (!(a > 0)) throw std::invalid_argument("build_tube: v_hat not aligned with l");
    TubeSpec tube;
    tube.z = z;
    tube.m0 = m0;
    tube.m1 = m1;
    tube.gamma = gamma;
    tube.v_hat = v_hat;
    tube.J = int(std::ceil(3.0 * M / (m0 * a) - 1e-12));
    const int d = z.d;
    const std::int64_t im0 = std::int64_t(std::llround(m0));
    const int per_axis = int(std::llround(k)) + 1;  // j_i in [0, m1/m0]
    std::vector<int> j(std::size_t(d - 1), 0);
    for (;;) {
        Site zp = z;
        for (int i = 1; i < d; ++i) zp.c[i] += std::int64_t(j[std::size_t(i - 1)]) * im0;
        tube.column_anchors.push_back(zp);
        int axis = 0;
        while (axis < d - 1) {
            if (++j[std::size_t(axis)] < per_axis) break;
            j[std::size_t(axis)] = 0;
            ++axis;
        }
        if (axis == d - 1) break;
    }
    std::unordered_set<Site, SiteHash> top_set;
    for (const auto& zp : tube.column_anchors) {
        Site zt = zp;
        zt.c[0] += std::int64_t(tube.J) * im0;
        BlockPair terminal = make_block_pair(zt, m0, gamma, v_hat);
        for (const auto& x : terminal.outer) {
            for (int c = 0; c < 2 * d; ++c) {
                Site y = x + unit_step(c, d);
                if (!terminal.in_outer(y) && terminal.positive_exit(y)) top_set.insert(y);
            }
        }
    }
    tube.top.assign(top_set.begin(), top_set.end());
    std::sort(tube.top.begin(), tube.top.end());
    return tube;
}

int min_bad_count(const RealizedEnv& omega, const TubeSpec& tube, Rng& rng,
                  std::size_t exact_budget) {
    const std::int64_t im0 = std::int64_t(std::llround(tube.m0));
    int best = tube.J + 1;
    for (const auto& zp : tube.column_anchors) {
        int count = 0;
        for (int jj = 0; jj <= tube.J; ++jj) {
            Site zb = zp;
            zb.c[0] += std::int64_t(jj) * im0;
            BlockPair block = make_block_pair(zb, tube.m0, tube.gamma, tube.v_hat);
            BoxReport rep = classify_block(omega, block, ClassifyMethod::Exact, 0, rng, exact_budget);
            if (!rep.good) ++count;
        }
        best = std::min(best, count);
    }
    return best;
}

AtypicalProbeResult atypical_quenched_probe(const EnvironmentSpec& spec, const Site& l, double M,
                                            double beta, double c, std::int64_t n_env,
                                            std::uint64_t master_seed, std::size_t exact_budget) {
    if (n_env <= 0) throw std::invalid_argument("atypical_quenched_probe: n_env <= 0");
    spec.validate();
    const int d = spec.d;
    const double l2 = l.l2();
    RVec ell = (1.0 / l2) * RVec::from(l);
    Site origin(d);

    auto in_slab = [&](const Site& y, double width) {
        double along = double(dot(y, l)) / l2;
        if (!(std::fabs(along) < M)) return false;
        return project_orthogonal(RVec::from(y), ell).l2() < width;
    };

    AtypicalProbeResult res;
    res.threshold = std::exp(-c * std::pow(M, beta));
    double width = std::max(4.0 * M, 10.0);
    for (int attempt = 0;; ++attempt) {
        std::int64_t r = std::int64_t(std::ceil(std::max(M, width))) + 1;
        Site lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            lo.c[i] = -r;
            hi.c[i] = r;
        }
        std::vector<Site> slab;
        for (const auto& y : box_sites(lo, hi))
            if (in_slab(y, width)) slab.push_back(y);
        if (slab.size() > exact_budget)
            throw std::runtime_error("atypical_quenched_probe: slab exceeds solve budget");

        res.quenched_p.clear();
        res.fraction_atypical = 0;
        bool leaked = false;
        for (std::int64_t i = 0; i < n_env; ++i) {
            Environment env(spec.with_seed(hash_combine(master_seed, hash_combine(5, std::uint64_t(i)))));
            RealizedEnv re = RealizedEnv::from(env, slab);
            AbsorbingSolve solve = solve_absorbing(re, slab, origin);
            double p_plus = 0, p_trunc = 0;
            for (const auto& [y, p] : solve.exit_law) {
                double along = double(dot(y, l)) / l2;
                if (along >= M)
                    p_plus += p;
                else if (std::fabs(along) < M)
                    p_trunc += p;  // left through the transverse truncation
            }
            if (p_trunc > 1e-6) {
                leaked = true;
                break;
            }
            res.quenched_p.push_back(p_plus);
            if (p_plus <= res.threshold) res.fraction_atypical += 1.0;
        }
        if (!leaked) {
            res.fraction_atypical /= double(n_env);
            res.truncation_width = std::int64_t(std::llround(width));
            return res;
        }
        if (attempt >= 3)
            throw std::runtime_error("atypical_quenched_probe: transverse truncation keeps leaking");
        width *= 2.0;
    }
}

}  // namespace rwre
