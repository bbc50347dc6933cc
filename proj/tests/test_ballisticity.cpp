#include <doctest.h>

#include <cmath>

#include "rwre/ballisticity.hpp"
#include "rwre/walk.hpp"

using namespace rwre;

namespace {

EnvironmentSpec biased_spec() {
    return EnvironmentSpec::homogeneous(2, TransitionVector::from({0.4, 0.1, 0.25, 0.25}), 0.05);
}

}  // namespace

TEST_CASE("sites_in_box matches contains") {
    BoxSpec box = BoxSpec::make(Site{2, -1}, 4, 9, Direction::from_integer(Site{1, 0}));
    std::vector<Site> sites = sites_in_box(box);
    for (const auto& x : sites) CHECK(box.contains(x));
    // brute-force count over a generous window
    int count = 0;
    for (std::int64_t i = -20; i <= 20; ++i)
        for (std::int64_t j = -20; j <= 20; ++j) count += box.contains(Site{i, j}) ? 1 : 0;
    CHECK(int(sites.size()) == count);
}

TEST_CASE("exact box fail probability") {
    Environment env(biased_spec());
    Direction dir = Direction::from_integer(Site{1, 0});
    auto fail_at = [&](double m) {
        BoxSpec box = BoxSpec::make(Site{0, 0}, m, 3.0 * m, dir);
        RealizedEnv omega = RealizedEnv::from(env, sites_in_box(box));
        return exact_box_fail_probability(omega, box);
    };
    double f4 = fail_at(4), f6 = fail_at(6), f8 = fail_at(8);
    CHECK(f4 > 0);
    CHECK(f4 < 1);
    CHECK(f6 < f4);
    CHECK(f8 < f6);

    SUBCASE("agrees with direct simulation") {
        BoxSpec box = BoxSpec::make(Site{0, 0}, 4, 12, dir);
        Rng rng(5150, 0);
        const int n = 20000;
        int fails = 0;
        StopSpec stop;
        stop.horizon = 1000000;
        stop.triggers.push_back(StopBoxExit{box});
        for (int i = 0; i < n; ++i) {
            auto [traj, out] = run_until(env, Site{0, 0}, stop, WalkMode::Quenched, rng);
            if (!box_positive_boundary_hit(box, out.position)) ++fails;
        }
        double p = f4;
        double sigma = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(double(fails) / n - p) < 4.0 * sigma);
    }
}

TEST_CASE("condition (T) verdicts") {
    TConditionParams params;
    params.l = Site{1, 0};
    params.aspect = 3.0;
    params.m_grid = {4, 6, 8};
    params.samples_per_m = 4000;
    params.horizon = 100000;
    params.master_seed = 99;

    SUBCASE("drift along l supports (T)") {
        TConditionReport rep = estimate_condition_T(biased_spec(), params);
        CHECK(rep.verdict == TVerdict::SupportsT);
        CHECK(rep.fit.slope < 0);
        CHECK(rep.p_fail[0] > rep.p_fail[2]);
        for (std::size_t i = 0; i < rep.m_grid.size(); ++i) {
            CHECK(rep.ci[i].lo <= rep.p_fail[i]);
            CHECK(rep.ci[i].hi >= rep.p_fail[i]);
        }
    }
    SUBCASE("symmetric walk rejects (T)") {
        EnvironmentSpec sym = EnvironmentSpec::homogeneous(2, TransitionVector::symmetric(2), 0.05);
        TConditionReport rep = estimate_condition_T(sym, params);
        CHECK(rep.verdict == TVerdict::RejectsT);
    }
    SUBCASE("report is a pure function of the seed") {
        TConditionParams small = params;
        small.samples_per_m = 200;
        TConditionReport a = estimate_condition_T(biased_spec(), small);
        TConditionReport b = estimate_condition_T(biased_spec(), small);
        CHECK(a.p_fail == b.p_fail);
        CHECK(a.n_failures == b.n_failures);
    }
}

TEST_CASE("kalikow kernel of a deterministic environment is omega") {
    EnvironmentSpec spec = biased_spec();
    Environment env(spec);
    std::vector<Site> v = box_sites(Site{-2, -2}, Site{2, 2});
    RealizedEnv omega = RealizedEnv::from(env, v);
    KalikowKernel kernel = kalikow_kernel_exact(omega, v, Site{0, 0});
    CHECK(kernel.exact);
    for (const auto& x : v) {
        for (int j = 0; j < 4; ++j)
            CHECK(std::fabs(kernel.p_hat.at(x).prob(j) - omega.at(x).prob(j)) < 1e-12);
        RVec drift = kernel.drift_at(x);
        CHECK(std::fabs(drift.c[0] - 0.3) < 1e-12);
    }
}

TEST_CASE("kalikow proposition: auxiliary chain reproduces the annealed exit law") {
    std::vector<Site> v = box_sites(Site{-1, -1}, Site{1, 1});
    SUBCASE("deterministic environment") {
        CHECK(verify_kalikow_proposition(biased_spec(), v, Site{0, 0}) < 1e-10);
    }
    SUBCASE("two-letter iid environment") {
        EnvironmentSpec spec = EnvironmentSpec::iid_finite(
            2, 0.05,
            {TransitionVector::from({0.4, 0.1, 0.25, 0.25}),
             TransitionVector::from({0.15, 0.35, 0.25, 0.25})},
            {0.6, 0.4}, 0);
        std::vector<Site> strip = box_sites(Site{0, 0}, Site{2, 1});  // 6 sites, 2^6 environments
        CHECK(verify_kalikow_proposition(spec, strip, Site{0, 0}) < 1e-10);
    }
}

TEST_CASE("kalikow delta probe") {
    RVec ell{1.0, 0.0};
    std::vector<std::vector<Site>> family{box_sites(Site{-1, -1}, Site{1, 1}),
                                          box_sites(Site{-2, -2}, Site{2, 2})};
    SUBCASE("homogeneous: equals the drift") {
        double delta = kalikow_delta(biased_spec(), family, ell, 0, 7);
        CHECK(std::fabs(delta - 0.3) < 1e-12);
    }
    SUBCASE("symmetric: zero") {
        EnvironmentSpec sym = EnvironmentSpec::homogeneous(2, TransitionVector::symmetric(2), 0.05);
        CHECK(std::fabs(kalikow_delta(sym, family, ell, 0, 7)) < 1e-12);
    }
}

TEST_CASE("annealed kernel determinism and normalization") {
    EnvironmentSpec spec = EnvironmentSpec::iid_continuous(2, 0.05, 1.0, 0);
    std::vector<Site> v = box_sites(Site{-1, -1}, Site{1, 1});
    KalikowKernel a = kalikow_kernel_annealed(spec, v, Site{0, 0}, 200, 13);
    KalikowKernel b = kalikow_kernel_annealed(spec, v, Site{0, 0}, 200, 13);
    CHECK(!a.exact);
    CHECK(a.n_env_samples == 200);
    for (const auto& x : v) {
        CHECK(std::fabs(a.p_hat.at(x).sum() - 1.0) < 1e-12);
        for (int j = 0; j < 4; ++j) {
            CHECK(a.p_hat.at(x).prob(j) == b.p_hat.at(x).prob(j));
            CHECK(a.p_hat.at(x).prob(j) >= spec.kappa);  // ellipticity survives averaging
        }
    }
    // exit law of the kernel chain is a probability measure
    auto law = kalikow_exit_law(a);
    double mass = 0;
    for (const auto& [site, p] : law) mass += p;
    CHECK(std::fabs(mass - 1.0) < 1e-10);
}

TEST_CASE("supermartingale probe") {
    std::vector<double> grid{0.02, 0.05, 0.1, 0.2, 0.4};
    std::vector<Site> v = box_sites(Site{-4, -4}, Site{4, 4});
    SUBCASE("drifted environment admits a positive eta") {
        SupermartingaleReport rep = supermartingale_diagnostic(biased_spec(), Site{1, 0}, grid, v);
        // one-step factor at eta = 0.1: 0.4 e^{-0.1} + 0.1 e^{0.1} + 0.5
        double expect = 0.4 * std::exp(-0.1) + 0.1 * std::exp(0.1) + 0.5;
        CHECK(std::fabs(rep.one_step_mult[2] - expect) < 1e-12);
        CHECK(expect < 1.0);
        CHECK(rep.eta0_probe > 0);
    }
    SUBCASE("symmetric environment admits none") {
        EnvironmentSpec sym = EnvironmentSpec::homogeneous(2, TransitionVector::symmetric(2), 0.05);
        SupermartingaleReport rep = supermartingale_diagnostic(sym, Site{1, 0}, grid, v);
        CHECK(rep.eta0_probe == 0.0);
        for (double mult : rep.one_step_mult) CHECK(mult > 1.0);
    }
    SUBCASE("continuous fields are rejected") {
        EnvironmentSpec cont = EnvironmentSpec::iid_continuous(2, 0.05, 1.0, 0);
        CHECK_THROWS(supermartingale_diagnostic(cont, Site{1, 0}, grid, v));
    }
}
