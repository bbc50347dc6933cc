#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/oracle.hpp"
#include "rwre/stats.hpp"

namespace rwre {

enum class TVerdict { SupportsT, RejectsT, Inconclusive };

// Condition (T) probe: decay of the non-positive-face box-exit probability in
// the box depth M.
struct TConditionReport {
    Direction direction;
    double aspect = 0;  // width/depth ratio of the scanned boxes
    std::vector<double> m_grid;
    std::vector<double> p_fail;
    std::vector<Interval> ci;              // Wilson, 3 sigma
    std::vector<std::int64_t> n_failures;  // raw counts per M
    std::vector<std::int64_t> n_horizon;   // walks that never exited
    std::int64_t samples_per_m = 0;
    LineFit fit;  // log p_fail vs M, weighted least squares
    TVerdict verdict = TVerdict::Inconclusive;
};

struct TConditionParams {
    Site l;
    double aspect = 3.0;
    std::vector<double> m_grid;
    std::int64_t samples_per_m = 100;
    std::int64_t horizon = 1'000'000;
    std::uint64_t master_seed = 0;
    int workers = 1;
};

// Fresh environment + walk per sample; p_fail(M) is the probability of exiting
// B_{M, aspect M, l}(0) anywhere but the positive face. The verdict is
// supports-T iff the fitted slope satisfies slope + 2 SE < 0.
TConditionReport estimate_condition_T(const EnvironmentSpec& spec, const TConditionParams& params);

// All lattice sites of a box (its interior for the walk).
std::vector<Site> sites_in_box(const BoxSpec& box);

// Exact quenched probability of exiting the box anywhere but the positive
// face, by absorbing solve from the box center.
double exact_box_fail_probability(const RealizedEnv& omega, const BoxSpec& box);

// Kalikow auxiliary chain on a finite set V containing the start.
struct KalikowKernel {
    std::vector<Site> v_set;
    Site start;
    std::unordered_map<Site, TransitionVector, SiteHash> p_hat;
    std::size_t n_env_samples = 0;
    bool exact = false;

    RVec drift_at(const Site& x) const { return p_hat.at(x).drift(); }
};

// Quenched kernel: P_hat(x, x+e) = G(start,x) omega(x,e) / G(start,x), formed
// through the Green's factors so degenerate occupation is caught.
KalikowKernel kalikow_kernel_exact(const RealizedEnv& omega, const std::vector<Site>& v_set,
                                   const Site& start);

// Annealed kernel: numerators and denominators averaged separately over n_env
// sampled environments (ratio of sums).
KalikowKernel kalikow_kernel_annealed(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                      const Site& start, std::size_t n_env,
                                      std::uint64_t master_seed);

// Exact annealed kernel for finite-alphabet i.i.d. specs by enumerating every
// environment on V; budget as in enumerate_annealed.
KalikowKernel kalikow_kernel_enumerated(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                        const Site& start, std::size_t budget = 1'000'000);

// min over the supplied family and its sites of d_hat_V(x) . ell -- a probe of
// the Kalikow infimum restricted to the family (an upper bound on the true
// inf, as documented in the report).
double kalikow_delta(const EnvironmentSpec& spec, const std::vector<std::vector<Site>>& v_family,
                     const RVec& ell, std::size_t n_env, std::uint64_t master_seed,
                     std::size_t enumeration_budget = 1'000'000);

// Exit law of the Kalikow chain on v_set (exact absorbing solve with p_hat).
std::unordered_map<Site, double, SiteHash> kalikow_exit_law(const KalikowKernel& kernel);

// Total-variation distance between the Kalikow-chain exit law and the annealed
// exit law of the walk, both computed exactly (deterministic env, or full
// enumeration for finite-alphabet i.i.d.).
double verify_kalikow_proposition(const EnvironmentSpec& spec, const std::vector<Site>& v_set,
                                  const Site& start, std::size_t budget = 1'000'000);

// H_n = exp(-eta X_n . l) supermartingale probe along the annealed mean
// kernel, iterated exactly on the chain stopped outside v_set.
struct SupermartingaleReport {
    std::vector<double> eta_grid;
    std::vector<double> one_step_mult;  // sum_e omega_bar(e) exp(-eta e.l)
    std::vector<char> non_increasing;   // E[H_{n and T}] trend over n
    double eta0_probe = 0;              // largest grid eta with a non-increasing trend
};
SupermartingaleReport supermartingale_diagnostic(const EnvironmentSpec& spec, const Site& l,
                                                 const std::vector<double>& eta_grid,
                                                 const std::vector<Site>& v_set, int n_max = 64);

}  // namespace rwre
