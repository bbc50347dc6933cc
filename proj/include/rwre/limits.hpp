#pragma once

#include <cstdint>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/regeneration.hpp"
#include "rwre/stats.hpp"

namespace rwre {

struct LlnResult {
    RVec v_hat;
    RVec ci_halfwidth;  // 3 sigma per component
    std::size_t n_traj = 0;
    std::int64_t n = 0;
    bool positive_drift = false;  // v_hat . l > 0 for the supplied l
};

// Mean of X_n / n over independent quenched trajectories (fresh environment
// per trajectory for i.i.d./markov specs).
LlnResult lln_check(const EnvironmentSpec& spec, const Site& l, std::int64_t n,
                    std::int64_t n_traj, std::uint64_t master_seed, int workers = 1);

struct CltProjection {
    int axis = 0;  // index into the orthonormal basis (0 = ell)
    double var_per_step = 0;
    double ad_p = 0;
};

struct CltRow {
    std::int64_t n = 0;
    std::vector<CltProjection> projections;
};

struct CltReport {
    RVec v_used;
    std::vector<CltRow> rows;
    // renewal-block covariance estimate (row-major d x d); empty when no
    // regeneration statistics were supplied
    std::vector<double> covariance_hat;
    std::size_t covariance_samples = 0;
};

// Per-n normality and variance scaling of (X_n - n v) . w / sqrt(n) along an
// orthonormal basis with first vector ell.
CltReport clt_scaling(const EnvironmentSpec& spec, const RVec& v, const RVec& ell,
                      const std::vector<std::int64_t>& n_grid, std::int64_t n_traj,
                      std::uint64_t master_seed, int workers = 1);

// Sample covariance of (dX_k - dtau_k v) over regeneration increments divided
// by the mean dtau (standard renewal-block estimator; not an identity from
// any exact formula). Row-major d x d.
std::vector<double> renewal_covariance(const RegenStats& stats, const RVec& v);

struct NearIidReport {
    double p_ks_dtau = 0, p_ks_dxl = 0;     // halves KS
    double z_lag1_dtau = 0, z_lag1_dxl = 0;  // Spearman lag-1 z-scores
    double mu_band = 1.0;
    bool pass = false;
    std::size_t n_increments = 0;
};

// mu(L) = exp(exp(-g t L)) tolerance factor of the near-independence band.
inline double mu_of_L(double g, double t, int L) { return std::exp(std::exp(-g * t * double(L))); }

// Near-i.i.d. battery on increments k >= 2: first-half-vs-second-half KS on
// dtau and dX.l, lag-1 rank autocorrelation on both; thresholds widened
// multiplicatively by mu_band (1.0 = exact i.i.d. expectation).
NearIidReport near_iid_test(const RegenStats& stats, double mu_band = 1.0);

struct TailFitRow {
    double alpha = 0;
    double slope = 0;  // log P[tau_1 > u] regressed on (log u)^alpha
    bool decreasing = false;
};

struct TailFitReport {
    std::vector<double> u_grid;
    std::vector<double> survival;
    std::vector<TailFitRow> rows;
};

// Empirical tau_1 survival function against the stretched-log scale; sign of
// slope only, no constant estimation.
TailFitReport tau_tail_fit(const std::vector<std::int64_t>& taus, const std::vector<double>& alpha_grid);

}  // namespace rwre
