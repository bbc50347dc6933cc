#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rwre/walk.hpp"

namespace rwre {

// Forced block: |l_1| copies of sign(l_1)e_1, then |l_2| copies of
// sign(l_2)e_2, ... Every partial sum lies in the cone C(0,l,zeta) for small
// zeta.
struct BarEpsilon {
    Site l;
    std::vector<Eps> symbols;  // length |l|_1, forced step codes
};
BarEpsilon bar_epsilon(const Site& l);

struct RegenerationRecord {
    int k = 0;
    std::int64_t tau = 0;
    Site position;
    bool certified = false;
    double cone_margin = 0;  // ell-displacement achieved inside the cone at certification
};

struct DetectParams {
    Site l;            // integer direction vector
    double zeta = 0;   // cone opening
    int L = 0;         // ladder scale, multiple of |l|_1
    double cert_threshold = 0;  // ell-displacement certifying D' = infinity; default 50 |l|_2
};

// Scans a coupled trajectory for the S_k / R_k cascade: a strict l-record at
// time n-L followed by the forced block, then certification that the walk
// stays in C(X_n, l, zeta) until its ell-displacement reaches the threshold.
// Records whose certification window collides with the end of the trajectory
// come back flagged certified = false.
std::vector<RegenerationRecord> detect_regenerations(const CoupledTrajectory& traj,
                                                     const DetectParams& params);

// Convenience: run a coupled trajectory to the horizon and detect.
std::pair<CoupledTrajectory, std::vector<RegenerationRecord>> run_and_detect(
    const Environment& env, const Site& start, const DetectParams& params, std::int64_t max_steps,
    Rng& rng);

// Merged regeneration statistics across trajectories.
struct RegenStats {
    std::vector<std::pair<std::int64_t, Site>> firsts;  // (tau_1, X_{tau_1}) per trajectory
    std::vector<std::pair<std::int64_t, Site>> increments;  // (delta tau, delta X), k >= 2
    Site l;
    int L = 0;
    std::int64_t n_certified = 0;
    std::int64_t n_truncated = 0;

    void add_trajectory(const std::vector<RegenerationRecord>& records);
    void merge(const RegenStats& other);
};

struct DirectionEstimate {
    RVec v_hat;
    double cone_halfangle = 0;  // bootstrap 99% half-angle, radians
    bool reliable = false;
    std::size_t n = 0;
};
DirectionEstimate estimate_direction(const RegenStats& stats, Rng& rng, int n_boot = 400);

struct VelocityEstimate {
    RVec v;
    RVec ci_halfwidth;  // delta-method, 3 sigma per component
    std::size_t n = 0;
};
VelocityEstimate velocity_from_firsts(const RegenStats& stats);

struct VelocityTable {
    std::map<int, VelocityEstimate> per_L;
    RVec v;  // largest-L ratio
};
VelocityTable estimate_velocity(const std::map<int, RegenStats>& stats_by_L);

struct ExpMomentEstimate {
    double value = 1.0;
    double se = 0;
    bool heavy_tail_warning = false;
    std::size_t n = 0;
};
// Empirical mean of exp(c kappa^L X_{tau_1}.l) over first-regeneration samples.
ExpMomentEstimate exp_moment_xtau(const RegenStats& stats, double c, double kappa);

// Y = sup_{0 <= n <= tau_1} |X_n|_2 for a record on its trajectory.
double sup_displacement_Y(const CoupledTrajectory& traj, const RegenerationRecord& record);

struct FluctuationOutcome {
    bool censored = false;
    double sup_transverse = 0;
    bool event = false;  // sup |Pi_vhat(X_n)|, n <= M_u, exceeded rho u^gamma
};
// M_u is the last index with X.l <= u; censored when the trajectory has not
// clearly passed level u by its end.
FluctuationOutcome transverse_fluctuation(const CoupledTrajectory& traj, const RVec& v_hat,
                                          const Site& l, double u, double gamma, double rho);

}  // namespace rwre
