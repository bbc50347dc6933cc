#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/vec.hpp"

namespace rwre {

// Exact Green's-function solve of the chain killed outside v_set.
struct AbsorbingSolve {
    std::vector<Site> v_set;
    Site start;
    std::unordered_map<Site, double, SiteHash> exit_law;  // boundary site -> probability
    double expected_exit_time = 0;
    std::unordered_map<Site, double, SiteHash> green;  // expected visit counts from start
};

// Sparse linear solve of (I - P)^T g = delta_start on v_set; residual < 1e-12.
AbsorbingSolve solve_absorbing(const RealizedEnv& omega, const std::vector<Site>& v_set,
                               const Site& start, std::size_t budget = 200000);

// h(x) = E_x[value at exit] for x in v_set, with boundary_value given on the
// exterior boundary. One solve yields the functional at every interior site.
std::unordered_map<Site, double, SiteHash> solve_exit_functional(
    const RealizedEnv& omega, const std::vector<Site>& v_set,
    const std::function<double(const Site&)>& boundary_value, std::size_t budget = 200000);

// P_start[H_target < T_{v_set}]: probability of hitting target before leaving v_set.
double hitting_before_exit(const RealizedEnv& omega, const std::vector<Site>& v_set,
                           const Site& start, const Site& target);

// Reconstruction of E[T_V] as sum_x P[H_x < T] / P_x[~H_x > T], each factor
// from hitting-probability solves. Independent of the Green's-sum route.
double expected_exit_time_via_hitting(const RealizedEnv& omega, const std::vector<Site>& v_set,
                                      const Site& start);

// Exact distribution over length-n nearest-neighbour paths under P_{start,omega}.
// A path is its sequence of step codes.
struct PathDistribution {
    int n_steps = 0;
    std::vector<std::pair<std::vector<int>, double>> atoms;  // (step codes, probability)
};
PathDistribution enumerate_paths(const RealizedEnv& omega, const Site& start, int n_steps,
                                 std::size_t budget = 5'000'000);

// Enumerates every alphabet assignment of an i.i.d. finite-alphabet field on
// `sites` and averages f weighted by the site marginal. f returns a vector so
// whole exit laws can be averaged in one pass.
std::vector<double> enumerate_annealed(const EnvironmentSpec& spec, const std::vector<Site>& sites,
                                       const std::function<std::vector<double>(const RealizedEnv&)>& f,
                                       std::size_t budget = 1'000'000);

// Sites of Z^d adjacent to v_set but outside it.
std::vector<Site> exterior_boundary(const std::vector<Site>& v_set, int d);

// Axis-aligned box of sites, inclusive bounds per coordinate.
std::vector<Site> box_sites(const Site& lo, const Site& hi);

}  // namespace rwre
