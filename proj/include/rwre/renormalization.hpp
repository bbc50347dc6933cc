#pragma once

#include <cstdint>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/stats.hpp"

namespace rwre {

// Rotated block pair at anchor z (pre-rotation coordinates, multiples of M0):
// inner block z + (0, M0)^d, outer pads every face by M0^gamma, both mapped by
// the rotation taking e_1 to v_hat and intersected with Z^d.
struct BlockPair {
    Site z;  // anchor, components multiples of m0
    double m0 = 0;
    double gamma = 0;
    Rotation rotation;  // R with R e_1 = v_hat
    std::vector<Site> inner;
    std::vector<Site> outer;

    double pad() const { return std::pow(m0, gamma); }
    bool in_inner(const Site& y) const;
    bool in_outer(const Site& y) const;
    // positive face of the padded block: (R^-1 y - z) . e_1 >= m0 + m0^gamma
    bool positive_exit(const Site& y) const;
};

BlockPair make_block_pair(const Site& z, double m0, double gamma, const RVec& v_hat);

enum class ClassifyMethod { Exact, Mc };

struct BoxReport {
    Site anchor;
    double m0 = 0;
    double p_plus_min = 0;  // inf over inner sites of the positive-face exit probability
    Interval ci;            // MC only
    bool good = false;
    ClassifyMethod method = ClassifyMethod::Exact;
};

// Quenched classification of one block for a fixed realized omega: good iff
// from every inner site the probability of leaving the outer block through its
// positive face is >= 1/2. Exact absorbing solve when |outer| fits the budget;
// MC otherwise, classifying bad whenever the Wilson interval straddles 1/2.
BoxReport classify_block(const RealizedEnv& omega, const BlockPair& block, ClassifyMethod method,
                         std::int64_t samples_per_site, Rng& rng,
                         std::size_t exact_budget = 40'000, std::int64_t horizon = 1'000'000);

struct BadFractionRow {
    double m0 = 0;
    std::int64_t n_blocks = 0;
    std::int64_t n_bad = 0;
    double p_bad = 0;
    Interval ci;
};

// Fresh environment per block; decay of log P[bad] across the m0 grid.
std::vector<BadFractionRow> bad_fraction_scan(const EnvironmentSpec& spec,
                                              const std::vector<double>& m0_grid, double gamma,
                                              std::int64_t n_blocks, const RVec& v_hat,
                                              std::uint64_t master_seed, int workers = 1);

// Column/tube/top geometry: a tube is the bundle of columns at transverse
// offsets j_i * m0, j_i in [0, m1/m0], each column stacking J+1 blocks along
// e_1 with J minimal such that J m0 v_hat.(l/|l|_2) >= 3M.
struct TubeSpec {
    Site z;
    double m0 = 0, m1 = 0;
    double gamma = 0;
    int J = 0;
    RVec v_hat;
    std::vector<Site> column_anchors;  // transverse offsets applied to z
    std::vector<Site> top;             // union of positive faces of the terminal blocks
};

TubeSpec build_tube(const Site& z, double m0, double m1, double M, const RVec& v_hat, const Site& l,
                    double gamma);

// n(z, omega): minimum over the tube's columns of the per-column count of bad
// blocks, classified exactly.
int min_bad_count(const RealizedEnv& omega, const TubeSpec& tube, Rng& rng,
                  std::size_t exact_budget = 40'000);

struct AtypicalProbeResult {
    double fraction_atypical = 0;  // environments with quenched p <= exp(-c M^beta)
    std::vector<double> quenched_p;
    double threshold = 0;
    std::int64_t truncation_width = 0;  // transverse half-width finally used
};

// Quenched slab experiment: for each sampled omega solve the probability of
// exiting U_M = {|y . ell| < M} on the positive side, on a transversally
// truncated slab (escape mass through the truncation must stay below 1e-6,
// widening and retrying otherwise).
AtypicalProbeResult atypical_quenched_probe(const EnvironmentSpec& spec, const Site& l, double M,
                                            double beta, double c, std::int64_t n_env,
                                            std::uint64_t master_seed,
                                            std::size_t exact_budget = 200'000);

}  // namespace rwre
