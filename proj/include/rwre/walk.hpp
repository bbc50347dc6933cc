#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/lattice.hpp"
#include "rwre/rng.hpp"

namespace rwre {

// Epsilon symbol of the auxiliary space: a forced step code in [0, 2d), or
// kEpsLazy for the symbol 0 (step drawn from the residual kernel).
using Eps = std::int8_t;
inline constexpr Eps kEpsLazy = -1;

// Q[eps = +-e_i] = kappa, Q[eps = 0] = 1 - 2 d kappa.
inline Eps sample_epsilon(double kappa, int d, Rng& rng) {
    double u = rng.uniform();
    double forced_mass = 2.0 * d * kappa;
    if (u < forced_mass) return Eps(u / kappa);  // in [0, 2d)
    return kEpsLazy;
}

// Coupled step: forced symbols move deterministically; the lazy symbol draws
// e with probability (omega(x,e) - kappa) / (1 - 2 d kappa).
inline Site step_coupled(const Environment& env, const Site& x, Eps eps, Rng& rng) {
    int d = env.dim();
    if (eps >= 0) return x + unit_step(eps, d);
    const TransitionVector& tv = env.transition_at(x);
    double kappa = env.kappa();
    double scale = 1.0 - 2.0 * d * kappa;
    double u = rng.uniform() * scale;
    double acc = 0;
    for (int j = 0; j < 2 * d; ++j) {
        double res = tv.prob(j) - kappa;
        if (res < 0) throw std::runtime_error("step_coupled: ellipticity violation (omega < kappa)");
        acc += res;
        if (u < acc) return x + unit_step(j, d);
    }
    return x + unit_step(2 * d - 1, d);
}

inline Site step_quenched(const Environment& env, const Site& x, Rng& rng) {
    int d = env.dim();
    const TransitionVector& tv = env.transition_at(x);
    double u = rng.uniform();
    double acc = 0;
    for (int j = 0; j < 2 * d; ++j) {
        acc += tv.prob(j);
        if (u < acc) return x + unit_step(j, d);
    }
    return x + unit_step(2 * d - 1, d);
}

struct CoupledTrajectory {
    std::vector<Site> positions;  // X_0, X_1, ...
    std::vector<Eps> epsilons;    // epsilons[i] drives positions[i] -> positions[i+1]
    std::uint64_t walk_seed = 0;
};

struct StopBoxExit {
    BoxSpec box;
};
struct StopLevelHit {
    Site u;              // integer direction vector (avoids floating ties)
    std::int64_t level;  // trigger X.u >= level (positive side) or X.u <= level
    bool positive_side = true;
};
struct StopConeExit {
    ConeSpec cone;  // trigger X leaving the cone
};
using StopTrigger = std::variant<StopBoxExit, StopLevelHit, StopConeExit>;

// Composable first-of stop rule; the finite horizon is mandatory.
struct StopSpec {
    std::vector<StopTrigger> triggers;
    std::int64_t horizon = 0;
};

enum class StopKind { Horizon, BoxExit, LevelHit, ConeExit };

struct StopOutcome {
    StopKind kind = StopKind::Horizon;
    std::size_t trigger_index = 0;  // into StopSpec::triggers, when kind != Horizon
    std::int64_t time = 0;          // hitting index
    Site position;
};

enum class WalkMode { Quenched, Coupled };

namespace detail {
inline bool triggered(const StopTrigger& t, const Site& x, StopKind& kind_out) {
    if (const auto* b = std::get_if<StopBoxExit>(&t)) {
        kind_out = StopKind::BoxExit;
        return !b->box.contains(x);
    }
    if (const auto* lh = std::get_if<StopLevelHit>(&t)) {
        kind_out = StopKind::LevelHit;
        std::int64_t v = dot(x, lh->u);
        return lh->positive_side ? v >= lh->level : v <= lh->level;
    }
    const auto& c = std::get<StopConeExit>(t);
    kind_out = StopKind::ConeExit;
    return !c.cone.contains(x);
}
}  // namespace detail

// Core walk loop. visitor(n, x, eps_of_last_step) is called for every state
// including the initial one (with eps = kEpsLazy at n = 0).
template <class Visitor>
StopOutcome stream_walk(const Environment& env, const Site& start, const StopSpec& stop,
                        WalkMode mode, Rng& rng, Visitor&& visitor) {
    if (stop.horizon < 0) throw std::invalid_argument("stream_walk: negative horizon");
    const double kappa = env.kappa();
    const int d = env.dim();
    Site x = start;
    for (std::int64_t n = 0;; ++n) {
        if (n == 0) visitor(n, x, kEpsLazy);
        StopKind kind;
        for (std::size_t i = 0; i < stop.triggers.size(); ++i) {
            if (detail::triggered(stop.triggers[i], x, kind)) return {kind, i, n, x};
        }
        if (n >= stop.horizon) return {StopKind::Horizon, 0, n, x};
        // periodic spot-check of the coupling marginal identity
        if (mode == WalkMode::Coupled && (n & 0xffff) == 0) {
            const TransitionVector& tv = env.transition_at(x);
            for (int j = 0; j < 2 * d; ++j) {
                double recon = kappa + (1.0 - 2.0 * d * kappa) * (tv.prob(j) - kappa) / (1.0 - 2.0 * d * kappa);
                if (std::fabs(recon - tv.prob(j)) > 1e-12)
                    throw std::runtime_error("stream_walk: coupling identity violated");
            }
        }
        Eps eps = kEpsLazy;
        if (mode == WalkMode::Coupled) {
            eps = sample_epsilon(kappa, d, rng);
            x = step_coupled(env, x, eps, rng);
        } else {
            x = step_quenched(env, x, rng);
        }
        visitor(n + 1, x, eps);
    }
}

// Records the full path up to the first triggered stop.
inline std::pair<CoupledTrajectory, StopOutcome> run_until(const Environment& env, const Site& start,
                                                           const StopSpec& stop, WalkMode mode,
                                                           Rng& rng) {
    CoupledTrajectory traj;
    traj.positions.reserve(std::size_t(std::min<std::int64_t>(stop.horizon + 1, 1 << 20)));
    StopOutcome out = stream_walk(env, start, stop, mode, rng,
                                  [&](std::int64_t n, const Site& x, Eps eps) {
                                      if (n > 0) traj.epsilons.push_back(eps);
                                      traj.positions.push_back(x);
                                  });
    // drop the overshoot past the stopping index (the visitor saw every state)
    traj.positions.resize(std::size_t(out.time) + 1);
    traj.epsilons.resize(std::size_t(out.time));
    return {std::move(traj), out};
}

}  // namespace rwre
