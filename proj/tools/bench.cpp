// Serial-vs-parallel throughput comparison for the trajectory batch kernel,
// with a bitwise check that the worker count never changes the results.
#include <chrono>
#include <cstdio>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/parallel.hpp"
#include "rwre/walk.hpp"

using namespace rwre;

namespace {

std::vector<Site> run_batch(const EnvironmentSpec& spec, std::int64_t n_traj, std::int64_t horizon,
                            int workers, double& seconds) {
    Site origin(spec.d);
    std::vector<Site> finals(static_cast<std::size_t>(n_traj), Site(spec.d));
    auto t0 = std::chrono::steady_clock::now();
    for_each_task(n_traj, workers, [&](std::int64_t i) {
        Environment env(spec.with_seed(hash_combine(1, std::uint64_t(i))));
        Rng rng(42, std::uint64_t(i));
        StopSpec stop;
        stop.horizon = horizon;
        Site last = origin;
        stream_walk(env, origin, stop, WalkMode::Quenched, rng,
                    [&](std::int64_t, const Site& x, Eps) { last = x; });
        finals[std::size_t(i)] = last;
    });
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finals;
}

}  // namespace

int main() {
    EnvironmentSpec spec = EnvironmentSpec::iid_finite(
        2, 0.05,
        {TransitionVector::from({0.4, 0.1, 0.25, 0.25}), TransitionVector::from({0.35, 0.15, 0.25, 0.25})},
        {0.5, 0.5}, 7);
    const std::int64_t n_traj = 256, horizon = 100000;
    double t_serial = 0, t_parallel = 0;
    auto serial = run_batch(spec, n_traj, horizon, 1, t_serial);
    int workers = hardware_workers();
    auto parallel = run_batch(spec, n_traj, horizon, workers, t_parallel);
    bool identical = serial == parallel;
    std::printf("trajectories:   %lld x %lld steps\n", (long long)n_traj, (long long)horizon);
    std::printf("serial:         %.3f s (%.1f Msteps/s)\n", t_serial,
                double(n_traj * horizon) / t_serial / 1e6);
    std::printf("parallel (%2d):  %.3f s (%.1f Msteps/s, speedup %.2fx)\n", workers, t_parallel,
                double(n_traj * horizon) / t_parallel / 1e6, t_serial / t_parallel);
    std::printf("results identical across worker counts: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
