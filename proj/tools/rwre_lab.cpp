#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwre/ballisticity.hpp"
#include "rwre/io.hpp"
#include "rwre/limits.hpp"
#include "rwre/parallel.hpp"
#include "rwre/regeneration.hpp"
#include "rwre/renormalization.hpp"
#include "rwre/walk.hpp"

namespace fs = std::filesystem;
using namespace rwre;

namespace {

struct Outputs {
    Json results;
    // csv name -> (header, rows); written only after the experiment succeeds
    std::vector<std::tuple<std::string, std::vector<std::string>, std::vector<std::vector<std::string>>>> csvs;
};

struct RunContext {
    EnvironmentSpec env;
    Json params;
    std::uint64_t seed = 0;
    int workers = 1;
};

Json rvec_json(const RVec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.d; ++i) a.push_back(v.c[i]);
    return a;
}

Site require_l(const RunContext& ctx, const char* name = "l") {
    if (!ctx.params.contains(name))
        throw std::runtime_error(std::string("parameters.") + name + ": required");
    return site_from_json(ctx.params[name], std::string("parameters.") + name);
}

// ---- experiments ------------------------------------------------------------

Outputs exp_simulate(const RunContext& ctx) {
    std::int64_t n = ctx.params.value("n", std::int64_t(100000));
    std::int64_t n_traj = ctx.params.value("n_traj", std::int64_t(1));
    if (n <= 0 || n_traj <= 0) throw std::runtime_error("parameters.n / parameters.n_traj: must be positive");
    const int d = ctx.env.d;
    Site origin(d);
    std::vector<Site> finals(static_cast<std::size_t>(n_traj), Site(d));
    CoupledTrajectory first_traj;
    for_each_task(n_traj, ctx.workers, [&](std::int64_t i) {
        Environment env(ctx.env.with_seed(hash_combine(ctx.seed, hash_combine(6, std::uint64_t(i)))));
        Rng rng(ctx.seed, hash_combine(7, std::uint64_t(i)));
        StopSpec stop;
        stop.horizon = n;
        if (i == 0) {
            auto [traj, out] = run_until(env, origin, stop, WalkMode::Quenched, rng);
            finals[0] = out.position;
            first_traj = std::move(traj);
        } else {
            Site last = origin;
            stream_walk(env, origin, stop, WalkMode::Quenched, rng,
                        [&](std::int64_t, const Site& x, Eps) { last = x; });
            finals[std::size_t(i)] = last;
        }
    });
    Outputs out;
    out.results["experiment"] = "simulate";
    out.results["n"] = n;
    out.results["n_traj"] = n_traj;
    RVec mean(d);
    for (const auto& x : finals) mean = mean + (1.0 / double(n)) * RVec::from(x);
    mean = (1.0 / double(n_traj)) * mean;
    out.results["v_hat"] = rvec_json(mean);

    std::vector<std::string> header{"step"};
    for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t s = 0; s < first_traj.positions.size(); ++s) {
        std::vector<std::string> row{std::to_string(s)};
        for (int i = 0; i < d; ++i) row.push_back(std::to_string(first_traj.positions[s].c[i]));
        rows.push_back(std::move(row));
    }
    out.csvs.emplace_back("trajectory.csv", header, rows);
    return out;
}

// coupled runs + detection for one L; per-task slots keep merges order-stable
std::vector<std::vector<RegenerationRecord>> regen_batch(const RunContext& ctx, const DetectParams& dp,
                                                         std::int64_t n_traj, std::int64_t max_steps,
                                                         std::uint64_t tag) {
    Site origin(ctx.env.d);
    std::vector<std::vector<RegenerationRecord>> slots(static_cast<std::size_t>(n_traj));
    for_each_task(n_traj, ctx.workers, [&](std::int64_t i) {
        std::uint64_t task = (tag << 40) + std::uint64_t(i);
        Environment env(ctx.env.with_seed(hash_combine(ctx.seed, hash_combine(10, task))));
        Rng rng(ctx.seed, hash_combine(11, task));
        auto [traj, recs] = run_and_detect(env, origin, dp, max_steps, rng);
        slots[std::size_t(i)] = std::move(recs);
    });
    return slots;
}

Outputs exp_regen(const RunContext& ctx) {
    Site l = require_l(ctx);
    double aspect = ctx.params.value("aspect", 3.0);
    double zeta = ctx.params.value("zeta", default_zeta(ctx.env.d, aspect));
    std::int64_t n_traj = ctx.params.value("n_traj", std::int64_t(200));
    std::int64_t max_steps = ctx.params.value("max_steps", std::int64_t(200000));
    double cert = ctx.params.value("cert_threshold", 0.0);
    double c_exp = ctx.params.value("c_exp", 0.5);
    std::vector<int> mults = ctx.params.value("L_multiples", std::vector<int>{1, 2, 3, 4});

    Outputs out;
    out.results["experiment"] = "regen";
    out.results["l"] = ctx.params["l"];
    out.results["zeta"] = zeta;
    Json per_l = Json::array();
    std::map<int, RegenStats> by_L;
    std::vector<std::vector<std::string>> csv_rows;
    for (std::size_t mi = 0; mi < mults.size(); ++mi) {
        int L = mults[mi] * int(l.l1());
        DetectParams dp{l, zeta, L, cert};
        auto slots = regen_batch(ctx, dp, n_traj, max_steps, mi);
        RegenStats stats;
        stats.l = l;
        stats.L = L;
        for (std::size_t t = 0; t < slots.size(); ++t) {
            stats.add_trajectory(slots[t]);
            for (const auto& r : slots[t]) {
                std::vector<std::string> row{std::to_string(L), std::to_string(t),
                                             std::to_string(r.k), std::to_string(r.tau)};
                for (int i = 0; i < ctx.env.d; ++i) row.push_back(std::to_string(r.position.c[i]));
                row.push_back(r.certified ? "1" : "0");
                csv_rows.push_back(std::move(row));
            }
        }
        Json entry;
        entry["L"] = L;
        entry["n_certified"] = stats.n_certified;
        entry["n_truncated"] = stats.n_truncated;
        entry["n_firsts"] = stats.firsts.size();
        if (stats.firsts.size() >= 2) {
            Rng boot(ctx.seed, hash_combine(12, std::uint64_t(L)));
            DirectionEstimate dir = estimate_direction(stats, boot);
            entry["v_hat_direction"] = rvec_json(dir.v_hat);
            entry["cone_halfangle"] = dir.cone_halfangle;
            entry["direction_reliable"] = dir.reliable;
            ExpMomentEstimate em = exp_moment_xtau(stats, c_exp, ctx.env.kappa);
            entry["exp_moment"] = em.value;
            entry["exp_moment_se"] = em.se;
            entry["heavy_tail_warning"] = em.heavy_tail_warning;
        }
        per_l.push_back(entry);
        by_L.emplace(L, std::move(stats));
    }
    out.results["per_L"] = per_l;
    bool any_velocity = false;
    for (const auto& [L, s] : by_L) any_velocity = any_velocity || s.firsts.size() >= 30;
    if (any_velocity) {
        VelocityTable vt = estimate_velocity(by_L);
        out.results["velocity"] = rvec_json(vt.v);
        Json tab = Json::array();
        for (const auto& [L, est] : vt.per_L) {
            Json e;
            e["L"] = L;
            e["v"] = rvec_json(est.v);
            e["ci_halfwidth"] = rvec_json(est.ci_halfwidth);
            e["n"] = est.n;
            tab.push_back(e);
        }
        out.results["velocity_per_L"] = tab;
    }
    std::vector<std::string> header{"L", "trajectory", "k", "tau"};
    for (int i = 0; i < ctx.env.d; ++i) header.push_back("x" + std::to_string(i));
    header.push_back("certified");
    out.csvs.emplace_back("regenerations.csv", header, csv_rows);
    return out;
}

Outputs exp_estimate_t(const RunContext& ctx) {
    TConditionParams p;
    p.l = require_l(ctx);
    p.aspect = ctx.params.value("aspect", 3.0);
    p.m_grid = ctx.params.value("m_grid", std::vector<double>{6, 10, 14});
    p.samples_per_m = ctx.params.value("samples_per_m", std::int64_t(10000));
    p.horizon = ctx.params.value("horizon", std::int64_t(1000000));
    p.master_seed = ctx.seed;
    p.workers = ctx.workers;
    TConditionReport rep = estimate_condition_T(ctx.env, p);
    Outputs out;
    out.results["experiment"] = "estimate-t";
    out.results["aspect"] = rep.aspect;
    out.results["m_grid"] = rep.m_grid;
    out.results["p_fail"] = rep.p_fail;
    out.results["slope"] = rep.fit.slope;
    out.results["slope_se"] = rep.fit.se_slope;
    out.results["verdict"] = rep.verdict == TVerdict::SupportsT  ? "supports-T"
                             : rep.verdict == TVerdict::RejectsT ? "rejects-T"
                                                                 : "inconclusive";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.m_grid.size(); ++i)
        rows.push_back({fmt_double(rep.m_grid[i]), fmt_double(rep.p_fail[i]),
                        fmt_double(rep.ci[i].lo), fmt_double(rep.ci[i].hi)});
    out.csvs.emplace_back("t_scan.csv", std::vector<std::string>{"M", "p_fail", "ci_lo", "ci_hi"}, rows);
    return out;
}

Outputs exp_kalikow(const RunContext& ctx) {
    int radius = ctx.params.value("box_radius", 2);
    std::size_t n_env = ctx.params.value("n_env", std::size_t(200));
    Site l = ctx.params.contains("l") ? require_l(ctx) : Site{1, 0};
    if (l.d != ctx.env.d) throw std::runtime_error("parameters.l: dimension mismatch");
    RVec ell = (1.0 / l.l2()) * RVec::from(l);
    const int d = ctx.env.d;
    Site origin(d);
    std::vector<std::vector<Site>> family;
    for (int r = 1; r <= radius; ++r) {
        Site lo(d), hi(d);
        for (int i = 0; i < d; ++i) {
            lo.c[i] = -r;
            hi.c[i] = r;
        }
        family.push_back(box_sites(lo, hi));
    }
    double delta = kalikow_delta(ctx.env, family, ell, n_env, ctx.seed);
    Outputs out;
    out.results["experiment"] = "kalikow";
    out.results["delta_probe"] = delta;
    out.results["family_note"] = "minimum over the configured box family only; an upper bound on the Kalikow infimum";
    const auto& v_set = family.back();
    bool exact_route = ctx.env.kind == EnvKind::Homogeneous ||
                       (ctx.env.kind == EnvKind::IidFiniteAlphabet &&
                        std::pow(double(ctx.env.alphabet.size()), double(v_set.size())) <= 1e6);
    if (exact_route) out.results["kalikow_proposition_tv"] = verify_kalikow_proposition(ctx.env, v_set, origin);

    KalikowKernel kernel;
    if (ctx.env.kind == EnvKind::Homogeneous) {
        Environment env(ctx.env);
        kernel = kalikow_kernel_exact(RealizedEnv::from(env, v_set), v_set, origin);
    } else if (exact_route) {
        kernel = kalikow_kernel_enumerated(ctx.env, v_set, origin);
    } else {
        kernel = kalikow_kernel_annealed(ctx.env, v_set, origin, n_env, ctx.seed);
    }
    out.results["kernel_exact"] = kernel.exact;
    std::vector<std::vector<std::string>> rows;
    for (const auto& x : kernel.v_set) {
        const TransitionVector& tv = kernel.p_hat.at(x);
        for (int j = 0; j < 2 * d; ++j) {
            std::vector<std::string> row;
            for (int i = 0; i < d; ++i) row.push_back(std::to_string(x.c[i]));
            row.push_back(std::to_string(j));
            row.push_back(fmt_double(tv.prob(j)));
            rows.push_back(std::move(row));
        }
    }
    std::vector<std::string> header;
    for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
    header.push_back("step_code");
    header.push_back("p_hat");
    out.csvs.emplace_back("kalikow_kernel.csv", header, rows);
    return out;
}

Outputs exp_renorm(const RunContext& ctx) {
    std::vector<double> m0_grid = ctx.params.value("m0_grid", std::vector<double>{8, 12, 16});
    double gamma = ctx.params.value("gamma", 0.7);
    std::int64_t n_blocks = ctx.params.value("n_blocks", std::int64_t(50));
    Site l = ctx.params.contains("l") ? require_l(ctx) : Site{1, 0};
    RVec v_hat = (1.0 / l.l2()) * RVec::from(l);
    auto rows_data = bad_fraction_scan(ctx.env, m0_grid, gamma, n_blocks, v_hat, ctx.seed, ctx.workers);
    Outputs out;
    out.results["experiment"] = "renorm";
    out.results["gamma"] = gamma;
    Json table = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rows_data) {
        Json e;
        e["m0"] = r.m0;
        e["n_blocks"] = r.n_blocks;
        e["n_bad"] = r.n_bad;
        e["p_bad"] = r.p_bad;
        table.push_back(e);
        rows.push_back({fmt_double(r.m0), std::to_string(r.n_bad), std::to_string(r.n_blocks),
                        fmt_double(r.p_bad), fmt_double(r.ci.lo), fmt_double(r.ci.hi)});
    }
    out.results["scan"] = table;
    out.csvs.emplace_back("bad_fraction.csv",
                          std::vector<std::string>{"m0", "n_bad", "n_blocks", "p_bad", "ci_lo", "ci_hi"},
                          rows);
    return out;
}

Outputs exp_clt(const RunContext& ctx) {
    std::vector<std::int64_t> n_grid = ctx.params.value("n_grid", std::vector<std::int64_t>{1000, 4000, 10000});
    std::int64_t n_traj = ctx.params.value("n_traj", std::int64_t(1000));
    Site l = ctx.params.contains("l") ? require_l(ctx) : Site{1, 0};
    RVec ell = (1.0 / l.l2()) * RVec::from(l);
    RVec v(ctx.env.d);
    if (ctx.params.contains("v")) {
        auto vv = ctx.params["v"].get<std::vector<double>>();
        if (int(vv.size()) != ctx.env.d) throw std::runtime_error("parameters.v: dimension mismatch");
        for (int i = 0; i < ctx.env.d; ++i) v.c[i] = vv[i];
    } else {
        LlnResult lln = lln_check(ctx.env, l, ctx.params.value("lln_n", std::int64_t(100000)),
                                  ctx.params.value("lln_traj", std::int64_t(30)), ctx.seed, ctx.workers);
        v = lln.v_hat;
    }
    CltReport rep = clt_scaling(ctx.env, v, ell, n_grid, n_traj, ctx.seed, ctx.workers);
    Outputs out;
    out.results["experiment"] = "clt";
    out.results["v_used"] = rvec_json(rep.v_used);
    Json rows_json = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : rep.rows) {
        for (const auto& p : row.projections) {
            Json e;
            e["n"] = row.n;
            e["axis"] = p.axis;
            e["var_per_step"] = p.var_per_step;
            e["ad_p"] = p.ad_p;
            rows_json.push_back(e);
            rows.push_back({std::to_string(row.n), std::to_string(p.axis),
                            fmt_double(p.var_per_step), fmt_double(p.ad_p)});
        }
    }
    out.results["projections"] = rows_json;
    out.csvs.emplace_back("clt.csv", std::vector<std::string>{"n", "projection", "var_per_step", "ad_p"},
                          rows);
    return out;
}

Outputs exp_mixing_oracle(const RunContext& ctx) {
    int len = ctx.params.value("strip_len", 6);
    if (len < 4) throw std::runtime_error("parameters.strip_len: need >= 4");
    const int d = ctx.env.d;
    int r = ctx.env.interaction ? ctx.env.interaction->range : 1;
    std::string flavor_s = ctx.params.value("flavor", std::string("SM"));
    MixingFlavor flavor = flavor_s == "SMG" ? MixingFlavor::SMG : MixingFlavor::SM;
    std::vector<Site> strip;
    for (int i = 0; i < len; ++i) {
        Site s(d);
        s.c[0] = i;
        strip.push_back(s);
    }
    // Delta sits 2r from A so the two share hidden dependency sites (farther
    // apart the conditional ratio is exactly 1); only A itself is conditioned.
    int delta_idx = ctx.params.value("delta_index", len - 1 - 2 * r);
    if (delta_idx < 0 || delta_idx >= len - 1)
        throw std::runtime_error("parameters.delta_index: outside the strip interior");
    std::vector<Site> delta{strip[std::size_t(delta_idx)]};
    std::vector<Site> v(strip.begin(), strip.end() - 1);
    std::vector<Site> a{strip.back()};
    std::map<Site, int> eta, etap;
    eta[a[0]] = 0;
    etap[a[0]] = int(ctx.env.alphabet.size()) - 1;
    MixingCertificate cert = exact_conditional_ratio(ctx.env, delta, v, a, eta, etap, flavor);
    Outputs out;
    out.results["experiment"] = "mixing-oracle";
    out.results["ratio"] = cert.ratio;
    out.results["bound"] = cert.bound;
    out.results["pass"] = cert.pass;
    out.results["states_enumerated"] = cert.states_enumerated;
    out.results["flavor"] = flavor_s;
    return out;
}

Outputs exp_tails(const RunContext& ctx) {
    Site l = require_l(ctx);
    int L = ctx.params.value("L", int(l.l1()));
    double zeta = ctx.params.value("zeta", default_zeta(ctx.env.d, 3.0));
    std::int64_t n_traj = ctx.params.value("n_traj", std::int64_t(2000));
    std::int64_t max_steps = ctx.params.value("max_steps", std::int64_t(100000));
    std::vector<double> alpha_grid = ctx.params.value("alpha_grid", std::vector<double>{1.0, 1.133});
    DetectParams dp{l, zeta, L, ctx.params.value("cert_threshold", 0.0)};
    auto slots = regen_batch(ctx, dp, n_traj, max_steps, 99);
    std::vector<std::int64_t> taus;
    for (const auto& recs : slots)
        for (const auto& rec : recs)
            if (rec.certified && rec.k == 1) taus.push_back(rec.tau);
    Outputs out;
    out.results["experiment"] = "tails";
    out.results["n_tau"] = taus.size();
    TailFitReport rep = tau_tail_fit(taus, alpha_grid);
    Json rows_json = Json::array();
    for (const auto& row : rep.rows) {
        Json e;
        e["alpha"] = row.alpha;
        e["slope"] = row.slope;
        e["decreasing"] = row.decreasing;
        rows_json.push_back(e);
    }
    out.results["fits"] = rows_json;
    out.results["u_grid"] = rep.u_grid;
    out.results["survival"] = rep.survival;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < rep.u_grid.size(); ++i)
        rows.push_back({fmt_double(rep.u_grid[i]), fmt_double(rep.survival[i])});
    out.csvs.emplace_back("tau_tail.csv", std::vector<std::string>{"u", "survival"}, rows);
    return out;
}

// ---- driver -----------------------------------------------------------------

RunContext make_context(const Json& cfg) {
    RunContext ctx;
    if (!cfg.contains("environment")) throw std::runtime_error("environment: required");
    ctx.env = environment_from_json(cfg["environment"]);
    ctx.params = cfg.value("parameters", Json::object());
    ctx.seed = cfg.value("seed", std::uint64_t(0));
    ctx.workers = cfg.value("workers", 1);
    if (ctx.workers < 1) throw std::runtime_error("workers: must be >= 1");
    return ctx;
}

Outputs dispatch(const std::string& experiment, const RunContext& ctx) {
    if (experiment == "simulate") return exp_simulate(ctx);
    if (experiment == "regen") return exp_regen(ctx);
    if (experiment == "estimate-t") return exp_estimate_t(ctx);
    if (experiment == "kalikow") return exp_kalikow(ctx);
    if (experiment == "renorm") return exp_renorm(ctx);
    if (experiment == "clt") return exp_clt(ctx);
    if (experiment == "mixing-oracle") return exp_mixing_oracle(ctx);
    if (experiment == "tails") return exp_tails(ctx);
    throw std::runtime_error("experiment: unknown kind '" + experiment + "'");
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides, bool dry_run) {
    Json cfg = load_config(config_path, overrides);
    std::string experiment = cfg.value("experiment", std::string{});
    RunContext ctx = make_context(cfg);
    if (dry_run) {
        // validation only: context construction already checked every field
        std::cout << "config ok (hash " << config_hash(cfg) << ")\n";
        return 0;
    }
    fs::path out_dir = cfg.value("output", std::string("out"));
    auto t0 = std::chrono::steady_clock::now();
    Outputs out = dispatch(experiment, ctx);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fs::create_directories(out_dir);
    out.results["config_hash"] = config_hash(cfg);
    {
        std::ofstream f(out_dir / "results.json");
        f << out.results.dump(2) << "\n";
    }
    for (const auto& [name, header, rows] : out.csvs) write_csv(out_dir / name, header, rows);
    write_manifest(out_dir, cfg, wall);
    std::cout << "wrote " << (out_dir / "results.json").string() << "\n";
    return 0;
}

int cmd_plot_data(const std::string& results_path, const std::string& kind, const std::string& out_dir_s) {
    std::ifstream in(results_path);
    if (!in) throw std::runtime_error("cannot read " + results_path);
    Json res = Json::parse(in);
    fs::path out_dir = out_dir_s.empty() ? fs::path(results_path).parent_path() : fs::path(out_dir_s);
    fs::create_directories(out_dir.empty() ? "." : out_dir);
    if (kind == "t-scan") {
        std::vector<std::vector<std::string>> rows;
        auto m = res.at("m_grid").get<std::vector<double>>();
        auto p = res.at("p_fail").get<std::vector<double>>();
        for (std::size_t i = 0; i < m.size(); ++i) rows.push_back({fmt_double(m[i]), fmt_double(p[i])});
        write_csv(out_dir / "plot_t_scan.csv", {"M", "p_fail"}, rows);
    } else if (kind == "tails") {
        std::vector<std::vector<std::string>> rows;
        auto u = res.at("u_grid").get<std::vector<double>>();
        auto s = res.at("survival").get<std::vector<double>>();
        for (std::size_t i = 0; i < u.size(); ++i) rows.push_back({fmt_double(u[i]), fmt_double(s[i])});
        write_csv(out_dir / "plot_tails.csv", {"u", "survival"}, rows);
    } else if (kind == "clt") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : res.at("projections"))
            rows.push_back({std::to_string(e.at("n").get<std::int64_t>()),
                            std::to_string(e.at("axis").get<int>()),
                            fmt_double(e.at("var_per_step").get<double>()),
                            fmt_double(e.at("ad_p").get<double>())});
        write_csv(out_dir / "plot_clt.csv", {"n", "projection", "statistic", "p"}, rows);
    } else {
        throw std::runtime_error("plot-data: unknown kind '" + kind + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rwre-lab: random walks in random environments, desk scale"};
    app.require_subcommand(1);

    std::string config_path, results_path, kind, plot_out;
    std::vector<std::string> overrides;

    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "JSON config path")->required();
    run->add_option("overrides", overrides, "key.path=value overrides");

    auto* validate = app.add_subcommand("validate", "validate a config without running");
    validate->add_option("config", config_path, "JSON config path")->required();
    validate->add_option("overrides", overrides, "key.path=value overrides");

    auto* plot = app.add_subcommand("plot-data", "emit tidy CSVs from a results file");
    plot->add_option("results", results_path, "results.json path")->required();
    plot->add_option("--kind", kind, "t-scan | tails | clt")->required();
    plot->add_option("--out", plot_out, "output directory (default: next to results)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return cmd_run(config_path, overrides, false);
        if (validate->parsed()) return cmd_run(config_path, overrides, true);
        return cmd_plot_data(results_path, kind, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
