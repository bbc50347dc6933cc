#include "rwre/environment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rwre {

void TransitionVector::validate(double kappa) const {
    if (d < 2 || d > kMaxDim) throw std::invalid_argument("TransitionVector: bad dimension");
    if (std::fabs(sum() - 1.0) > 1e-12) throw std::invalid_argument("TransitionVector: sum != 1");
    if (min_entry() < 2.0 * kappa - 1e-15)
        throw std::invalid_argument("TransitionVector: ellipticity violated (entry < 2 kappa)");
}

TransitionVector TransitionVector::from(std::initializer_list<double> probs) {
    return from(std::vector<double>(probs));
}

TransitionVector TransitionVector::from(const std::vector<double>& probs) {
    if (probs.size() % 2 != 0 || probs.size() < 4 || probs.size() > 2 * kMaxDim)
        throw std::invalid_argument("TransitionVector: need 2d entries, d in [2,kMaxDim]");
    TransitionVector v;
    v.d = std::int32_t(probs.size() / 2);
    for (std::size_t j = 0; j < probs.size(); ++j) v.p[j] = probs[j];
    return v;
}

TransitionVector TransitionVector::symmetric(int d) {
    TransitionVector v;
    v.d = d;
    for (int j = 0; j < 2 * d; ++j) v.p[std::size_t(j)] = 1.0 / (2.0 * d);
    return v;
}

void EnvironmentSpec::validate() const {
    if (d < 2 || d > kMaxDim) throw std::invalid_argument("EnvironmentSpec: bad dimension");
    if (!(kappa > 0.0 && kappa <= 1.0 / (4.0 * d)))
        throw std::invalid_argument("EnvironmentSpec: kappa must lie in (0, 1/(4d)]");
    switch (kind) {
        case EnvKind::Homogeneous:
            if (alphabet.size() != 1)
                throw std::invalid_argument("EnvironmentSpec: homogeneous needs one vector");
            break;
        case EnvKind::IidContinuous:
            if (dirichlet_alpha <= 0)
                throw std::invalid_argument("EnvironmentSpec: dirichlet_alpha <= 0");
            break;
        case EnvKind::IidFiniteAlphabet:
        case EnvKind::MarkovFiniteAlphabet:
            if (alphabet.empty()) throw std::invalid_argument("EnvironmentSpec: empty alphabet");
            break;
    }
    for (const auto& v : alphabet) {
        if (v.d != d) throw std::invalid_argument("EnvironmentSpec: alphabet dimension mismatch");
        v.validate(kappa);
    }
    if (!weights.empty()) {
        if (weights.size() != alphabet.size())
            throw std::invalid_argument("EnvironmentSpec: weights/alphabet size mismatch");
        double s = 0;
        for (double w : weights) {
            if (w < 0) throw std::invalid_argument("EnvironmentSpec: negative weight");
            s += w;
        }
        if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("EnvironmentSpec: weights sum != 1");
    }
    if (kind == EnvKind::MarkovFiniteAlphabet) {
        if (!interaction) throw std::invalid_argument("EnvironmentSpec: markov kind needs interaction");
        if (interaction->range < 1) throw std::invalid_argument("EnvironmentSpec: range < 1");
        if (interaction->g <= 0) throw std::invalid_argument("EnvironmentSpec: g <= 0");
        if (interaction->C < 0) throw std::invalid_argument("EnvironmentSpec: C < 0");
    }
}

EnvironmentSpec EnvironmentSpec::homogeneous(int d, TransitionVector v, double kappa,
                                             std::uint64_t seed) {
    EnvironmentSpec s;
    s.kind = EnvKind::Homogeneous;
    s.d = d;
    s.kappa = kappa;
    s.alphabet = {v};
    s.seed = seed;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::iid_continuous(int d, double kappa, double dirichlet_alpha,
                                                std::uint64_t seed) {
    EnvironmentSpec s;
    s.kind = EnvKind::IidContinuous;
    s.d = d;
    s.kappa = kappa;
    s.dirichlet_alpha = dirichlet_alpha;
    s.seed = seed;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::iid_finite(int d, double kappa,
                                            std::vector<TransitionVector> alphabet,
                                            std::vector<double> weights, std::uint64_t seed) {
    EnvironmentSpec s;
    s.kind = EnvKind::IidFiniteAlphabet;
    s.d = d;
    s.kappa = kappa;
    s.alphabet = std::move(alphabet);
    s.weights = std::move(weights);
    s.seed = seed;
    s.validate();
    return s;
}

EnvironmentSpec EnvironmentSpec::markov_finite(int d, double kappa,
                                               std::vector<TransitionVector> alphabet,
                                               std::vector<double> weights, Interaction inter,
                                               std::uint64_t seed) {
    EnvironmentSpec s;
    s.kind = EnvKind::MarkovFiniteAlphabet;
    s.d = d;
    s.kappa = kappa;
    s.alphabet = std::move(alphabet);
    s.weights = std::move(weights);
    s.interaction = inter;
    s.seed = seed;
    s.validate();
    return s;
}

Environment::Environment(EnvironmentSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.kind == EnvKind::Homogeneous) homogeneous_value_ = spec_.alphabet[0];
}

const TransitionVector& Environment::transition_at(const Site& x) const {
    if (spec_.kind == EnvKind::Homogeneous) return homogeneous_value_;
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(x, compute(x)).first->second;
}

int Environment::hidden_label(const Site& x) const {
    if (spec_.kind != EnvKind::MarkovFiniteAlphabet)
        throw std::logic_error("hidden_label: markov kind only");
    std::uint64_t m = spec_.alphabet.size();
    return int(site_key(spec_.seed, x, /*tag=*/2) % m);
}

namespace {

// weight of alphabet element a under the (possibly uniform) site marginal
double marginal_weight(const EnvironmentSpec& spec, std::size_t a) {
    return spec.weights.empty() ? 1.0 / double(spec.alphabet.size()) : spec.weights[a];
}

// Local conditional kernel of the markov kind: probability of alphabet label a
// at x given the hidden reference labels rho on the ell_1 ball of radius r.
// log-ratio w.r.t. one label flip at distance k is bounded by J e^{-g k}.
std::vector<double> markov_kernel(const EnvironmentSpec& spec, const Site& x,
                                  const std::function<int(const Site&)>& rho) {
    const Interaction& in = *spec.interaction;
    std::size_t m = spec.alphabet.size();
    std::vector<double> logw(m);
    for (std::size_t a = 0; a < m; ++a) logw[a] = std::log(marginal_weight(spec, a));
    // enumerate ball 0 < |y - x|_1 <= r
    int r = in.range;
    Site off(x.d);
    std::function<void(int, int)> rec = [&](int axis, int budget_left) {
        if (axis == x.d) {
            if (off.is_zero()) return;
            std::int64_t dist = off.l1();
            int lab = rho(x + off);
            logw[std::size_t(lab)] += in.coupling * std::exp(-in.g * double(dist));
            return;
        }
        for (int v = -budget_left; v <= budget_left; ++v) {
            off.c[axis] = v;
            rec(axis + 1, budget_left - std::abs(v));
        }
        off.c[axis] = 0;
    };
    rec(0, r);
    double mx = *std::max_element(logw.begin(), logw.end());
    double z = 0;
    std::vector<double> w(m);
    for (std::size_t a = 0; a < m; ++a) {
        w[a] = std::exp(logw[a] - mx);
        z += w[a];
    }
    for (auto& v : w) v /= z;
    return w;
}

std::size_t pick_weighted(const std::vector<double>& w, double u) {
    double acc = 0;
    for (std::size_t a = 0; a + 1 < w.size(); ++a) {
        acc += w[a];
        if (u < acc) return a;
    }
    return w.size() - 1;
}

}  // namespace

TransitionVector Environment::compute(const Site& x) const {
    switch (spec_.kind) {
        case EnvKind::Homogeneous:
            return homogeneous_value_;
        case EnvKind::IidFiniteAlphabet: {
            Rng r(site_key(spec_.seed, x, 1), 0);
            std::vector<double> w(spec_.alphabet.size());
            for (std::size_t a = 0; a < w.size(); ++a) w[a] = marginal_weight(spec_, a);
            return spec_.alphabet[pick_weighted(w, r.uniform())];
        }
        case EnvKind::IidContinuous: {
            // symmetric Dirichlet sample mapped affinely into P_kappa:
            // z = 2 kappa 1 + (1 - 4 d kappa) w, w on the plain simplex
            Rng r(site_key(spec_.seed, x, 1), 0);
            int n = 2 * spec_.d;
            std::vector<double> g(static_cast<std::size_t>(n));
            double s = 0;
            for (auto& v : g) {
                v = r.gamma(spec_.dirichlet_alpha);
                s += v;
            }
            TransitionVector tv;
            tv.d = spec_.d;
            double slack = 1.0 - 4.0 * spec_.d * spec_.kappa;
            for (int j = 0; j < n; ++j)
                tv.p[std::size_t(j)] = 2.0 * spec_.kappa + slack * g[std::size_t(j)] / s;
            return tv;
        }
        case EnvKind::MarkovFiniteAlphabet: {
            auto w = markov_kernel(spec_, x, [this](const Site& y) { return hidden_label(y); });
            Rng r(site_key(spec_.seed, x, 1), 0);
            return spec_.alphabet[pick_weighted(w, r.uniform())];
        }
    }
    throw std::logic_error("Environment::compute: unreachable");
}

const TransitionVector& RealizedEnv::at(const Site& x) const {
    auto it = table.find(x);
    if (it == table.end())
        throw std::out_of_range("RealizedEnv: site not realized " + x.str());
    return it->second;
}

RealizedEnv RealizedEnv::from(const Environment& env, const std::vector<Site>& sites) {
    RealizedEnv re;
    re.d = env.dim();
    re.kappa = env.kappa();
    for (const auto& x : sites) re.table.emplace(x, env.transition_at(x));
    return re;
}

bool check_condition_R(const EnvironmentSpec& spec) {
    if (!spec.interaction) throw std::invalid_argument("check_condition_R: no interaction parameters");
    return spec.interaction->g > 18.0 * std::log(1.0 / spec.kappa);
}

namespace {

std::vector<Site> r_boundary(const std::vector<Site>& s, int r, int d) {
    std::set<Site> in(s.begin(), s.end()), out;
    for (const auto& x : s) {
        Site off(d);
        std::function<void(int, int)> rec = [&](int axis, int left) {
            if (axis == d) {
                Site y = x + off;
                if (!in.count(y)) out.insert(y);
                return;
            }
            for (int v = -left; v <= left; ++v) {
                off.c[axis] = v;
                rec(axis + 1, left - std::abs(v));
            }
            off.c[axis] = 0;
        };
        rec(0, r);
    }
    return {out.begin(), out.end()};
}

double decay_sum(const std::vector<Site>& xs, const std::vector<Site>& ys, double g) {
    double s = 0;
    for (const auto& x : xs)
        for (const auto& y : ys) s += std::exp(-g * double(l1_dist(x, y)));
    return s;
}

}  // namespace

MixingCertificate exact_conditional_ratio(const EnvironmentSpec& spec,
                                          const std::vector<Site>& delta,
                                          const std::vector<Site>& v, const std::vector<Site>& a,
                                          const std::map<Site, int>& eta,
                                          const std::map<Site, int>& eta_prime,
                                          MixingFlavor flavor, std::size_t budget) {
    spec.validate();
    if (spec.kind == EnvKind::IidContinuous)
        throw std::invalid_argument("exact_conditional_ratio: continuous alphabet unsupported");
    if (delta.empty()) throw std::invalid_argument("exact_conditional_ratio: empty delta");

    std::set<Site> vset(v.begin(), v.end());
    for (const auto& x : delta)
        if (!vset.count(x)) throw std::invalid_argument("exact_conditional_ratio: delta not in V");
    int r = spec.interaction ? spec.interaction->range : 1;
    // d_1(Delta, V^c) >= r: every site within distance r-1 of Delta lies in V
    if (r > 1)
        for (const auto& x : r_boundary(delta, r - 1, spec.d))
            if (!vset.count(x))
                throw std::invalid_argument("exact_conditional_ratio: d1(Delta, V^c) < r");
    if (eta.size() != eta_prime.size())
        throw std::invalid_argument("exact_conditional_ratio: eta/eta' key mismatch");
    std::set<Site> aset(a.begin(), a.end());
    for (const auto& [x, val] : eta) {
        auto it = eta_prime.find(x);
        if (it == eta_prime.end())
            throw std::invalid_argument("exact_conditional_ratio: eta/eta' key mismatch");
        if (vset.count(x))
            throw std::invalid_argument("exact_conditional_ratio: conditioning site inside V");
        if (val != it->second && !aset.count(x))
            throw std::invalid_argument("exact_conditional_ratio: eta, eta' disagree off A");
    }
    for (const auto& x : a)
        if (!eta.count(x))
            throw std::invalid_argument("exact_conditional_ratio: A site missing from eta");

    MixingCertificate cert;
    cert.delta_set = delta;
    cert.v_set = v;
    cert.a_set = a;

    double g = spec.interaction ? spec.interaction->g : 0.0;
    double C = spec.interaction ? spec.interaction->C : 0.0;
    if (spec.interaction) {
        if (flavor == MixingFlavor::SM) {
            auto bd = r_boundary(delta, r, spec.d);
            auto ba = r_boundary(a, r, spec.d);
            cert.bound = std::exp(C * decay_sum(bd, ba, g));
        } else {
            cert.bound = std::exp(C * decay_sum(delta, a, g));
        }
    }

    if (spec.kind == EnvKind::IidFiniteAlphabet || spec.kind == EnvKind::Homogeneous) {
        // product measure: the conditional law of sigma_Delta is the product
        // marginal whatever the conditioning, so the ratio is 1 exactly
        cert.ratio = 1.0;
        cert.states_enumerated = 0;
        cert.pass = cert.ratio <= cert.bound * (1.0 + 1e-12);
        return cert;
    }

    // markov kind: enumerate the hidden label field on the dependency window
    std::size_t m = spec.alphabet.size();
    std::set<Site> wset;
    {
        std::vector<Site> cond_sites;
        for (const auto& [x, val] : eta) cond_sites.push_back(x);
        std::vector<Site> core = delta;
        core.insert(core.end(), cond_sites.begin(), cond_sites.end());
        for (const auto& x : core) wset.insert(x);
        for (const auto& x : r_boundary(core, r, spec.d)) wset.insert(x);
    }
    std::vector<Site> window(wset.begin(), wset.end());
    double states = std::pow(double(m), double(window.size())) * std::pow(double(m), double(delta.size()));
    if (states > double(budget))
        throw std::runtime_error("exact_conditional_ratio: enumeration budget exceeded");

    std::size_t n_rho = 1;
    for (std::size_t i = 0; i < window.size(); ++i) n_rho *= m;
    std::size_t n_atoms = 1;
    for (std::size_t i = 0; i < delta.size(); ++i) n_atoms *= m;

    std::map<Site, int> rho_assign;
    auto rho_fn = [&](const Site& y) -> int {
        auto it = rho_assign.find(y);
        if (it == rho_assign.end())
            throw std::logic_error("exact_conditional_ratio: window too small");
        return it->second;
    };

    // joint[a] accumulates P(sigma_Delta = atom a, sigma_S = eta)
    std::vector<double> joint_eta(n_atoms, 0.0), joint_etap(n_atoms, 0.0);
    std::vector<std::size_t> rho_digits(window.size(), 0);
    double rho_prob = std::pow(1.0 / double(m), double(window.size()));
    for (std::size_t ri = 0; ri < n_rho; ++ri) {
        {
            std::size_t t = ri;
            for (std::size_t i = 0; i < window.size(); ++i) {
                rho_digits[i] = t % m;
                t /= m;
            }
        }
        rho_assign.clear();
        for (std::size_t i = 0; i < window.size(); ++i) rho_assign[window[i]] = int(rho_digits[i]);

        double cond_eta = 1.0, cond_etap = 1.0;
        for (const auto& [x, val] : eta) {
            auto w = markov_kernel(spec, x, rho_fn);
            cond_eta *= w[std::size_t(val)];
            cond_etap *= w[std::size_t(eta_prime.at(x))];
        }
        std::vector<std::vector<double>> dk;
        dk.reserve(delta.size());
        for (const auto& x : delta) dk.push_back(markov_kernel(spec, x, rho_fn));
        for (std::size_t ai = 0; ai < n_atoms; ++ai) {
            double pa = 1.0;
            std::size_t t = ai;
            for (std::size_t i = 0; i < delta.size(); ++i) {
                pa *= dk[i][t % m];
                t /= m;
            }
            joint_eta[ai] += rho_prob * pa * cond_eta;
            joint_etap[ai] += rho_prob * pa * cond_etap;
        }
    }
    double z_eta = std::accumulate(joint_eta.begin(), joint_eta.end(), 0.0);
    double z_etap = std::accumulate(joint_etap.begin(), joint_etap.end(), 0.0);
    if (z_eta <= 0 || z_etap <= 0)
        throw std::runtime_error("exact_conditional_ratio: conditioning event has probability 0");
    double ratio = 0;
    for (std::size_t ai = 0; ai < n_atoms; ++ai) {
        double pe = joint_eta[ai] / z_eta, pp = joint_etap[ai] / z_etap;
        if (pp > 0) ratio = std::max(ratio, pe / pp);
    }
    cert.ratio = ratio;
    cert.states_enumerated = n_rho * n_atoms;
    cert.pass = cert.ratio <= cert.bound * (1.0 + 1e-12);
    return cert;
}

}  // namespace rwre
