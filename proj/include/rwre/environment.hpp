#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rwre/rng.hpp"
#include "rwre/vec.hpp"

namespace rwre {

// Nearest-neighbour jump probabilities at one site, indexed by step code
// (see unit_step). Ellipticity: every entry >= 2*kappa, sum = 1.
struct TransitionVector {
    std::array<double, 2 * kMaxDim> p{};
    std::int32_t d = 0;

    double prob(int code) const { return p[std::size_t(code)]; }
    double sum() const {
        double s = 0;
        for (int j = 0; j < 2 * d; ++j) s += p[std::size_t(j)];
        return s;
    }
    double min_entry() const {
        double m = p[0];
        for (int j = 1; j < 2 * d; ++j) m = std::min(m, p[std::size_t(j)]);
        return m;
    }
    RVec drift() const {
        RVec v(d);
        for (int j = 0; j < 2 * d; ++j) {
            int axis = j / 2;
            v.c[axis] += (j % 2 == 0 ? 1.0 : -1.0) * p[std::size_t(j)];
        }
        return v;
    }
    void validate(double kappa) const;

    static TransitionVector from(std::initializer_list<double> probs);
    static TransitionVector from(const std::vector<double>& probs);
    static TransitionVector symmetric(int d);
};

enum class EnvKind { Homogeneous, IidContinuous, IidFiniteAlphabet, MarkovFiniteAlphabet };

struct Interaction {
    int range = 1;       // r
    double C = 1.0;      // mixing constant in the (SM)/(SMG) bound
    double g = 1.0;      // interaction decay rate
    double coupling = 1.0;  // strength J of the local kernel
};

struct EnvironmentSpec {
    EnvKind kind = EnvKind::Homogeneous;
    int d = 2;
    double kappa = 0.05;
    std::vector<TransitionVector> alphabet;  // finite-alphabet kinds; [0] for homogeneous
    std::vector<double> weights;             // site marginal over the alphabet (empty = uniform)
    double dirichlet_alpha = 1.0;            // iid-continuous marginal
    std::optional<Interaction> interaction;  // markov kind
    std::uint64_t seed = 0;

    void validate() const;
    EnvironmentSpec with_seed(std::uint64_t s) const {
        EnvironmentSpec r = *this;
        r.seed = s;
        return r;
    }

    static EnvironmentSpec homogeneous(int d, TransitionVector v, double kappa,
                                       std::uint64_t seed = 0);
    static EnvironmentSpec iid_continuous(int d, double kappa, double dirichlet_alpha,
                                          std::uint64_t seed);
    static EnvironmentSpec iid_finite(int d, double kappa, std::vector<TransitionVector> alphabet,
                                      std::vector<double> weights, std::uint64_t seed);
    static EnvironmentSpec markov_finite(int d, double kappa, std::vector<TransitionVector> alphabet,
                                         std::vector<double> weights, Interaction inter,
                                         std::uint64_t seed);
};

// Lazily materialized field omega. transition_at(x) is a pure function of
// (spec.seed, x): query order and window growth never change a value.
// Not thread-safe (the cache); concurrent code gives each worker its own copy.
class Environment {
  public:
    explicit Environment(EnvironmentSpec spec);

    const EnvironmentSpec& spec() const { return spec_; }
    int dim() const { return spec_.d; }
    double kappa() const { return spec_.kappa; }

    const TransitionVector& transition_at(const Site& x) const;

    // markov kind only: the hidden i.i.d. label field driving the local kernel
    int hidden_label(const Site& x) const;

  private:
    TransitionVector compute(const Site& x) const;

    EnvironmentSpec spec_;
    mutable std::unordered_map<Site, TransitionVector, SiteHash> cache_;
    TransitionVector homogeneous_value_;  // valid for Homogeneous kind
};

// Finite realized window of an environment; the oracle works on these.
struct RealizedEnv {
    int d = 2;
    double kappa = 0.0;
    std::unordered_map<Site, TransitionVector, SiteHash> table;

    const TransitionVector& at(const Site& x) const;
    static RealizedEnv from(const Environment& env, const std::vector<Site>& sites);
};

enum class MixingFlavor { SM, SMG };

struct MixingCertificate {
    std::vector<Site> delta_set, v_set, a_set;
    double ratio = 1.0;
    double bound = 1.0;
    bool pass = true;
    std::size_t states_enumerated = 0;
};

// Exact conditional-law ratio by enumeration on a finite window:
//   sup over atoms of  P[sigma_Delta = . | eta] / P[sigma_Delta = . | eta'],
// compared against exp(C * sum e^{-g|x-y|_1}) with the boundary-set sum (SM)
// or the bulk-set sum (SMG). eta and eta_prime assign alphabet indices to the
// conditioning sites and must agree off A.
MixingCertificate exact_conditional_ratio(const EnvironmentSpec& spec,
                                          const std::vector<Site>& delta,
                                          const std::vector<Site>& v, const std::vector<Site>& a,
                                          const std::map<Site, int>& eta,
                                          const std::map<Site, int>& eta_prime,
                                          MixingFlavor flavor = MixingFlavor::SM,
                                          std::size_t budget = 10'000'000);

// condition (R): g > 18 log(1/kappa)
bool check_condition_R(const EnvironmentSpec& spec);

}  // namespace rwre
