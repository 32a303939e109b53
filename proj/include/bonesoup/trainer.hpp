#pragma once

#include <functional>
#include <vector>

#include "bonesoup/matrix.hpp"
#include "bonesoup/world.hpp"

namespace bonesoup {

struct TrainerConfig {
    double eta = 0.0;           // regularization strength toward the reference model
    int steps = 10000;
    double learning_rate = 0.1;
    double budget_fraction = 0.2;  // fraction of steps used during beta selection

    void validate() const;
};

// Backbone models trained column-by-column from a combination matrix.
// Models are stored as flat parameter vectors (logits for the bandit world).
struct BackboneSet {
    CombinationMatrix matrix;
    std::vector<ParamVector> models;
    Vec reference;
    RewardFamily family = RewardFamily::Quadratic;
    int num_contexts = 0;  // bandit only
    int num_arms = 0;      // bandit only
};

// Unique maximizer of sum_j w_j r_j(theta) - eta * ||theta - reference||^2,
// i.e. the solution of (sum_j w_j K_j + eta I) theta = sum_j w_j K_j theta_j* + eta ref.
ParamVector train_quadratic_closed_form(const std::vector<QuadraticReward>& rewards,
                                        const Vec& weights, double eta,
                                        const ParamVector& reference);

// value + gradient in one call; gradient written into the second argument.
using Objective = std::function<double(const Vec&, Vec&)>;

// Plain fixed-step gradient ascent; stops early at an exactly-zero gradient
// and throws NonFiniteValue when iterates diverge.
ParamVector train_gradient(const Objective& objective, const ParamVector& start,
                           const TrainerConfig& config);

// Gibbs optimum per context: pi*(a|s) = pi_sft(a|s) exp(R(s,a)/eta) / Z(s).
SoftmaxPolicy bandit_kl_closed_form(const BanditEnvironment& env, const Vec& weights, double eta,
                                    const SoftmaxPolicy& reference);

// Iterative KL-regularized trainer; converges to the Gibbs optimum and throws
// NonConvergence when the objective gap stays above 1e-8 after `steps`.
SoftmaxPolicy train_bandit_kl(const BanditEnvironment& env, const Vec& weights, double eta,
                              const SoftmaxPolicy& reference, const TrainerConfig& config);

// Exact objective E_s E_{a~pi}[w^T r] - eta E_s[KL(pi||pi_sft)].
double bandit_kl_objective(const BanditEnvironment& env, const Vec& weights, double eta,
                           const SoftmaxPolicy& reference, const SoftmaxPolicy& policy);

// Model i maximizes the backbone reward built from column i of the matrix.
BackboneSet train_backbones(const CombinationMatrix& matrix, const World& world, double eta,
                            const TrainerConfig& config);

// Small-budget beta selection: trains each candidate's backbones with
// steps * budget_fraction, merges over validation preferences, and returns
// the candidate with maximal hypervolume (ties toward larger beta).
double select_beta(const std::vector<double>& candidates, const World& world, double eta,
                   const TrainerConfig& config,
                   const std::vector<PreferenceVector>& validation_prefs,
                   const Vec& hv_reference);

}  // namespace bonesoup
