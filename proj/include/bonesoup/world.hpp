#pragma once

#include <variant>
#include <vector>

#include "bonesoup/reward_models.hpp"

namespace bonesoup {

// Quadratic-reward world: models are flat parameter vectors.
struct QuadraticWorld {
    std::vector<QuadraticReward> rewards;
    ParamVector reference;  // theta_sft analogue
};

// Bandit world: models are softmax-policy logits; reference is pi_sft.
struct BanditWorld {
    BanditEnvironment env;
    SoftmaxPolicy reference;
};

using World = std::variant<QuadraticWorld, BanditWorld>;

int num_objectives(const World& world);

// Model parameter dimension (d, or C*A flattened logits).
std::size_t model_dim(const World& world);

Vec reference_params(const World& world);

// All n reward values at a flat parameter vector.
Vec eval_all_rewards(const World& world, const Vec& flat_params);

double eval_testing_reward(const World& world, const PreferenceVector& mu, const Vec& flat_params);

}  // namespace bonesoup
