#include "bonesoup/world.hpp"

namespace bonesoup {

int num_objectives(const World& world) {
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        return static_cast<int>(q->rewards.size());
    }
    return static_cast<int>(std::get<BanditWorld>(world).env.num_objectives());
}

std::size_t model_dim(const World& world) {
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        return q->reference.size();
    }
    const auto& b = std::get<BanditWorld>(world);
    return static_cast<std::size_t>(b.env.num_contexts) * b.env.num_arms;
}

Vec reference_params(const World& world) {
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        return q->reference.values();
    }
    return std::get<BanditWorld>(world).reference.to_flat();
}

Vec eval_all_rewards(const World& world, const Vec& flat_params) {
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        ParamVector point(flat_params);
        Vec out(q->rewards.size());
        for (std::size_t i = 0; i < q->rewards.size(); ++i) {
            out[i] = eval_quadratic(q->rewards[i], point);
        }
        return out;
    }
    const auto& b = std::get<BanditWorld>(world);
    SoftmaxPolicy policy = SoftmaxPolicy::from_flat(flat_params, b.env.num_contexts, b.env.num_arms);
    Vec out(b.env.num_objectives());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = eval_policy_value(b.env, static_cast<int>(i), policy);
    }
    return out;
}

double eval_testing_reward(const World& world, const PreferenceVector& mu, const Vec& flat_params) {
    const Vec rewards = eval_all_rewards(world, flat_params);
    if (mu.size() != rewards.size()) {
        throw DimensionMismatch("eval_testing_reward: preference length mismatch");
    }
    double g = 0.0;
    for (std::size_t i = 0; i < rewards.size(); ++i) g += mu[i] * rewards[i];
    return g;
}

}  // namespace bonesoup
