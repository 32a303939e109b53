#include "bonesoup/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "bonesoup/merging.hpp"
#include "bonesoup/metrics.hpp"

namespace bonesoup {

void TrainerConfig::validate() const {
    if (eta < 0.0) throw ConfigError("TrainerConfig: eta must be >= 0");
    if (steps <= 0) throw ConfigError("TrainerConfig: steps must be > 0");
    if (!(learning_rate > 0.0)) throw ConfigError("TrainerConfig: learning_rate must be > 0");
    if (!(budget_fraction > 0.0 && budget_fraction <= 1.0)) {
        throw ConfigError("TrainerConfig: budget_fraction must be in (0, 1]");
    }
}

ParamVector train_quadratic_closed_form(const std::vector<QuadraticReward>& rewards,
                                        const Vec& weights, double eta,
                                        const ParamVector& reference) {
    if (rewards.empty() || rewards.size() != weights.size()) {
        throw DimensionMismatch("train_quadratic_closed_form: rewards/weights mismatch");
    }
    const std::size_t d = rewards.front().dim();
    for (const QuadraticReward& r : rewards) {
        if (r.dim() != d) {
            throw DimensionMismatch("train_quadratic_closed_form: reward dimension mismatch");
        }
    }
    if (reference.size() != d) {
        throw DimensionMismatch("train_quadratic_closed_form: reference dimension mismatch");
    }

    // (sum_j w_j K_j + eta I) theta = sum_j w_j K_j theta_j* + eta * reference
    Matrix a(d, Vec(d, 0.0));
    Vec b(d, 0.0);
    for (std::size_t j = 0; j < rewards.size(); ++j) {
        const Curvature& k = rewards[j].curvature;
        const Vec kt = k.apply(rewards[j].maximizer.values());
        for (std::size_t r = 0; r < d; ++r) {
            b[r] += weights[j] * kt[r];
            if (k.isotropic()) {
                a[r][r] += weights[j] * k.scalar();
            } else {
                for (std::size_t c = 0; c < d; ++c) a[r][c] += weights[j] * k.matrix()[r][c];
            }
        }
    }
    for (std::size_t r = 0; r < d; ++r) {
        a[r][r] += eta;
        b[r] += eta * reference[r];
    }
    Vec theta;
    try {
        theta = solve_linear(std::move(a), std::move(b));
    } catch (const Singular&) {
        throw Singular("SingularSystem: degenerate quadratic training system");
    }
    return ParamVector(std::move(theta));
}

ParamVector train_gradient(const Objective& objective, const ParamVector& start,
                           const TrainerConfig& config) {
    config.validate();
    Vec theta = start.values();
    Vec grad(theta.size(), 0.0);
    double value = objective(theta, grad);
    if (!std::isfinite(value)) {
        throw NonFiniteValue("train_gradient: non-finite objective at start");
    }
    const double lr = config.learning_rate;
    for (int step = 0; step < config.steps; ++step) {
        bool at_fixed_point = true;
        for (double g : grad) at_fixed_point = at_fixed_point && g == 0.0;
        if (at_fixed_point) break;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            theta[i] += lr * grad[i];
            if (!std::isfinite(theta[i])) {
                throw NonFiniteValue("train_gradient: divergence detected");
            }
        }
        value = objective(theta, grad);
        if (!std::isfinite(value)) {
            throw NonFiniteValue("train_gradient: divergence detected");
        }
    }
    return ParamVector(std::move(theta));
}

SoftmaxPolicy bandit_kl_closed_form(const BanditEnvironment& env, const Vec& weights, double eta,
                                    const SoftmaxPolicy& reference) {
    if (!(eta > 0.0)) {
        throw ConfigError("bandit_kl_closed_form: eta must be > 0");
    }
    if (weights.size() != env.num_objectives()) {
        throw DimensionMismatch("bandit_kl_closed_form: weights count mismatch");
    }
    Matrix logits(env.num_contexts, Vec(env.num_arms, 0.0));
    for (int s = 0; s < env.num_contexts; ++s) {
        const Vec ref = reference.probs(s);
        for (int a = 0; a < env.num_arms; ++a) {
            double r = 0.0;
            for (std::size_t j = 0; j < weights.size(); ++j) {
                r += weights[j] * env.reward_tables[j][s][a];
            }
            logits[s][a] = std::log(ref[a]) + r / eta;
        }
    }
    return SoftmaxPolicy(std::move(logits));
}

double bandit_kl_objective(const BanditEnvironment& env, const Vec& weights, double eta,
                           const SoftmaxPolicy& reference, const SoftmaxPolicy& policy) {
    double total = 0.0;
    for (int s = 0; s < env.num_contexts; ++s) {
        const Vec p = policy.probs(s);
        const Vec ref = reference.probs(s);
        double inner = 0.0;
        for (int a = 0; a < env.num_arms; ++a) {
            double r = 0.0;
            for (std::size_t j = 0; j < weights.size(); ++j) {
                r += weights[j] * env.reward_tables[j][s][a];
            }
            inner += p[a] * r;
            if (p[a] > 0.0) inner -= eta * p[a] * (std::log(p[a]) - std::log(ref[a]));
        }
        total += env.context_probs[s] * inner;
    }
    return total;
}

namespace {

// Deterministic KL-regularized ascent. The raw logit gradient per context is
// p(s) pi(a|s) (f_a - J_s) with f_a = R_a - eta log(pi/pi_sft); the update
// uses the diagonally preconditioned direction (f_a - J_s), which has the
// same fixed points and does not vanish on suppressed arms. Step-halving
// keeps the objective non-decreasing.
SoftmaxPolicy bandit_kl_ascend(const BanditEnvironment& env, const Vec& weights, double eta,
                               const SoftmaxPolicy& reference, const TrainerConfig& config,
                               bool require_convergence) {
    config.validate();
    if (!(eta > 0.0)) {
        throw ConfigError("train_bandit_kl: eta must be > 0");
    }
    const SoftmaxPolicy optimum = bandit_kl_closed_form(env, weights, eta, reference);
    const double target = bandit_kl_objective(env, weights, eta, reference, optimum);

    Matrix logits = reference.logits();
    double value = bandit_kl_objective(env, weights, eta, reference, SoftmaxPolicy(logits));
    double lr = config.learning_rate;

    // Converged when the objective gap closes AND the policy itself is close
    // per context (a small objective gap alone can hide a TV gap ~sqrt(gap/eta)).
    const auto max_tv = [&](const Matrix& candidate_logits) {
        const SoftmaxPolicy candidate(candidate_logits);
        double worst = 0.0;
        for (int s = 0; s < env.num_contexts; ++s) {
            const Vec p = candidate.probs(s);
            const Vec q = optimum.probs(s);
            double tv = 0.0;
            for (int a = 0; a < env.num_arms; ++a) tv += std::fabs(p[a] - q[a]);
            worst = std::max(worst, 0.5 * tv);
        }
        return worst;
    };

    for (int step = 0; step < config.steps; ++step) {
        if (target - value <= 1e-8 && max_tv(logits) <= 1e-5) break;
        const SoftmaxPolicy current(logits);
        Matrix direction(env.num_contexts, Vec(env.num_arms, 0.0));
        for (int s = 0; s < env.num_contexts; ++s) {
            const Vec p = current.probs(s);
            const Vec ref = reference.probs(s);
            Vec f(env.num_arms);
            double j_s = 0.0;
            for (int a = 0; a < env.num_arms; ++a) {
                double r = 0.0;
                for (std::size_t j = 0; j < weights.size(); ++j) {
                    r += weights[j] * env.reward_tables[j][s][a];
                }
                f[a] = r - eta * (std::log(p[a]) - std::log(ref[a]));
                j_s += p[a] * f[a];
            }
            for (int a = 0; a < env.num_arms; ++a) direction[s][a] = f[a] - j_s;
        }

        bool accepted = false;
        for (int halving = 0; halving < 200 && !accepted; ++halving) {
            Matrix candidate = logits;
            for (int s = 0; s < env.num_contexts; ++s) {
                for (int a = 0; a < env.num_arms; ++a) {
                    candidate[s][a] += lr * direction[s][a];
                }
            }
            const double cand_value =
                bandit_kl_objective(env, weights, eta, reference, SoftmaxPolicy(candidate));
            if (std::isfinite(cand_value) && cand_value >= value) {
                logits = std::move(candidate);
                value = cand_value;
                accepted = true;
            } else {
                lr *= 0.5;
                if (lr == 0.0) break;
            }
        }
        if (!accepted) break;
    }
    if (require_convergence && target - value > 1e-8) {
        throw NonConvergence("train_bandit_kl: objective gap above 1e-8 after step budget");
    }
    return SoftmaxPolicy(std::move(logits));
}

}  // namespace

SoftmaxPolicy train_bandit_kl(const BanditEnvironment& env, const Vec& weights, double eta,
                              const SoftmaxPolicy& reference, const TrainerConfig& config) {
    return bandit_kl_ascend(env, weights, eta, reference, config, /*require_convergence=*/true);
}

BackboneSet train_backbones(const CombinationMatrix& matrix, const World& world, double eta,
                            const TrainerConfig& config) {
    const int n = num_objectives(world);
    if (static_cast<int>(matrix.dim()) != n) {
        throw DimensionMismatch("train_backbones: matrix dimension != objective count");
    }
    BackboneSet set{matrix, {}, reference_params(world)};
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        set.family = RewardFamily::Quadratic;
        for (int i = 0; i < n; ++i) {
            set.models.push_back(
                train_quadratic_closed_form(q->rewards, matrix.column(i), eta, q->reference));
        }
    } else {
        const auto& b = std::get<BanditWorld>(world);
        set.family = RewardFamily::Bandit;
        set.num_contexts = b.env.num_contexts;
        set.num_arms = b.env.num_arms;
        for (int i = 0; i < n; ++i) {
            const SoftmaxPolicy policy =
                train_bandit_kl(b.env, matrix.column(i), eta, b.reference, config);
            set.models.push_back(ParamVector(policy.to_flat()));
        }
    }
    return set;
}

namespace {

// Iterative, deliberately under-trained backbones for beta selection.
BackboneSet train_backbones_budgeted(const CombinationMatrix& matrix, const World& world,
                                     double eta, const TrainerConfig& config) {
    TrainerConfig budgeted = config;
    budgeted.steps = std::max(1, static_cast<int>(config.steps * config.budget_fraction));
    BackboneSet set{matrix, {}, reference_params(world)};
    const int n = num_objectives(world);
    if (const auto* q = std::get_if<QuadraticWorld>(&world)) {
        set.family = RewardFamily::Quadratic;
        for (int i = 0; i < n; ++i) {
            const Vec w = matrix.column(i);
            Objective obj = [&](const Vec& theta, Vec& grad) {
                const ParamVector point(theta);
                std::fill(grad.begin(), grad.end(), 0.0);
                double value = 0.0;
                for (std::size_t j = 0; j < q->rewards.size(); ++j) {
                    value += w[j] * eval_quadratic(q->rewards[j], point);
                    const Vec g = gradient_quadratic(q->rewards[j], point);
                    for (std::size_t c = 0; c < grad.size(); ++c) grad[c] += w[j] * g[c];
                }
                for (std::size_t c = 0; c < theta.size(); ++c) {
                    const double dv = theta[c] - q->reference[c];
                    value -= eta * dv * dv;
                    grad[c] -= 2.0 * eta * dv;
                }
                return value;
            };
            set.models.push_back(train_gradient(obj, q->reference, budgeted));
        }
    } else {
        const auto& b = std::get<BanditWorld>(world);
        set.family = RewardFamily::Bandit;
        set.num_contexts = b.env.num_contexts;
        set.num_arms = b.env.num_arms;
        for (int i = 0; i < n; ++i) {
            const SoftmaxPolicy policy = bandit_kl_ascend(b.env, matrix.column(i), eta,
                                                          b.reference, budgeted,
                                                          /*require_convergence=*/false);
            set.models.push_back(ParamVector(policy.to_flat()));
        }
    }
    return set;
}

}  // namespace

double select_beta(const std::vector<double>& candidates, const World& world, double eta,
                   const TrainerConfig& config,
                   const std::vector<PreferenceVector>& validation_prefs,
                   const Vec& hv_reference) {
    if (candidates.empty()) {
        throw ConfigError("EmptyCandidates: beta selection needs candidates");
    }
    for (double beta : candidates) {
        if (!(beta > 0.5 && beta < 1.0)) {
            throw ConfigError("BetaOutOfRange: beta candidates must lie in (0.5, 1)");
        }
    }
    const int n = num_objectives(world);
    double best_beta = 0.0;
    double best_hv = -std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (double beta : candidates) {
        const CombinationMatrix matrix = build_circulant(n, beta);
        const BackboneSet backbones = train_backbones_budgeted(matrix, world, eta, config);
        std::vector<Vec> points;
        points.reserve(validation_prefs.size());
        for (const PreferenceVector& mu : validation_prefs) {
            const ParamVector merged = merge(backbones, mu);
            points.push_back(eval_all_rewards(world, merged.values()));
        }
        const double hv = hypervolume(points, hv_reference);
        if (!have_best || hv > best_hv || (hv == best_hv && beta > best_beta)) {
            best_hv = hv;
            best_beta = beta;
            have_best = true;
        }
    }
    return best_beta;
}

}  // namespace bonesoup
