#include "bonesoup/reward_models.hpp"

#include <cmath>
#include <utility>

namespace bonesoup {

namespace {

// Plain Cholesky; returns false when the matrix is not positive definite.
bool cholesky_ok(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix l(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0) return false;
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

}  // namespace

Curvature::Curvature(double k) : isotropic_(true), k_(k) {
    if (!(k > 0.0)) {
        throw ConfigError("Curvature: isotropic k must be > 0");
    }
}

Curvature::Curvature(Matrix k_matrix) : isotropic_(false), k_matrix_(std::move(k_matrix)) {
    const std::size_t n = k_matrix_.size();
    for (const Vec& row : k_matrix_) {
        if (row.size() != n) {
            throw DimensionMismatch("Curvature: matrix must be square");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(k_matrix_[i][j] - k_matrix_[j][i]) > 1e-12) {
                throw ConfigError("Curvature: matrix must be symmetric within 1e-12");
            }
        }
    }
    if (!cholesky_ok(k_matrix_)) {
        throw ConfigError("Curvature: matrix must be positive definite");
    }
}

double Curvature::quad_form(const Vec& diff) const {
    if (isotropic_) {
        double s = 0.0;
        for (double v : diff) s += v * v;
        return k_ * s;
    }
    if (diff.size() != k_matrix_.size()) {
        throw DimensionMismatch("Curvature: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        for (std::size_t j = 0; j < diff.size(); ++j) {
            s += diff[i] * k_matrix_[i][j] * diff[j];
        }
    }
    return s;
}

Vec Curvature::apply(const Vec& v) const {
    if (isotropic_) {
        Vec out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = k_ * v[i];
        return out;
    }
    if (v.size() != k_matrix_.size()) {
        throw DimensionMismatch("Curvature: dimension mismatch");
    }
    Vec out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += k_matrix_[i][j] * v[j];
    }
    return out;
}

QuadraticReward::QuadraticReward(double p, ParamVector m, Curvature c)
    : peak(p), maximizer(std::move(m)), curvature(std::move(c)) {
    if (!curvature.isotropic() && curvature.matrix().size() != maximizer.size()) {
        throw DimensionMismatch("QuadraticReward: curvature/maximizer dimension mismatch");
    }
}

double eval_quadratic(const QuadraticReward& reward, const ParamVector& point) {
    if (point.size() != reward.dim()) {
        throw DimensionMismatch("eval_quadratic: point dimension mismatch");
    }
    Vec diff(point.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = point[i] - reward.maximizer[i];
    return reward.peak - reward.curvature.quad_form(diff);
}

Vec gradient_quadratic(const QuadraticReward& reward, const ParamVector& point) {
    if (point.size() != reward.dim()) {
        throw DimensionMismatch("gradient_quadratic: point dimension mismatch");
    }
    Vec diff(point.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = point[i] - reward.maximizer[i];
    Vec kd = reward.curvature.apply(diff);
    for (double& v : kd) v = -2.0 * v;
    return kd;
}

BanditEnvironment::BanditEnvironment(int contexts, int arms, Vec probs,
                                     std::vector<Matrix> tables)
    : num_contexts(contexts), num_arms(arms), context_probs(std::move(probs)),
      reward_tables(std::move(tables)) {
    if (num_contexts < 1 || num_arms < 2) {
        throw ConfigError("BanditEnvironment: need C >= 1 and A >= 2");
    }
    if (context_probs.size() != static_cast<std::size_t>(num_contexts)) {
        throw DimensionMismatch("BanditEnvironment: context_probs length mismatch");
    }
    double sum = 0.0;
    for (double p : context_probs) {
        if (p < 0.0) throw ConfigError("BanditEnvironment: negative context probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSimplexTol) {
        throw ConfigError("BanditEnvironment: context_probs must sum to 1");
    }
    if (reward_tables.empty()) {
        throw ConfigError("BanditEnvironment: need at least one reward table");
    }
    for (const Matrix& t : reward_tables) {
        if (t.size() != static_cast<std::size_t>(num_contexts)) {
            throw DimensionMismatch("BanditEnvironment: reward table row count mismatch");
        }
        for (const Vec& row : t) {
            if (row.size() != static_cast<std::size_t>(num_arms)) {
                throw DimensionMismatch("BanditEnvironment: reward table column count mismatch");
            }
            for (double v : row) {
                if (!std::isfinite(v)) {
                    throw NonFiniteValue("BanditEnvironment: non-finite reward entry");
                }
            }
        }
    }
}

SoftmaxPolicy::SoftmaxPolicy(int num_contexts, int num_arms)
    : logits_(num_contexts, Vec(num_arms, 0.0)) {
    if (num_contexts < 1 || num_arms < 2) {
        throw ConfigError("SoftmaxPolicy: need C >= 1 and A >= 2");
    }
}

SoftmaxPolicy::SoftmaxPolicy(Matrix logits) : logits_(std::move(logits)) {
    if (logits_.empty() || logits_[0].size() < 2) {
        throw ConfigError("SoftmaxPolicy: need C >= 1 and A >= 2");
    }
    const std::size_t a = logits_[0].size();
    for (const Vec& row : logits_) {
        if (row.size() != a) {
            throw DimensionMismatch("SoftmaxPolicy: ragged logits");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw NonFiniteValue("SoftmaxPolicy: non-finite logit");
        }
    }
}

Vec SoftmaxPolicy::probs(int context) const {
    const Vec& row = logits_.at(context);
    double mx = row[0];
    for (double v : row) mx = std::max(mx, v);
    Vec p(row.size());
    double z = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        p[i] = std::exp(row[i] - mx);
        z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
}

Vec SoftmaxPolicy::to_flat() const {
    Vec flat;
    flat.reserve(logits_.size() * logits_[0].size());
    for (const Vec& row : logits_) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

SoftmaxPolicy SoftmaxPolicy::from_flat(const Vec& flat, int num_contexts, int num_arms) {
    if (flat.size() != static_cast<std::size_t>(num_contexts) * num_arms) {
        throw DimensionMismatch("SoftmaxPolicy: flat size mismatch");
    }
    Matrix logits(num_contexts, Vec(num_arms));
    for (int s = 0; s < num_contexts; ++s) {
        for (int a = 0; a < num_arms; ++a) logits[s][a] = flat[s * num_arms + a];
    }
    return SoftmaxPolicy(std::move(logits));
}

double eval_policy_value(const BanditEnvironment& env, int objective_index,
                         const SoftmaxPolicy& policy) {
    if (objective_index < 0 ||
        objective_index >= static_cast<int>(env.num_objectives())) {
        throw ConfigError("IndexOutOfRange: objective index");
    }
    if (policy.num_contexts() != env.num_contexts || policy.num_arms() != env.num_arms) {
        throw DimensionMismatch("eval_policy_value: policy shape mismatch");
    }
    const Matrix& table = env.reward_tables[objective_index];
    double value = 0.0;
    for (int s = 0; s < env.num_contexts; ++s) {
        const Vec p = policy.probs(s);
        double inner = 0.0;
        for (int a = 0; a < env.num_arms; ++a) inner += p[a] * table[s][a];
        value += env.context_probs[s] * inner;
    }
    return value;
}

BackboneReward BackboneReward::quadratic(Vec weights, std::vector<QuadraticReward> components) {
    if (weights.size() != components.size()) {
        throw DimensionMismatch("BackboneReward: weights/components count mismatch");
    }
    (void)PreferenceVector(weights);  // simplex validation
    BackboneReward h;
    h.weights = std::move(weights);
    h.family = RewardFamily::Quadratic;
    h.quadratic_components = std::move(components);
    return h;
}

BackboneReward BackboneReward::bandit(Vec weights, const BanditEnvironment& env) {
    if (weights.size() != env.num_objectives()) {
        throw DimensionMismatch("BackboneReward: weights/objectives count mismatch");
    }
    (void)PreferenceVector(weights);
    BackboneReward h;
    h.weights = std::move(weights);
    h.family = RewardFamily::Bandit;
    h.bandit_env = &env;
    return h;
}

double eval_backbone(const BackboneReward& h, const ParamVector& point) {
    if (h.family != RewardFamily::Quadratic) {
        throw ConfigError("MixedFamilies: backbone is not quadratic");
    }
    double v = 0.0;
    for (std::size_t j = 0; j < h.weights.size(); ++j) {
        v += h.weights[j] * eval_quadratic(h.quadratic_components[j], point);
    }
    return v;
}

double eval_backbone(const BackboneReward& h, const SoftmaxPolicy& policy) {
    if (h.family != RewardFamily::Bandit) {
        throw ConfigError("MixedFamilies: backbone is not bandit");
    }
    double v = 0.0;
    for (std::size_t j = 0; j < h.weights.size(); ++j) {
        v += h.weights[j] * eval_policy_value(*h.bandit_env, static_cast<int>(j), policy);
    }
    return v;
}

double testing_reward(const PreferenceVector& prefs, const std::vector<QuadraticReward>& rewards,
                      const ParamVector& point) {
    if (prefs.size() != rewards.size()) {
        throw DimensionMismatch("testing_reward: prefs/rewards count mismatch");
    }
    double g = 0.0;
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        g += prefs[i] * eval_quadratic(rewards[i], point);
    }
    return g;
}

double testing_reward(const PreferenceVector& prefs, const BanditEnvironment& env,
                      const SoftmaxPolicy& policy) {
    if (prefs.size() != env.num_objectives()) {
        throw DimensionMismatch("testing_reward: prefs/objectives count mismatch");
    }
    double g = 0.0;
    for (std::size_t i = 0; i < prefs.size(); ++i) {
        g += prefs[i] * eval_policy_value(env, static_cast<int>(i), policy);
    }
    return g;
}

}  // namespace bonesoup
