#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "bonesoup/core_types.hpp"
#include "bonesoup/matrix.hpp"

namespace bonesoup {

// Curvature of a quadratic reward. Isotropic k*I is the fast path required
// by the analytic-oracle module; a general SPD matrix covers anisotropic
// cases like r2 of the two-objective toy example.
class Curvature {
  public:
    explicit Curvature(double k);             // isotropic k*I, k > 0
    explicit Curvature(Matrix k_matrix);      // SPD, symmetric within 1e-12

    bool isotropic() const { return isotropic_; }
    double scalar() const { return k_; }
    const Matrix& matrix() const { return k_matrix_; }

    // (theta - c)^T K (theta - c)
    double quad_form(const Vec& diff) const;
    // K * v
    Vec apply(const Vec& v) const;

  private:
    bool isotropic_;
    double k_ = 0.0;
    Matrix k_matrix_;
};

// r(theta) = peak - (theta - maximizer)^T K (theta - maximizer)
struct QuadraticReward {
    double peak;
    ParamVector maximizer;
    Curvature curvature;

    QuadraticReward(double peak, ParamVector maximizer, Curvature curvature);

    std::size_t dim() const { return maximizer.size(); }
};

double eval_quadratic(const QuadraticReward& reward, const ParamVector& point);
Vec gradient_quadratic(const QuadraticReward& reward, const ParamVector& point);

// Finite contextual bandit with n reward tables of shape C x A.
struct BanditEnvironment {
    int num_contexts;
    int num_arms;
    Vec context_probs;                 // length C, simplex
    std::vector<Matrix> reward_tables; // n tables, each C x A

    BanditEnvironment(int contexts, int arms, Vec probs, std::vector<Matrix> tables);

    std::size_t num_objectives() const { return reward_tables.size(); }
};

// Softmax policy over arms, one logits row per context.
class SoftmaxPolicy {
  public:
    SoftmaxPolicy(int num_contexts, int num_arms);          // uniform (zero logits)
    explicit SoftmaxPolicy(Matrix logits);

    const Matrix& logits() const { return logits_; }
    int num_contexts() const { return static_cast<int>(logits_.size()); }
    int num_arms() const { return logits_.empty() ? 0 : static_cast<int>(logits_[0].size()); }

    // softmax(logits[s])
    Vec probs(int context) const;

    Vec to_flat() const;
    static SoftmaxPolicy from_flat(const Vec& flat, int num_contexts, int num_arms);

  private:
    Matrix logits_;
};

// Exact expectation sum_s p(s) sum_a pi(a|s) r_j(s,a); never sampled.
double eval_policy_value(const BanditEnvironment& env, int objective_index,
                         const SoftmaxPolicy& policy);

enum class RewardFamily { Quadratic, Bandit };

// h = sum_j w_j r_j over one closed family of component rewards.
struct BackboneReward {
    Vec weights;  // simplex, length n
    RewardFamily family;
    std::vector<QuadraticReward> quadratic_components;
    const BanditEnvironment* bandit_env = nullptr;

    static BackboneReward quadratic(Vec weights, std::vector<QuadraticReward> components);
    static BackboneReward bandit(Vec weights, const BanditEnvironment& env);
};

double eval_backbone(const BackboneReward& h, const ParamVector& point);
double eval_backbone(const BackboneReward& h, const SoftmaxPolicy& policy);

// g_mu(point) = sum_i mu_i r_i(point)
double testing_reward(const PreferenceVector& prefs, const std::vector<QuadraticReward>& rewards,
                      const ParamVector& point);
double testing_reward(const PreferenceVector& prefs, const BanditEnvironment& env,
                      const SoftmaxPolicy& policy);

}  // namespace bonesoup
