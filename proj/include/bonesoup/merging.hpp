#pragma once

#include <vector>

#include "bonesoup/trainer.hpp"

namespace bonesoup {

struct ExtrapolationConfig {
    double alpha = 0.0;
    std::vector<double> candidates = {0.1, 0.2, 0.3, 0.4, 0.5};

    void validate() const;
};

// lambda = B^{-1} mu; components may be negative, sum is 1.
MergeCoefficients solve_coefficients(const CombinationMatrix& matrix,
                                     const PreferenceVector& preference);

// sum_i lambda_i theta_i with lambda = B^{-1} mu. Bandit models merge in
// logit space (logits are the parameters of a softmax policy).
ParamVector merge(const BackboneSet& backbones, const PreferenceVector& preference);

// Ablation: lambda = mu directly on the Bone backbones, ignoring B.
ParamVector merge_aba(const BackboneSet& backbones, const PreferenceVector& preference);

// merged + alpha * (merged - reference)
ParamVector extrapolate(const ParamVector& merged, const ParamVector& reference, double alpha);

// Candidate alpha maximizing validation hypervolume of extrapolated fronts;
// ties broken toward the smallest candidate.
double select_alpha(const ExtrapolationConfig& config, const World& world,
                    const BackboneSet& backbones,
                    const std::vector<PreferenceVector>& validation_prefs,
                    const Vec& hv_reference);

}  // namespace bonesoup
