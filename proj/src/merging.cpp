#include "bonesoup/merging.hpp"

#include <cmath>
#include <limits>

#include "bonesoup/metrics.hpp"

namespace bonesoup {

void ExtrapolationConfig::validate() const {
    if (candidates.empty()) {
        throw ConfigError("EmptyCandidates: extrapolation needs alpha candidates");
    }
    for (double a : candidates) {
        if (!(a > 0.0)) {
            throw ConfigError("ExtrapolationConfig: alpha candidates must be > 0");
        }
    }
}

MergeCoefficients solve_coefficients(const CombinationMatrix& matrix,
                                     const PreferenceVector& preference) {
    if (matrix.dim() != preference.size()) {
        throw DimensionMismatch("solve_coefficients: matrix/preference dimension mismatch");
    }
    Vec lambda = solve_linear(matrix.entries(), preference.values());
    return MergeCoefficients(std::move(lambda));
}

ParamVector merge(const BackboneSet& backbones, const PreferenceVector& preference) {
    if (backbones.models.size() != backbones.matrix.dim()) {
        throw DimensionMismatch("merge: inconsistent backbone set");
    }
    const MergeCoefficients lambda = solve_coefficients(backbones.matrix, preference);
    return linear_combination(backbones.models, lambda.values());
}

ParamVector merge_aba(const BackboneSet& backbones, const PreferenceVector& preference) {
    if (backbones.models.size() != preference.size()) {
        throw DimensionMismatch("merge_aba: backbone/preference count mismatch");
    }
    return linear_combination(backbones.models, preference.values());
}

ParamVector extrapolate(const ParamVector& merged, const ParamVector& reference, double alpha) {
    if (merged.size() != reference.size()) {
        throw DimensionMismatch("extrapolate: dimension mismatch");
    }
    if (alpha < 0.0) {
        throw ConfigError("extrapolate: alpha must be >= 0");
    }
    Vec out(merged.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = merged[i] + alpha * (merged[i] - reference[i]);
    }
    return ParamVector(std::move(out));
}

double select_alpha(const ExtrapolationConfig& config, const World& world,
                    const BackboneSet& backbones,
                    const std::vector<PreferenceVector>& validation_prefs,
                    const Vec& hv_reference) {
    config.validate();
    const ParamVector reference(backbones.reference);
    double best_alpha = 0.0;
    double best_hv = -std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (double alpha : config.candidates) {
        std::vector<Vec> points;
        points.reserve(validation_prefs.size());
        for (const PreferenceVector& mu : validation_prefs) {
            const ParamVector merged = merge(backbones, mu);
            const ParamVector adjusted = extrapolate(merged, reference, alpha);
            points.push_back(eval_all_rewards(world, adjusted.values()));
        }
        const double hv = hypervolume(points, hv_reference);
        // ties toward the smallest alpha
        if (!have_best || hv > best_hv || (hv == best_hv && alpha < best_alpha)) {
            best_hv = hv;
            best_alpha = alpha;
            have_best = true;
        }
    }
    return best_alpha;
}

}  // namespace bonesoup
