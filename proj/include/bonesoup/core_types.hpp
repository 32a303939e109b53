#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bonesoup/errors.hpp"

namespace bonesoup {

using Vec = std::vector<double>;

inline constexpr double kSimplexTol = 1e-9;

// Point on the n-simplex expressing user trade-off weights over objectives.
// Inputs are validated, never silently renormalized.
class PreferenceVector {
  public:
    explicit PreferenceVector(Vec values);

    const Vec& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

  private:
    Vec values_;
};

PreferenceVector make_preference(Vec values);

// Dense real parameter vector; a "model" at desk scale.
class ParamVector {
  public:
    ParamVector() = default;
    explicit ParamVector(Vec values);

    const Vec& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

  private:
    Vec values_;
};

// Merging weights lambda. Sum to one; components may be negative.
class MergeCoefficients {
  public:
    explicit MergeCoefficients(Vec values);

    const Vec& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

  private:
    Vec values_;
};

struct MethodTag {
    enum class Kind {
        BoneSoup,      // beta
        RewardedSoup,
        MorlhfOracle,
        Aba,           // beta (backbones still come from B(beta))
        RandomMatrix,  // catalog_id
        Extrapolated,  // alpha + inner tag
    };

    Kind kind = Kind::RewardedSoup;
    double beta = 0.0;
    double alpha = 0.0;
    int catalog_id = 0;
    std::shared_ptr<MethodTag> inner;  // only for Extrapolated

    static MethodTag bone_soup(double beta);
    static MethodTag rewarded_soup();
    static MethodTag morlhf_oracle();
    static MethodTag aba(double beta);
    static MethodTag random_matrix(int id);
    static MethodTag extrapolated(double alpha, MethodTag inner_tag);

    // Stable display name, e.g. "bone_soup[beta=0.6]".
    std::string name() const;
};

// One (preference, reward vector) record of an empirical front.
struct FrontPoint {
    PreferenceVector preference;
    Vec rewards;
    MethodTag method;

    FrontPoint(PreferenceVector pref, Vec r, MethodTag tag);
};

// Returns sum_i coeffs[i] * params[i]; all params must share a dimension.
ParamVector linear_combination(const std::vector<ParamVector>& params, const Vec& coeffs);

}  // namespace bonesoup
