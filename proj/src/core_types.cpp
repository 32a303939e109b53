#include "bonesoup/core_types.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace bonesoup {

PreferenceVector::PreferenceVector(Vec values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw ConfigError("TooShort: preference needs n >= 2 components");
    }
    double sum = 0.0;
    for (double v : values_) {
        if (v < 0.0) {
            throw ConfigError("NegativeComponent: preference components must be >= 0");
        }
        sum += v;
    }
    if (std::fabs(sum - 1.0) > kSimplexTol) {
        throw ConfigError("SumNotOne: preference components must sum to 1");
    }
}

PreferenceVector make_preference(Vec values) {
    if (values.empty()) {
        throw ConfigError("TooShort: empty preference");
    }
    return PreferenceVector(std::move(values));
}

ParamVector::ParamVector(Vec values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw NonFiniteValue("ParamVector: non-finite component");
        }
    }
}

MergeCoefficients::MergeCoefficients(Vec values) : values_(std::move(values)) {
    double sum = 0.0;
    for (double v : values_) sum += v;
    if (std::fabs(sum - 1.0) > kSimplexTol) {
        throw NumericalError("MergeCoefficients: components must sum to 1");
    }
}

MethodTag MethodTag::bone_soup(double beta) {
    MethodTag t;
    t.kind = Kind::BoneSoup;
    t.beta = beta;
    if (!(beta > 0.5 && beta < 1.0)) {
        throw ConfigError("BetaOutOfRange: BoneSoup needs beta in (0.5, 1)");
    }
    return t;
}

MethodTag MethodTag::rewarded_soup() {
    MethodTag t;
    t.kind = Kind::RewardedSoup;
    return t;
}

MethodTag MethodTag::morlhf_oracle() {
    MethodTag t;
    t.kind = Kind::MorlhfOracle;
    return t;
}

MethodTag MethodTag::aba(double beta) {
    MethodTag t;
    t.kind = Kind::Aba;
    t.beta = beta;
    if (!(beta > 0.5 && beta < 1.0)) {
        throw ConfigError("BetaOutOfRange: Aba needs beta in (0.5, 1)");
    }
    return t;
}

MethodTag MethodTag::random_matrix(int id) {
    MethodTag t;
    t.kind = Kind::RandomMatrix;
    t.catalog_id = id;
    return t;
}

MethodTag MethodTag::extrapolated(double alpha, MethodTag inner_tag) {
    if (!(alpha > 0.0)) {
        throw ConfigError("Extrapolated tag needs alpha > 0");
    }
    MethodTag t;
    t.kind = Kind::Extrapolated;
    t.alpha = alpha;
    t.inner = std::make_shared<MethodTag>(std::move(inner_tag));
    return t;
}

namespace {

std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string MethodTag::name() const {
    switch (kind) {
        case Kind::BoneSoup:
            return "bone_soup[beta=" + fmt_param(beta) + "]";
        case Kind::RewardedSoup:
            return "rewarded_soup";
        case Kind::MorlhfOracle:
            return "morlhf_oracle";
        case Kind::Aba:
            return "aba[beta=" + fmt_param(beta) + "]";
        case Kind::RandomMatrix:
            return "random_matrix[" + std::to_string(catalog_id) + "]";
        case Kind::Extrapolated:
            return "extrapolated[alpha=" + fmt_param(alpha) + "," +
                   (inner ? inner->name() : std::string("?")) + "]";
    }
    return "?";
}

FrontPoint::FrontPoint(PreferenceVector pref, Vec r, MethodTag tag)
    : preference(std::move(pref)), rewards(std::move(r)), method(std::move(tag)) {
    if (rewards.size() != preference.size()) {
        throw DimensionMismatch("FrontPoint: rewards length must equal preference length");
    }
}

ParamVector linear_combination(const std::vector<ParamVector>& params, const Vec& coeffs) {
    if (params.empty() || params.size() != coeffs.size()) {
        throw DimensionMismatch("linear_combination: params/coeffs count mismatch");
    }
    const std::size_t d = params.front().size();
    Vec out(d, 0.0);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i].size() != d) {
            throw DimensionMismatch("linear_combination: params dimension mismatch");
        }
        for (std::size_t j = 0; j < d; ++j) {
            out[j] += coeffs[i] * params[i][j];
        }
    }
    return ParamVector(std::move(out));
}

}  // namespace bonesoup
