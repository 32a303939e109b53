#include "bonesoup/analytic.hpp"

#include <cmath>
#include <limits>

#include "bonesoup/trainer.hpp"

namespace bonesoup {

namespace {

Vec affine(const Vec& a, const Vec& b, double wa, double wb) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
    return out;
}

double sq_norm_diff(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

IsotropicPair::IsotropicPair(double k1_in, double k2_in, ParamVector t1, ParamVector t2,
                             double p1, double p2)
    : k1(k1_in), k2(k2_in), theta1(std::move(t1)), theta2(std::move(t2)), peak1(p1), peak2(p2) {
    if (!(k1 > 0.0) || !(k2 > 0.0)) {
        throw ConfigError("IsotropicPair: curvatures must be positive");
    }
    if (std::fabs(k1 - k2) <= 1e-12) {
        throw ConfigError("IsotropicPair: curvatures must be distinct");
    }
    if (theta1.size() != theta2.size()) {
        throw DimensionMismatch("IsotropicPair: maximizer dimension mismatch");
    }
}

std::vector<QuadraticReward> IsotropicPair::rewards() const {
    return {QuadraticReward(peak1, theta1, Curvature(k1)),
            QuadraticReward(peak2, theta2, Curvature(k2))};
}

ParamVector oracle_maximizer(const IsotropicPair& pair, double mu) {
    if (mu < 0.0 || mu > 1.0) {
        throw ConfigError("oracle_maximizer: mu must lie in [0, 1]");
    }
    const double denom = mu * pair.k1 + (1.0 - mu) * pair.k2;
    return ParamVector(affine(pair.theta1.values(), pair.theta2.values(),
                              mu * pair.k1 / denom, (1.0 - mu) * pair.k2 / denom));
}

std::pair<ParamVector, ParamVector> bone_solutions(const IsotropicPair& pair, double beta) {
    if (!(beta > 0.5 && beta <= 1.0)) {
        throw ConfigError("BetaOutOfRange: bone solutions need beta in (0.5, 1]");
    }
    const double d1 = beta * pair.k1 + (1.0 - beta) * pair.k2;
    const double d2 = (1.0 - beta) * pair.k1 + beta * pair.k2;
    ParamVector b1(affine(pair.theta1.values(), pair.theta2.values(),
                          beta * pair.k1 / d1, (1.0 - beta) * pair.k2 / d1));
    ParamVector b2(affine(pair.theta1.values(), pair.theta2.values(),
                          (1.0 - beta) * pair.k1 / d2, beta * pair.k2 / d2));
    return {std::move(b1), std::move(b2)};
}

ParamVector merged_solution(const IsotropicPair& pair, double beta, double mu) {
    if (beta == 1.0) {
        return ParamVector(affine(pair.theta1.values(), pair.theta2.values(), mu, 1.0 - mu));
    }
    const auto [b1, b2] = bone_solutions(pair, beta);
    const double lambda = (beta + mu - 1.0) / (2.0 * beta - 1.0);
    return ParamVector(affine(b1.values(), b2.values(), lambda, 1.0 - lambda));
}

double error_function(const IsotropicPair& pair, double beta, double mu) {
    if (!(beta > 0.5 && beta <= 1.0)) {
        throw ConfigError("BetaOutOfRange: error function needs beta in (0.5, 1]");
    }
    const double k1 = pair.k1;
    const double k2 = pair.k2;
    const double denom = (mu * k1 + (1.0 - mu) * k2) * (beta * k1 + (1.0 - beta) * k2) *
                         ((1.0 - beta) * k1 + beta * k2);
    const double factor =
        k1 * k2 * (k1 - k2) * (beta - mu) * (beta + mu - 1.0) / denom;
    return factor * factor * sq_norm_diff(pair.theta1.values(), pair.theta2.values());
}

std::pair<double, double> theorem_interval(double beta) {
    if (!(beta > 0.5 && beta < 1.0)) {
        throw ConfigError("BetaOutOfRange: theorem interval needs beta in (0.5, 1)");
    }
    const double len = std::sqrt(2.0 * beta * beta - 2.0 * beta + 1.0);
    return {(1.0 - len) / 2.0, (1.0 + len) / 2.0};
}

VerificationReport verify_theorem(const IsotropicPair& pair, double beta, int grid_size) {
    if (grid_size < 10) {
        throw ConfigError("verify_theorem: grid_size must be >= 10");
    }
    const auto [low, high] = theorem_interval(beta);
    // open interior only; endpoint strictness is not claimed
    const double margin = 1e-6;
    const double lo = low + margin;
    const double hi = high - margin;

    VerificationReport report;
    report.beta = beta;
    report.interval_low = low;
    report.interval_high = high;
    report.grid_size = grid_size;
    report.worst_margin = std::numeric_limits<double>::infinity();

    const std::vector<QuadraticReward> rewards = pair.rewards();
    for (int i = 0; i < grid_size; ++i) {
        const double mu = lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(grid_size - 1);
        const PreferenceVector pref({mu, 1.0 - mu});
        const ParamVector soup = merged_solution(pair, 1.0, mu);
        const ParamVector bone = merged_solution(pair, beta, mu);
        const double g_soup = testing_reward(pref, rewards, soup);
        const double g_bone = testing_reward(pref, rewards, bone);
        const double gap = g_bone - g_soup;
        if (gap < report.worst_margin) {
            report.worst_margin = gap;
            report.worst_mu = mu;
        }
        if (!(g_soup < g_bone)) ++report.violations;
    }
    return report;
}

Example21Report example21() {
    const ParamVector theta1({1.0, 1.0});
    const ParamVector theta2({3.0, -1.0});
    const std::vector<QuadraticReward> rewards = {
        QuadraticReward(0.0, theta1, Curvature(1.0)),
        QuadraticReward(0.0, theta2, Curvature(Matrix{{1.0, 0.0}, {0.0, 4.0}})),
    };
    const PreferenceVector mu({0.5, 0.5});
    const ParamVector origin({0.0, 0.0});

    Example21Report report;
    report.theta1 = theta1;
    report.theta2 = theta2;
    // r2 is anisotropic, so theta* comes from the 2x2 gradient system rather
    // than the isotropic formula.
    report.theta_star = train_quadratic_closed_form(rewards, mu.values(), 0.0, origin);
    report.soup = linear_combination({theta1, theta2}, {0.5, 0.5});
    report.bone1 = train_quadratic_closed_form(rewards, {0.4, 0.6}, 0.0, origin);
    report.bone2 = train_quadratic_closed_form(rewards, {0.6, 0.4}, 0.0, origin);
    report.bone_merged = linear_combination({report.bone1, report.bone2}, {0.5, 0.5});
    report.dist_soup = std::sqrt(sq_norm_diff(report.soup.values(), report.theta_star.values()));
    report.dist_bone =
        std::sqrt(sq_norm_diff(report.bone_merged.values(), report.theta_star.values()));
    report.g_soup = testing_reward(mu, rewards, report.soup);
    report.g_bone = testing_reward(mu, rewards, report.bone_merged);
    report.bone_closer = report.dist_bone < report.dist_soup;
    return report;
}

}  // namespace bonesoup
