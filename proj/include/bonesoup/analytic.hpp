#pragma once

#include <utility>
#include <vector>

#include "bonesoup/reward_models.hpp"

namespace bonesoup {

// Two isotropic quadratic rewards with distinct curvatures, the setting of
// the closed-form analysis.
struct IsotropicPair {
    double k1;
    double k2;
    ParamVector theta1;
    ParamVector theta2;
    double peak1 = 0.0;
    double peak2 = 0.0;

    IsotropicPair(double k1, double k2, ParamVector theta1, ParamVector theta2,
                  double peak1 = 0.0, double peak2 = 0.0);

    std::vector<QuadraticReward> rewards() const;
};

// theta* = (mu k1 theta1 + (1-mu) k2 theta2) / (mu k1 + (1-mu) k2)
ParamVector oracle_maximizer(const IsotropicPair& pair, double mu);

// Backbone maximizers under h1 = beta r1 + (1-beta) r2 and its mirror.
std::pair<ParamVector, ParamVector> bone_solutions(const IsotropicPair& pair, double beta);

// Merged bone solution lambda theta1_bone + (1-lambda) theta2_bone with
// lambda = (beta + mu - 1)/(2 beta - 1); beta = 1 gives the soup solution
// mu theta1 + (1-mu) theta2.
ParamVector merged_solution(const IsotropicPair& pair, double beta, double mu);

// Closed-form E(beta, mu) = ||theta_bar_bone - theta*||^2; beta = 1 is the
// soup baseline E(1, mu).
double error_function(const IsotropicPair& pair, double beta, double mu);

// Interval ((1 - L)/2, (1 + L)/2) with L = sqrt(2 beta^2 - 2 beta + 1).
std::pair<double, double> theorem_interval(double beta);

struct VerificationReport {
    double beta = 0.0;
    double interval_low = 0.0;
    double interval_high = 0.0;
    int grid_size = 0;
    int violations = 0;
    // Smallest observed g(bone) - g(soup) over the grid; positive when the
    // inequality holds everywhere.
    double worst_margin = 0.0;
    double worst_mu = 0.0;

    bool passed() const { return violations == 0; }
};

// Samples the open interior of the interval and checks g(soup) < g(bone) at
// every point, via direct reward evaluation (not the closed form).
VerificationReport verify_theorem(const IsotropicPair& pair, double beta, int grid_size);

struct Example21Report {
    ParamVector theta1;       // (1, 1)
    ParamVector theta2;       // (3, -1)
    ParamVector theta_star;   // (2, -0.6)
    ParamVector soup;         // (2, 0)
    ParamVector bone1;        // (2.2, -5/7), maximizer of 0.4 r1 + 0.6 r2
    ParamVector bone2;        // (1.8, -5/11)
    ParamVector bone_merged;  // (2, -45/77)
    double dist_soup = 0.0;
    double dist_bone = 0.0;
    double g_soup = 0.0;
    double g_bone = 0.0;
    bool bone_closer = false;
};

// Full reproduction of the two-objective analytic example (beta = 0.6,
// mu = (0.5, 0.5), anisotropic second reward).
Example21Report example21();

}  // namespace bonesoup
