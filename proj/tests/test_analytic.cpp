#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bonesoup/analytic.hpp"
#include "bonesoup/merging.hpp"
#include "bonesoup/trainer.hpp"

using namespace bonesoup;

namespace {

IsotropicPair simple_pair() {
    return IsotropicPair(1.0, 2.0, ParamVector({0.0}), ParamVector({1.0}));
}

}  // namespace

TEST_CASE("pair validation") {
    CHECK_THROWS_AS(IsotropicPair(1.0, 1.0, ParamVector({0.0}), ParamVector({1.0})),
                    ConfigError);
    CHECK_THROWS_AS(IsotropicPair(-1.0, 2.0, ParamVector({0.0}), ParamVector({1.0})),
                    ConfigError);
    CHECK_THROWS_AS(IsotropicPair(1.0, 2.0, ParamVector({0.0}), ParamVector({1.0, 2.0})),
                    ConfigError);
}

TEST_CASE("oracle_maximizer closed form") {
    const IsotropicPair pair = simple_pair();
    const ParamVector at_half = oracle_maximizer(pair, 0.5);
    CHECK(at_half[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const ParamVector at_one = oracle_maximizer(pair, 1.0);
    CHECK(at_one[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(oracle_maximizer(pair, 1.5), ConfigError);
}

TEST_CASE("oracle_maximizer zeroes the scalarized gradient") {
    const IsotropicPair pair(0.7, 3.1, ParamVector({1.0, -2.0}), ParamVector({0.5, 4.0}));
    const auto rewards = pair.rewards();
    for (double mu : {0.2, 0.5, 0.9}) {
        const ParamVector star = oracle_maximizer(pair, mu);
        Vec grad(2, 0.0);
        const Vec w = {mu, 1.0 - mu};
        for (int j = 0; j < 2; ++j) {
            const Vec g = gradient_quadratic(rewards[j], star);
            for (int i = 0; i < 2; ++i) grad[i] += w[j] * g[i];
        }
        CHECK(std::fabs(grad[0]) < 1e-10);
        CHECK(std::fabs(grad[1]) < 1e-10);
    }
}

TEST_CASE("bone_solutions closed form") {
    const IsotropicPair pair = simple_pair();
    const auto [b1, b2] = bone_solutions(pair, 0.75);
    CHECK(b1[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(b2[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-12));

    // beta -> 1 limit collapses to the single-reward maximizers
    const auto [c1, c2] = bone_solutions(pair, 1.0 - 1e-12);
    CHECK(c1[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(c2[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bone_solutions agree with the trainer") {
    const IsotropicPair pair(0.9, 2.4, ParamVector({-1.0, 2.0}), ParamVector({3.0, 0.0}));
    const auto rewards = pair.rewards();
    const ParamVector origin({0.0, 0.0});
    for (double beta : {0.55, 0.7, 0.9}) {
        const auto [b1, b2] = bone_solutions(pair, beta);
        const ParamVector t1 =
            train_quadratic_closed_form(rewards, {beta, 1.0 - beta}, 0.0, origin);
        const ParamVector t2 =
            train_quadratic_closed_form(rewards, {1.0 - beta, beta}, 0.0, origin);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::fabs(b1[i] - t1[i]) < 1e-12);
            CHECK(std::fabs(b2[i] - t2[i]) < 1e-12);
        }
    }
}

TEST_CASE("error function zeros and the soup baseline") {
    const IsotropicPair pair = simple_pair();
    CHECK(error_function(pair, 0.7, 0.7) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(error_function(pair, 0.7, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(error_function(pair, 1.0, 0.5) == doctest::Approx(1.0 / 36.0).epsilon(1e-12));
}

TEST_CASE("error function equals the constructive squared distance") {
    const IsotropicPair pair(1.3, 4.2, ParamVector({2.0, -1.0}), ParamVector({-0.5, 3.0}));
    for (double beta : {0.6, 0.75, 0.9, 1.0}) {
        for (double mu : {0.15, 0.4, 0.5, 0.8}) {
            const ParamVector merged = merged_solution(pair, beta, mu);
            const ParamVector star = oracle_maximizer(pair, mu);
            double sq = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double d = merged[i] - star[i];
                sq += d * d;
            }
            CHECK(std::fabs(error_function(pair, beta, mu) - sq) < 1e-10);
        }
    }
}

TEST_CASE("error function is non-negative") {
    const IsotropicPair pair = simple_pair();
    for (double beta : {0.55, 0.7, 0.95}) {
        for (int i = 0; i <= 20; ++i) {
            CHECK(error_function(pair, beta, i / 20.0) >= 0.0);
        }
    }
}

TEST_CASE("theorem_interval endpoints and length") {
    const auto [lo, hi] = theorem_interval(0.7);
    CHECK(hi - lo == doctest::Approx(std::sqrt(0.58)).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.11921).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.88079).epsilon(1e-4));

    const auto near_half = theorem_interval(0.5 + 1e-9);
    CHECK(near_half.second - near_half.first ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-8));

    const auto near_one = theorem_interval(1.0 - 1e-9);
    CHECK(near_one.second - near_one.first == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(theorem_interval(0.5), ConfigError);
    CHECK_THROWS_AS(theorem_interval(1.0), ConfigError);
}

TEST_CASE("interval length is monotone in beta and at least sqrt(2)/2") {
    double prev = 0.0;
    for (double beta = 0.51; beta < 1.0; beta += 0.02) {
        const auto [lo, hi] = theorem_interval(beta);
        const double len = hi - lo;
        CHECK(len >= std::sqrt(2.0) / 2.0 - 1e-12);
        CHECK(len > prev);
        prev = len;
    }
}

TEST_CASE("scalarization bound from the proof holds on random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> kdist(0.1, 10.0);
    for (int t = 0; t < 200; ++t) {
        const double k1 = kdist(rng), k2 = kdist(rng);
        for (double beta : {0.55, 0.7, 0.9}) {
            const double lhs = (beta * k1 + (1 - beta) * k2) * ((1 - beta) * k1 + beta * k2);
            CHECK(lhs >= k1 * k2 - 1e-9 * k1 * k2);
        }
    }
}

TEST_CASE("verify_theorem reports zero violations") {
    const IsotropicPair pair(0.8, 3.5, ParamVector({-2.0, 1.0}), ParamVector({4.0, -3.0}));
    for (double beta : {0.55, 0.7, 0.9}) {
        const VerificationReport report = verify_theorem(pair, beta, 1000);
        CHECK(report.violations == 0);
        CHECK(report.passed());
        CHECK(report.worst_margin > 0.0);
    }
    CHECK_THROWS_AS(verify_theorem(pair, 0.7, 5), ConfigError);
}

TEST_CASE("constructive path matches the closed-form merged solution") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    std::uniform_real_distribution<double> kdist(0.1, 10.0);
    std::uniform_int_distribution<int> ddist(1, 4);
    TrainerConfig config;

    for (int t = 0; t < 25; ++t) {
        const int d = ddist(rng);
        double k1 = kdist(rng), k2 = kdist(rng);
        if (std::fabs(k1 - k2) < 1e-3) k2 += 1.0;
        Vec c1(d), c2(d);
        for (double& x : c1) x = unif(rng);
        for (double& x : c2) x = unif(rng);
        const IsotropicPair pair(k1, k2, ParamVector(c1), ParamVector(c2));
        const World world = QuadraticWorld{pair.rewards(), ParamVector(Vec(d, 0.0))};

        for (double beta : {0.6, 0.75}) {
            const BackboneSet bones =
                train_backbones(build_circulant(2, beta), world, 0.0, config);
            for (double mu : {0.2, 0.5, 0.8}) {
                const MergeCoefficients lam =
                    solve_coefficients(bones.matrix, make_preference({mu, 1.0 - mu}));
                CHECK(std::fabs(lam[0] - (beta + mu - 1.0) / (2.0 * beta - 1.0)) < 1e-12);
                const ParamVector merged = merge(bones, make_preference({mu, 1.0 - mu}));
                const ParamVector analytic = merged_solution(pair, beta, mu);
                for (int i = 0; i < d; ++i) {
                    CHECK(std::fabs(merged[i] - analytic[i]) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("example21 reproduces every reported quantity") {
    const Example21Report r = example21();
    CHECK(r.theta_star[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.theta_star[1] == doctest::Approx(-0.6).epsilon(1e-12));
    CHECK(r.soup[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.soup[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.bone1[0] == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(r.bone1[1] == doctest::Approx(-5.0 / 7.0).epsilon(1e-12));
    CHECK(r.bone2[0] == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(r.bone2[1] == doctest::Approx(-5.0 / 11.0).epsilon(1e-12));
    CHECK(r.bone_merged[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.bone_merged[1] == doctest::Approx(-45.0 / 77.0).epsilon(1e-12));
    CHECK(r.bone_closer);
    CHECK(r.dist_bone < r.dist_soup);
    CHECK(r.g_soup == doctest::Approx(-3.5).epsilon(1e-12));
    CHECK(r.g_bone == doctest::Approx(-2.6007).epsilon(1e-4));
    CHECK(r.g_bone > r.g_soup);
}
