#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bonesoup/trainer.hpp"

using namespace bonesoup;

namespace {

std::vector<QuadraticReward> example_rewards() {
    return {QuadraticReward(0.0, ParamVector({1.0, 1.0}), Curvature(1.0)),
            QuadraticReward(0.0, ParamVector({3.0, -1.0}),
                            Curvature(Matrix{{1.0, 0.0}, {0.0, 4.0}}))};
}

double tv_distance(const Vec& p, const Vec& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace

TEST_CASE("closed-form trainer reproduces the toy example backbone") {
    const auto rewards = example_rewards();
    const ParamVector origin({0.0, 0.0});
    const ParamVector bone = train_quadratic_closed_form(rewards, {0.4, 0.6}, 0.0, origin);
    CHECK(bone[0] == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(bone[1] == doctest::Approx(-5.0 / 7.0).epsilon(1e-12));

    const ParamVector single = train_quadratic_closed_form(rewards, {1.0, 0.0}, 0.0, origin);
    CHECK(single[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(single[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form trainer with regularization (1-D)") {
    const std::vector<QuadraticReward> r = {
        QuadraticReward(0.0, ParamVector({2.0}), Curvature(1.0))};
    const ParamVector theta = train_quadratic_closed_form(r, {1.0}, 1.0, ParamVector({0.0}));
    CHECK(theta[0] == doctest::Approx(1.0).epsilon(1e-12));  // (k*2 + eta*0)/(k + eta)
}

TEST_CASE("closed-form solution zeroes the scalarized gradient") {
    const auto rewards = example_rewards();
    for (const Vec& w : {Vec{0.4, 0.6}, Vec{0.9, 0.1}, Vec{0.25, 0.75}}) {
        const ParamVector theta =
            train_quadratic_closed_form(rewards, w, 0.0, ParamVector({0.0, 0.0}));
        Vec grad(2, 0.0);
        for (int j = 0; j < 2; ++j) {
            const Vec g = gradient_quadratic(rewards[j], theta);
            for (int i = 0; i < 2; ++i) grad[i] += w[j] * g[i];
        }
        CHECK(std::fabs(grad[0]) < 1e-10);
        CHECK(std::fabs(grad[1]) < 1e-10);
    }
}

TEST_CASE("gradient trainer matches the closed form on random instances") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    std::uniform_real_distribution<double> kdist(0.2, 5.0);
    std::uniform_int_distribution<int> ddist(1, 8);

    TrainerConfig config;
    config.steps = 20000;
    config.learning_rate = 0.05;

    for (int trial = 0; trial < 100; ++trial) {
        const int d = ddist(rng);
        std::vector<QuadraticReward> rewards;
        for (int j = 0; j < 2; ++j) {
            Vec c(d);
            for (double& x : c) x = unif(rng);
            rewards.emplace_back(0.0, ParamVector(c), Curvature(kdist(rng)));
        }
        const Vec w = {0.3, 0.7};
        const ParamVector reference(Vec(d, 0.0));
        const double eta = 0.1;
        const ParamVector exact = train_quadratic_closed_form(rewards, w, eta, reference);

        const Objective objective = [&](const Vec& theta, Vec& grad) {
            grad.assign(d, 0.0);
            double value = 0.0;
            const ParamVector p(theta);
            for (int j = 0; j < 2; ++j) {
                value += w[j] * eval_quadratic(rewards[j], p);
                const Vec g = gradient_quadratic(rewards[j], p);
                for (int i = 0; i < d; ++i) grad[i] += w[j] * g[i];
            }
            for (int i = 0; i < d; ++i) {
                value -= eta * theta[i] * theta[i];
                grad[i] -= 2.0 * eta * theta[i];
            }
            return value;
        };
        const ParamVector iterated = train_gradient(objective, reference, config);
        for (int i = 0; i < d; ++i) {
            CHECK(std::fabs(iterated[i] - exact[i]) < 1e-6);
        }
    }
}

TEST_CASE("gradient trainer is a no-op at the maximizer") {
    const std::vector<QuadraticReward> r = {
        QuadraticReward(0.0, ParamVector({1.5, -2.0}), Curvature(2.0))};
    const Objective objective = [&](const Vec& theta, Vec& grad) {
        const ParamVector p(theta);
        grad = gradient_quadratic(r[0], p);
        return eval_quadratic(r[0], p);
    };
    TrainerConfig config;
    const ParamVector out = train_gradient(objective, r[0].maximizer, config);
    CHECK(out[0] == 1.5);
    CHECK(out[1] == -2.0);
}

TEST_CASE("gradient trainer detects divergence") {
    const auto rewards = example_rewards();
    const Objective h1 = [&](const Vec& theta, Vec& grad) {
        const ParamVector p(theta);
        grad.assign(2, 0.0);
        double value = 0.0;
        const Vec w = {0.4, 0.6};
        for (int j = 0; j < 2; ++j) {
            value += w[j] * eval_quadratic(rewards[j], p);
            const Vec g = gradient_quadratic(rewards[j], p);
            for (int i = 0; i < 2; ++i) grad[i] += w[j] * g[i];
        }
        return value;
    };
    TrainerConfig config;
    config.learning_rate = 1e6;
    config.steps = 100;
    CHECK_THROWS_AS(train_gradient(h1, ParamVector({10.0, 10.0}), config), NumericalError);
}

TEST_CASE("bandit Gibbs closed form on the 2-arm example") {
    const BanditEnvironment env(1, 2, {1.0}, {Matrix{{1.0, 0.0}}});
    const SoftmaxPolicy uniform(1, 2);
    const SoftmaxPolicy opt = bandit_kl_closed_form(env, {1.0}, 1.0, uniform);
    const Vec probs = opt.probs(0);
    CHECK(probs[0] == doctest::Approx(0.7310585786300049).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(0.2689414213699951).epsilon(1e-12));
}

TEST_CASE("huge eta pins the policy to the reference") {
    const BanditEnvironment env(1, 2, {1.0}, {Matrix{{1.0, 0.0}}});
    const SoftmaxPolicy reference(Matrix{{0.4, -0.3}});
    const SoftmaxPolicy opt = bandit_kl_closed_form(env, {1.0}, 1e6, reference);
    CHECK(tv_distance(opt.probs(0), reference.probs(0)) < 1e-6);
}

TEST_CASE("constant rewards leave the reference policy optimal") {
    const BanditEnvironment env(2, 3, {0.5, 0.5},
                                {Matrix{{0.7, 0.7, 0.7}, {0.2, 0.2, 0.2}}});
    const SoftmaxPolicy reference(Matrix{{1.0, 0.5, -0.5}, {0.0, 2.0, 1.0}});
    const SoftmaxPolicy opt = bandit_kl_closed_form(env, {1.0}, 0.5, reference);
    for (int s = 0; s < 2; ++s) CHECK(tv_distance(opt.probs(s), reference.probs(s)) < 1e-12);
}

TEST_CASE("doubling eta halves log-odds deviations from the reference") {
    const BanditEnvironment env(1, 3, {1.0}, {Matrix{{0.9, 0.1, 0.4}}});
    const SoftmaxPolicy reference(1, 3);
    const SoftmaxPolicy a = bandit_kl_closed_form(env, {1.0}, 1.0, reference);
    const SoftmaxPolicy b = bandit_kl_closed_form(env, {1.0}, 2.0, reference);
    const Vec pa = a.probs(0), pb = b.probs(0), pr = reference.probs(0);
    // log-odds relative to arm 0
    const double la = std::log(pa[1] / pa[0]) - std::log(pr[1] / pr[0]);
    const double lb = std::log(pb[1] / pb[0]) - std::log(pr[1] / pr[0]);
    CHECK(lb == doctest::Approx(0.5 * la).epsilon(1e-10));
}

TEST_CASE("iterative bandit trainer reaches the Gibbs optimum") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    TrainerConfig config;
    config.steps = 50000;
    config.learning_rate = 0.5;

    for (double eta : {0.05, 0.5, 1.0}) {
        const int C = 3, A = 10;
        std::vector<Matrix> tables(1, Matrix(C, Vec(A)));
        for (auto& row : tables[0]) {
            for (double& x : row) x = unif(rng);
        }
        const BanditEnvironment env(C, A, {0.2, 0.3, 0.5}, tables);
        const SoftmaxPolicy reference(C, A);
        const SoftmaxPolicy trained = train_bandit_kl(env, {1.0}, eta, reference, config);
        const SoftmaxPolicy exact = bandit_kl_closed_form(env, {1.0}, eta, reference);
        for (int s = 0; s < C; ++s) {
            CHECK(tv_distance(trained.probs(s), exact.probs(s)) < 1e-4);
        }
    }
}

TEST_CASE("train_backbones with identity equals single-reward maximizers") {
    const auto rewards = example_rewards();
    const World world = QuadraticWorld{rewards, ParamVector({0.0, 0.0})};
    TrainerConfig config;
    const BackboneSet set = train_backbones(identity_matrix(2), world, 0.0, config);
    CHECK(set.models[0].values() == rewards[0].maximizer.values());
    CHECK(set.models[1].values() == rewards[1].maximizer.values());
}

TEST_CASE("train_backbones with the circulant reproduces the toy example bones") {
    const auto rewards = example_rewards();
    const World world = QuadraticWorld{rewards, ParamVector({0.0, 0.0})};
    TrainerConfig config;
    const BackboneSet set = train_backbones(build_circulant(2, 0.6), world, 0.0, config);
    // model i maximizes column i of B: (0.6, 0.4) then (0.4, 0.6)
    CHECK(set.models[0][0] == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(set.models[0][1] == doctest::Approx(-5.0 / 11.0).epsilon(1e-12));
    CHECK(set.models[1][0] == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(set.models[1][1] == doctest::Approx(-5.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("select_beta basics") {
    const auto rewards = example_rewards();
    const World world = QuadraticWorld{rewards, ParamVector({0.0, 0.0})};
    TrainerConfig config;
    const std::vector<PreferenceVector> prefs = {make_preference({0.2, 0.8}),
                                                 make_preference({0.5, 0.5}),
                                                 make_preference({0.8, 0.2})};
    const Vec ref = {-30.0, -30.0};
    CHECK(select_beta({0.7}, world, 0.0, config, prefs, ref) == 0.7);
    const double chosen = select_beta({0.8, 0.7, 0.6}, world, 0.0, config, prefs, ref);
    CHECK((chosen == 0.6 || chosen == 0.7 || chosen == 0.8));
    CHECK_THROWS_AS(select_beta({}, world, 0.0, config, prefs, ref), ConfigError);
}

TEST_CASE("trainer config validation") {
    TrainerConfig bad;
    bad.eta = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = TrainerConfig{};
    bad.steps = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = TrainerConfig{};
    bad.budget_fraction = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
