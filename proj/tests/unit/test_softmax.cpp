#include <doctest.h>

#include <random>

#include "iarq/datasets.hpp"
#include "iarq/errors.hpp"
#include "iarq/softmax.hpp"

using namespace iarq;

namespace {

SampleList toy(std::uint64_t seed, int classes, int p, int per_class) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    SampleList out;
    for (int c = 0; c < classes; ++c)
        for (int i = 0; i < per_class; ++i) {
            Sample s;
            s.features = Vector(p);
            for (int j = 0; j < p; ++j) s.features[j] = g(rng) + (j == c ? 2.0 : 0.0);
            s.label = c;
            out.push_back(s);
        }
    return out;
}

SoftmaxModel random_model(std::uint64_t seed, int classes, int p) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.5);
    SoftmaxModel m = SoftmaxModel::zeros(classes, p);
    for (int c = 0; c < classes; ++c) {
        m.bias[c] = g(rng);
        for (int j = 0; j < p; ++j) m.weights(c, j) = g(rng);
    }
    return m;
}

} // namespace

TEST_CASE("posterior is a probability vector") {
    const auto m = random_model(1, 5, 4);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        Vector x(4);
        for (int j = 0; j < 4; ++j) x[j] = g(rng);
        const Vector p = posterior(m, x);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(std::abs(p.sum() - 1.0) < 1e-9);
        Eigen::Index arg;
        p.maxCoeff(&arg);
        CHECK(predict(m, x) == static_cast<int>(arg));
    }
}

TEST_CASE("zero model gives the uniform posterior") {
    const Vector p = posterior(SoftmaxModel::zeros(4, 3), Vector::Ones(3));
    for (int c = 0; c < 4; ++c) CHECK(p[c] == doctest::Approx(0.25));
}

TEST_CASE("shifting all logits leaves the posterior unchanged") {
    auto m = random_model(3, 3, 2);
    const Vector x = (Vector(2) << 0.4, -1.0).finished();
    const Vector before = posterior(m, x);
    m.bias.array() += 1000.0;
    const Vector after = posterior(m, x);
    for (int c = 0; c < 3; ++c) CHECK(after[c] == doctest::Approx(before[c]).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences") {
    const auto data = toy(4, 3, 5, 4);
    for (double wd : {0.0, 0.1}) {
        const auto m = random_model(5, 3, 5);
        const auto g = loss_and_gradient(m, data, wd);
        const double h = 1e-6;
        for (int c = 0; c < 3; ++c) {
            for (int j = 0; j < 5; ++j) {
                auto plus = m, minus = m;
                plus.weights(c, j) += h;
                minus.weights(c, j) -= h;
                const double fd = (loss_and_gradient(plus, data, wd).loss - loss_and_gradient(minus, data, wd).loss) / (2 * h);
                CHECK(g.weights(c, j) == doctest::Approx(fd).epsilon(1e-5));
            }
            auto plus = m, minus = m;
            plus.bias[c] += h;
            minus.bias[c] -= h;
            const double fd = (loss_and_gradient(plus, data, wd).loss - loss_and_gradient(minus, data, wd).loss) / (2 * h);
            CHECK(g.bias[c] == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("one sample per class is memorized") {
    const auto data = toy(6, 4, 6, 1);
    SoftmaxTrainConfig cfg;
    cfg.epochs = 300;
    cfg.batch_size = 4;
    const auto fit = train_softmax(data, 4, nullptr, cfg);
    for (const auto& s : data) CHECK(predict(fit.model, s.features) == s.label);
}

TEST_CASE("loss decreases across epochs and confident predictions emerge") {
    SyntheticSpec spec;
    spec.class_means = {Vector::Constant(2, 3.0), Vector::Constant(2, -3.0), (Vector(2) << 3.0, -3.0).finished()};
    spec.covariance_scale = 0.1;
    spec.samples_per_class = 30;
    spec.seed = 9;
    const auto data = make_synthetic(spec);
    SoftmaxTrainConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.epochs = 200;
    cfg.batch_size = 16;
    const auto fit = train_softmax(data, 3, nullptr, cfg);
    REQUIRE(fit.epoch_losses.size() == 200);
    CHECK(fit.epoch_losses.back() < fit.epoch_losses.front());
    // Nonincreasing within a small stochastic tolerance.
    for (std::size_t e = 1; e < fit.epoch_losses.size(); ++e)
        CHECK(fit.epoch_losses[e] <= fit.epoch_losses[e - 1] + 0.05 * fit.epoch_losses.front());
    for (const auto& s : data) CHECK(posterior(fit.model, s.features).maxCoeff() > 0.99);
}

TEST_CASE("warm start continues from the given parameters") {
    const auto data = toy(7, 3, 4, 10);
    SoftmaxTrainConfig cfg;
    cfg.epochs = 5;
    const auto first = train_softmax(data, 3, nullptr, cfg);
    const auto second = train_softmax(data, 3, &first.model, cfg);
    CHECK(second.epoch_losses.back() <= first.epoch_losses.back() + 1e-9);
    cfg.epochs = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("training errors") {
    SoftmaxTrainConfig cfg;
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(train_softmax(toy(1, 2, 2, 2), 2, nullptr, cfg), ConfigError);
    const auto single = toy(1, 1, 2, 3);
    CHECK_THROWS_AS(train_softmax(single, 2, nullptr, SoftmaxTrainConfig{}), InsufficientClassesError);
}
