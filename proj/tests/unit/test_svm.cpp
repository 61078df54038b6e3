#include <doctest.h>

#include <random>

#include "iarq/datasets.hpp"
#include "iarq/errors.hpp"
#include "iarq/svm.hpp"
#include "oracles.hpp"

using namespace iarq;

namespace {

Sample point(std::initializer_list<double> x, int y) {
    Sample s;
    s.features = Eigen::Map<const Vector>(x.begin(), static_cast<Eigen::Index>(x.size()));
    s.label = y;
    return s;
}

SampleList random_instance(std::mt19937_64& rng, int n, int p, double separation) {
    std::normal_distribution<double> g(0.0, 1.0);
    SampleList data;
    for (int i = 0; i < n; ++i) {
        Sample s;
        s.label = i % 2 == 0 ? 1 : -1;
        s.features = Vector(p);
        for (int j = 0; j < p; ++j) s.features[j] = g(rng) + (j == 0 ? separation * s.label : 0.0);
        data.push_back(s);
    }
    return data;
}

} // namespace

TEST_CASE("score is normalized and scale invariant") {
    const Vector x = (Vector(2) << 2.0, 0.0).finished();
    CHECK(score({(Vector(2) << 1.0, 0.0).finished(), 0.0}, x) == doctest::Approx(2.0));
    CHECK(score({(Vector(2) << 3.0, 0.0).finished(), 0.0}, x) == doctest::Approx(2.0));
    const LinearBoundary b{(Vector(2) << 1.0, -2.0).finished(), 0.5};
    CHECK(score(b, (Vector(2) << -0.5, 0.0).finished()) == doctest::Approx(0.0));
    const Vector y = (Vector(2) << 0.3, 0.7).finished();
    for (double lambda : {0.01, 1.0, 123.0}) {
        const LinearBoundary scaled{b.weights * lambda, b.bias * lambda};
        CHECK(std::abs(score(scaled, y) - score(b, y)) < 1e-12);
    }
    CHECK_THROWS_AS(score({Vector::Zero(2), 1.0}, x), UntrainedModelError);
}

TEST_CASE("symmetric two-point problem") {
    const SampleList data{point({1.0, 0.0}, 1), point({-1.0, 0.0}, -1)};
    const auto fit = train_binary_svm(data, {});
    CHECK(fit.converged);
    CHECK(fit.boundary.weights[1] == doctest::Approx(0.0));
    CHECK(fit.boundary.weights[0] > 0.0);
    CHECK(fit.boundary.bias == doctest::Approx(0.0));
    CHECK(score(fit.boundary, (Vector(2) << 2.0, 0.0).finished()) == doctest::Approx(2.0));

    SampleList dup = data;
    dup.push_back(data[0]);
    dup.push_back(data[1]);
    const auto fit2 = train_binary_svm(dup, {});
    CHECK(fit2.boundary.weights[0] == doctest::Approx(fit.boundary.weights[0]).epsilon(1e-3));
    CHECK(fit2.boundary.bias == doctest::Approx(fit.boundary.bias).epsilon(1e-3));
}

TEST_CASE("single-class input is rejected") {
    const SampleList data{point({1.0, 0.0}, 1), point({2.0, 0.0}, 1)};
    CHECK_THROWS_AS(train_binary_svm(data, {}), InsufficientClassesError);
    SvmTrainConfig bad;
    bad.slack_penalty = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("separable blobs: perfect training accuracy and QP agreement") {
    SyntheticSpec spec;
    spec.class_means = {(Vector(2) << 3.0, 0.0).finished(), (Vector(2) << -3.0, 0.0).finished()};
    spec.covariance_scale = 0.25;
    spec.samples_per_class = 20;
    spec.seed = 5;
    SampleList data = make_synthetic(spec);
    for (auto& s : data) s.label = s.label == 0 ? 1 : -1;
    const auto fit = train_binary_svm(data, {});
    for (const auto& s : data) CHECK((score(fit.boundary, s.features) > 0.0) == (s.label > 0));
    const auto qp = oracle::svm_dual_qp(data, 1.0);
    CHECK(std::abs(fit.dual_objective - qp.objective) <= 1e-4 * std::abs(qp.objective));
}

TEST_CASE("dual objective matches the QP oracle on random instances") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(6, 50), dim(2, 8);
    for (int k = 0; k < 20; ++k) {
        const auto data = random_instance(rng, size(rng), dim(rng), k % 2 ? 0.5 : 2.0);
        SvmTrainConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(k);
        const auto fit = train_binary_svm(data, cfg);
        const auto qp = oracle::svm_dual_qp(data, 1.0);
        CHECK(fit.converged);
        CHECK(std::abs(fit.dual_objective - qp.objective) <= 1e-4 * std::abs(qp.objective));
        CHECK(svm_dual_objective(data, fit.alpha) == doctest::Approx(fit.dual_objective).epsilon(1e-9));
        for (double a : fit.alpha) {
            CHECK(a >= 0.0);
            CHECK(a <= 1.0);
        }
    }
}

TEST_CASE("incremental trainer agrees with training from scratch") {
    std::mt19937_64 rng(77);
    const auto data = random_instance(rng, 40, 4, 1.0);
    SampleList pool;
    BinarySvmTrainer trainer(SvmTrainConfig{});
    for (const auto& s : data) {
        pool.push_back(s);
        trainer.add(pool.size() - 1, s.label, pool);
        if (trainer.has_both_classes()) trainer.fit(pool);
    }
    const auto warm = trainer.fit(pool);
    const auto cold = train_binary_svm(data, {});
    CHECK(warm.dual_objective == doctest::Approx(cold.dual_objective).epsilon(1e-4));
}

TEST_CASE("iteration cap reports non-convergence") {
    std::mt19937_64 rng(3);
    const auto data = random_instance(rng, 50, 5, 0.2);
    SvmTrainConfig cfg;
    cfg.max_iterations = 10;
    const auto fit = train_binary_svm(data, cfg);
    CHECK_FALSE(fit.converged);
    CHECK(fit.iterations == 10);
}
