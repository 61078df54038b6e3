#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "iarq/arq.hpp"
#include "iarq/errors.hpp"
#include "iarq/multiclass_svm.hpp"
#include "oracles.hpp"

using namespace iarq;

TEST_CASE("distance uncertainty") {
    CHECK(distance_uncertainty(2.0).value() == doctest::Approx(0.25));
    CHECK(distance_uncertainty(-2.0).value() == doctest::Approx(0.25));
    CHECK(distance_uncertainty(0.0).is_infinite());
    CHECK(distance_uncertainty(1e-13).is_infinite());
    CHECK_FALSE(distance_uncertainty(1e-11).is_infinite());
    CHECK(Uncertainty(1e300) < Uncertainty::infinite());
    CHECK_FALSE(Uncertainty::infinite() < Uncertainty(1e300));
}

TEST_CASE("entropy uncertainty") {
    const std::vector<double> uniform(4, 0.25);
    CHECK(entropy_uncertainty(uniform) == doctest::Approx(std::log(4.0)));
    CHECK(entropy_uncertainty(uniform) == doctest::Approx(1.3863).epsilon(1e-4));
    const std::vector<double> onehot{0.0, 1.0, 0.0};
    CHECK(entropy_uncertainty(onehot) == 0.0);
    const std::vector<double> bad{0.5, 0.6};
    CHECK_THROWS_AS(entropy_uncertainty(bad), InvalidPosteriorError);
    const std::vector<double> negative{1.5, -0.5};
    CHECK_THROWS_AS(entropy_uncertainty(negative), InvalidPosteriorError);

    std::mt19937_64 rng(4);
    std::gamma_distribution<double> g(0.3, 1.0);
    for (int i = 0; i < 2000; ++i) {
        std::vector<double> p(10);
        double s = 0.0;
        for (auto& v : p) s += (v = g(rng));
        for (auto& v : p) v /= s;
        const double h = entropy_uncertainty(p);
        CHECK(h >= 0.0);
        CHECK(h <= 2.3026);
    }
}

TEST_CASE("alignment probability") {
    CHECK(alignment_probability(0.0, 3.0) == 0.5);
    CHECK(alignment_probability(1.0, 2.0) == doctest::Approx(0.5 * (1.0 + std::erf(1.0))));
    CHECK(alignment_probability(1.0, 2.0) == doctest::Approx(0.92135).epsilon(1e-5));
    CHECK(alignment_probability(-1.0, 2.0) == alignment_probability(1.0, 2.0));
    double last = 0.5;
    for (double snr = 0.1; snr < 200.0; snr *= 1.5) {
        const double p = alignment_probability(0.4, snr);
        CHECK(p >= last);
        last = p;
    }
    CHECK(last > 0.999999);
    CHECK_THROWS_AS(alignment_probability(1.0, 0.0), UsageError);
}

TEST_CASE("alignment probability against sampling the score distribution") {
    // score ~ N(s, 1/SNR): fraction on the positive side.
    std::mt19937_64 rng(99);
    const double s = 1.0, snr = 2.0;
    std::normal_distribution<double> score(s, std::sqrt(1.0 / snr));
    const int n = 1000000;
    int positive = 0;
    for (int i = 0; i < n; ++i) positive += score(rng) > 0.0;
    const double expected = alignment_probability(s, snr);
    CHECK(std::abs(positive / double(n) - expected) < 3.0 * oracle::binomial_se(expected, n));
}

TEST_CASE("conversion ratio from alignment probability") {
    CHECK(theta0_from_pc(0.8) == doctest::Approx(0.7083).epsilon(1e-4));
    CHECK(theta0_from_pc(0.999) == doctest::Approx(9.550).epsilon(1e-3));
    CHECK(theta0_from_pc(0.5 + 1e-12) < 1e-20);
    for (double pc : {0.6, 0.73, 0.8, 0.9, 0.999}) {
        CHECK(alignment_probability(1.0, theta0_from_pc(pc)) == doctest::Approx(pc).epsilon(1e-12));
        const double r = std::sqrt(2.0) * oracle::erf_inv_bisect(2.0 * pc - 1.0);
        CHECK(theta0_from_pc(pc) == doctest::Approx(r * r).epsilon(1e-9));
    }
    double last = 0.0;
    for (double pc = 0.51; pc < 0.999; pc += 0.01) {
        CHECK(theta0_from_pc(pc) > last);
        last = theta0_from_pc(pc);
    }
    for (double bad : {0.5, 1.0, 0.3, 1.2}) CHECK_THROWS_AS(theta0_from_pc(bad), ConfigError);
}

TEST_CASE("binary SVM policy") {
    ArqConfig cfg = ArqConfig::importance_svm(0.8, 1000.0);
    const auto t = decide_binary_svm(1.0, 0.5, cfg);
    CHECK(t.snr_threshold == doctest::Approx(0.7083).epsilon(1e-4));
    CHECK(t.decision == Decision::retransmit);
    const auto boundary = decide_binary_svm(0.0, 999.0, cfg);
    CHECK(boundary.uncertainty.is_infinite());
    CHECK(boundary.snr_threshold == 1000.0);
    CHECK(boundary.decision == Decision::retransmit);
    CHECK(decide_binary_svm(0.0, 1000.5, cfg).decision == Decision::accept);
    for (double s : {0.0, 1e-6, 0.1, 5.0}) CHECK(decide_binary_svm(s, 1000.01, cfg).decision == Decision::accept);
}

TEST_CASE("binary SVM policy matches the alignment check") {
    const double pc = 0.8;
    const ArqConfig cfg = ArqConfig::importance_svm(pc, 1e9);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> score(-3.0, 3.0), log_snr(-3.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const double s = score(rng);
        const double snr = std::exp(log_snr(rng));
        const auto t = decide_binary_svm(s, snr, cfg);
        REQUIRE(t.snr_threshold < cfg.max_snr_threshold);
        CHECK((t.decision == Decision::accept) == (alignment_probability(s, snr) > pc));
    }
}

TEST_CASE("channel-aware policy ignores uncertainty") {
    const ArqConfig cfg = ArqConfig::channel_aware(10.0);
    CHECK(decide_channel_aware(10.0 + 1e-9, cfg).decision == Decision::accept);
    CHECK(decide_channel_aware(10.0, cfg).decision == Decision::retransmit);
    CHECK(decide_none(0.01).decision == Decision::accept);
}

TEST_CASE("entropy policy") {
    const ArqConfig cfg = ArqConfig::importance_entropy(10.0, 1000.0, 10);
    CHECK(cfg.entropy_scaling == doctest::Approx(99.0 / std::log(10.0)));
    CHECK(cfg.entropy_scaling == doctest::Approx(42.996).epsilon(1e-4));
    CHECK(entropy_threshold(1.0, cfg) == doctest::Approx(10.0 * (1.0 + 99.0 / std::log(10.0))));
    CHECK(entropy_threshold(1.0, cfg) == doctest::Approx(439.96).epsilon(1e-4));
    CHECK(entropy_threshold(0.0, cfg) == 10.0);
    CHECK(entropy_threshold(std::log(10.0), cfg) == 1000.0);

    const std::vector<double> uniform(10, 0.1);
    CHECK(decide_entropy(uniform, 1000.0, cfg).decision == Decision::retransmit);
    CHECK(decide_entropy(uniform, 1000.1, cfg).decision == Decision::accept);
    std::vector<double> onehot(10, 0.0);
    onehot[3] = 1.0;
    CHECK(decide_entropy(onehot, 10.0, cfg).snr_threshold == 10.0);
    CHECK(decide_entropy(onehot, 10.01, cfg).decision == Decision::accept);
    const std::vector<double> bad(10, 0.2);
    CHECK_THROWS_AS(decide_entropy(bad, 5.0, cfg), InvalidPosteriorError);

    CHECK_THROWS_AS(ArqConfig::importance_entropy(10.0, 5.0, 10), ConfigError);
    CHECK_THROWS_AS(ArqConfig::importance_entropy(10.0, 100.0, 1), ConfigError);
}

TEST_CASE("thresholds are monotone in uncertainty and capped") {
    const ArqConfig svm = ArqConfig::importance_svm(0.9, 50.0);
    const ArqConfig ent = ArqConfig::importance_entropy(2.0, 50.0, 4);
    double last_svm = 0.0, last_ent = 0.0;
    for (double u = 0.0; u < 100.0; u += 0.05) {
        const double s = u > 0.0 ? 1.0 / std::sqrt(u) : 1e6;
        const double ts = decide_binary_svm(s, 1.0, svm).snr_threshold;
        CHECK(ts >= last_svm - 1e-12);
        CHECK(ts <= 50.0);
        last_svm = ts;
        const double e = std::min(u / 10.0, std::log(4.0));
        const double te = entropy_threshold(e, ent);
        CHECK(te >= last_ent);
        CHECK(te <= 50.0);
        last_ent = te;
    }
    CHECK(last_svm == 50.0);
    CHECK(last_ent == 50.0);
}

TEST_CASE("multiclass policy uses only active components") {
    const CodingMatrix m(4);
    const ArqConfig cfg = ArqConfig::importance_svm(0.8, 1000.0, true);
    // Predicted class index 1 is active on columns 0, 3, 4.
    std::vector<double> scores{0.5, 1e-9, 0.0, 2.0, 1.0, 0.0};
    const auto t = decide_multiclass_svm(scores, 1, m, 1.0, cfg);
    CHECK(t.snr_threshold == doctest::Approx(cfg.conversion_ratio / 0.25));
    for (double noise : {-1e-9, 0.0, 7.0}) {
        auto s2 = scores;
        s2[1] = s2[2] = s2[5] = noise;
        CHECK(decide_multiclass_svm(s2, 1, m, 1.0, cfg).snr_threshold == t.snr_threshold);
    }
    scores[4] = 0.0;
    CHECK(decide_multiclass_svm(scores, 1, m, 1.0, cfg).snr_threshold == 1000.0);
    const std::vector<double> far(6, 50.0);
    const auto easy = decide_multiclass_svm(far, 0, m, 0.01, cfg);
    CHECK(easy.snr_threshold < 0.01);
    CHECK(easy.decision == Decision::accept);
}

TEST_CASE("multiclass policy with two classes equals the binary policy") {
    const CodingMatrix m(2);
    const ArqConfig multi = ArqConfig::importance_svm(0.73, 30.0, true);
    const ArqConfig binary = ArqConfig::importance_svm(0.73, 30.0, false);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> score(-2.0, 2.0), snr(0.0, 40.0);
    for (int i = 0; i < 5000; ++i) {
        const std::vector<double> s{score(rng)};
        const double r = snr(rng);
        const auto a = decide_multiclass_svm(s, m.decode(s), m, r, multi);
        const auto b = decide_binary_svm(s[0], r, binary);
        CHECK(a.decision == b.decision);
        CHECK(a.snr_threshold == b.snr_threshold);
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(ArqConfig::importance_svm(0.3, 10.0), ConfigError);
    CHECK_THROWS_AS(ArqConfig::channel_aware(0.0), ConfigError);
    CHECK(policy_kind_from_string("importance_entropy") == PolicyKind::importance_entropy);
    CHECK_THROWS_AS(policy_kind_from_string("bogus"), ConfigError);
}
