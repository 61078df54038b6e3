#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "iarq/channel.hpp"
#include "iarq/errors.hpp"

using namespace iarq;

namespace {

ChannelConfig config(double power, double noise) {
    ChannelConfig c;
    c.transmit_power = power;
    c.noise_variance = noise;
    return c;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double kurtosis = 0.0;
};

Moments moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = (x - m.mean) * (x - m.mean);
        m2 += d;
        m4 += d * d;
    }
    m.variance = m2 / (n - 1.0);
    m.kurtosis = (m4 / n) / ((m2 / n) * (m2 / n));
    return m;
}

} // namespace

TEST_CASE("config validation and dB conversion") {
    CHECK_THROWS_AS(Channel(config(0.0, 1.0)), ConfigError);
    CHECK_THROWS_AS(Channel(config(1.0, -1.0)), ConfigError);
    CHECK_THROWS_AS(Channel(config(std::numeric_limits<double>::infinity(), 1.0)), ConfigError);
    const auto c = ChannelConfig::from_snr_db(4.0);
    CHECK(c.average_snr() == doctest::Approx(std::pow(10.0, 0.4)).epsilon(1e-12));
    CHECK(c.average_snr() == doctest::Approx(2.5119).epsilon(1e-4));
    CHECK(c.average_snr_db() == doctest::Approx(4.0));
}

TEST_CASE("noiseless transmission is sqrt(P) h x") {
    const Channel ch(config(4.0, 1e-300));
    Rng rng(1);
    const std::vector<double> x{1.0, 0.0};
    const auto a = ch.transmit_with_fading(x, {1.0, 0.0}, rng);
    CHECK(a.received[0].real() == doctest::Approx(2.0));
    CHECK(a.received[0].imag() == doctest::Approx(0.0));
    CHECK(std::abs(a.received[1]) < 1e-100);
}

TEST_CASE("non-finite features are rejected") {
    const Channel ch(config(1.0, 1.0));
    Rng rng(1);
    const std::vector<double> x{1.0, std::nan("")};
    CHECK_THROWS_AS(ch.transmit(x, rng), InputError);
}

TEST_CASE("received noise has the configured variance") {
    const Channel ch(config(1.0, 1.0));
    Rng rng(7);
    const std::vector<double> x{0.3, -1.2, 0.8};
    std::vector<double> re, im;
    for (int i = 0; i < 100000; ++i) {
        const auto a = ch.transmit(x, rng);
        const auto z = a.received[1] - a.fading * x[1];
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    // Complex variance = var(re) + var(im) = sigma^2.
    const double var = moments(re).variance + moments(im).variance;
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("fading draws are fresh and unit-variance") {
    const Channel ch(config(1.0, 1.0));
    Rng rng(3);
    const std::vector<double> x{1.0};
    const auto a = ch.transmit(x, rng);
    const auto b = ch.transmit(x, rng);
    CHECK(a.fading != b.fading);
    double power = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) power += std::norm(ch.transmit(x, rng).fading);
    CHECK(std::abs(power / n - 1.0) < 0.02);
}

TEST_CASE("combine: noiseless single attempt recovers x") {
    const Channel ch(config(3.0, 1e-300));
    Rng rng(2);
    const std::vector<double> x{0.25, -0.5, 1.0};
    const std::vector<TransmissionAttempt> attempts{ch.transmit_with_fading(x, {0.3, -1.1}, rng)};
    const auto c = ch.combine(attempts);
    for (int j = 0; j < 3; ++j) CHECK(c.estimate[j] == doctest::Approx(x[static_cast<std::size_t>(j)]).epsilon(1e-12));
    CHECK(c.attempt_count == 1);
}

TEST_CASE("combine: effective SNR arithmetic") {
    const Channel ch(config(2.0, 1.0));
    Rng rng(2);
    const std::vector<double> x{1.0};
    const std::vector<TransmissionAttempt> attempts{ch.transmit_with_fading(x, {std::sqrt(0.5), 0.0}, rng),
                                                    ch.transmit_with_fading(x, {0.0, std::sqrt(1.5)}, rng)};
    const auto c = ch.combine(attempts);
    CHECK(c.effective_snr == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(c.effective_snr == doctest::Approx(ch.attempt_snr(attempts[0]) + ch.attempt_snr(attempts[1])));
}

TEST_CASE("combine: usage and degenerate errors") {
    const Channel ch(config(1.0, 1.0));
    Rng rng(2);
    CHECK_THROWS_AS(ch.combine({}), UsageError);
    const std::vector<double> x2{1.0, 2.0};
    const std::vector<double> x3{1.0, 2.0, 3.0};
    const std::vector<TransmissionAttempt> mixed{ch.transmit(x2, rng), ch.transmit(x3, rng)};
    CHECK_THROWS_AS(ch.combine(mixed), UsageError);
    const std::vector<TransmissionAttempt> dead{ch.transmit_with_fading(x2, {0.0, 0.0}, rng)};
    CHECK_THROWS_AS(ch.combine(dead), DegenerateChannelError);
    const auto first = ch.combine(std::vector<TransmissionAttempt>{ch.transmit(x2, rng)});
    CHECK_THROWS_AS(ch.add_attempt(first, ch.transmit(x3, rng)), UsageError);
}

TEST_CASE("incremental combining equals batch combining") {
    const Channel ch(config(2.5, 1.0));
    Rng rng(11);
    const std::vector<double> x{0.1, 0.9, 0.4, 0.0};
    std::vector<TransmissionAttempt> attempts;
    CombinedSample running;
    double last_snr = 0.0;
    for (int t = 1; t <= 3; ++t) {
        attempts.push_back(ch.transmit(x, rng));
        running = ch.add_attempt(running, attempts.back());
        CHECK(running.attempt_count == t);
        CHECK(running.effective_snr > last_snr);
        last_snr = running.effective_snr;
    }
    const auto batch = ch.combine(attempts);
    CHECK(batch.attempt_count == 3);
    CHECK(running.effective_snr == doctest::Approx(batch.effective_snr).epsilon(1e-12));
    for (int j = 0; j < 4; ++j) CHECK(running.estimate[j] == doctest::Approx(batch.estimate[j]).epsilon(1e-9));
}

TEST_CASE("MRC noise variance at fixed unit gains is 1/SNR") {
    // x = 0, P = 1, sigma^2 = 1, four attempts with |h|^2 = 1: SNR(4) = 8.
    const Channel ch(config(1.0, 1.0));
    Rng rng(5);
    const std::vector<double> x{0.0, 0.0};
    const std::complex<double> fades[4] = {{1, 0}, {0, 1}, {-1, 0}, {std::sqrt(0.5), std::sqrt(0.5)}};
    std::vector<double> est;
    for (int i = 0; i < 100000; ++i) {
        std::vector<TransmissionAttempt> a;
        for (const auto& h : fades) a.push_back(ch.transmit_with_fading(x, h, rng));
        const auto c = ch.combine(a);
        CHECK(c.effective_snr == doctest::Approx(8.0));
        est.push_back(c.estimate[0]);
    }
    const auto m = moments(est);
    CHECK(std::abs(m.variance - 1.0 / 8.0) / (1.0 / 8.0) < 0.03);
    CHECK(m.kurtosis > 2.8);
    CHECK(m.kurtosis < 3.2);
}

TEST_CASE("MRC estimate is unbiased") {
    const Channel ch(config(2.0, 1.0));
    Rng rng(9);
    const std::vector<double> x{0.7, -0.2, 0.0};
    const std::complex<double> h1{0.4, -0.9}, h2{1.3, 0.2};
    const int n = 20000;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < n; ++i) {
        const std::vector<TransmissionAttempt> a{ch.transmit_with_fading(x, h1, rng), ch.transmit_with_fading(x, h2, rng)};
        sum += ch.combine(a).estimate;
    }
    const double snr = 2.0 * 2.0 * (std::norm(h1) + std::norm(h2));
    const double se = std::sqrt(1.0 / snr / n);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(sum[j] / n - x[static_cast<std::size_t>(j)]) < 3.0 * se);
}

TEST_CASE("same seed gives identical attempts") {
    const Channel ch(config(1.0, 1.0));
    const std::vector<double> x{0.5, 0.5};
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) {
        const auto ta = ch.transmit(x, a);
        const auto tb = ch.transmit(x, b);
        CHECK(ta.fading == tb.fading);
        CHECK(ta.received == tb.received);
    }
}
