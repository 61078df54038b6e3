#include "iarq/channel.hpp"

#include <cmath>
#include <string>

#include "iarq/errors.hpp"

namespace iarq {

ChannelConfig ChannelConfig::from_snr_db(double snr_db, std::uint64_t seed) {
    ChannelConfig cfg;
    cfg.transmit_power = db_to_linear(snr_db);
    cfg.noise_variance = 1.0;
    cfg.rng_seed = seed;
    cfg.validate();
    return cfg;
}

double ChannelConfig::average_snr_db() const { return linear_to_db(average_snr()); }

void ChannelConfig::validate() const {
    if (!(transmit_power > 0.0) || !std::isfinite(transmit_power))
        throw ConfigError("transmit_power must be positive, got " + std::to_string(transmit_power));
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance))
        throw ConfigError("noise_variance must be positive, got " + std::to_string(noise_variance));
}

Channel::Channel(ChannelConfig cfg) : cfg_(cfg) { cfg_.validate(); }

TransmissionAttempt Channel::transmit(std::span<const double> features, Rng& rng) const {
    std::normal_distribution<double> unit(0.0, std::sqrt(0.5));
    const double re = unit(rng);
    const double im = unit(rng);
    return transmit_with_fading(features, {re, im}, rng);
}

TransmissionAttempt Channel::transmit_with_fading(std::span<const double> features,
                                                  std::complex<double> fading, Rng& rng) const {
    for (double v : features) {
        if (!std::isfinite(v)) throw InputError("transmit: non-finite feature value");
    }
    const double amplitude = std::sqrt(cfg_.transmit_power);
    std::normal_distribution<double> noise(0.0, std::sqrt(cfg_.noise_variance / 2.0));

    TransmissionAttempt out;
    out.fading = fading;
    out.received.resize(static_cast<Eigen::Index>(features.size()));
    for (std::size_t j = 0; j < features.size(); ++j) {
        const double zr = noise(rng);
        const double zi = noise(rng);
        out.received[static_cast<Eigen::Index>(j)] =
            amplitude * fading * features[j] + std::complex<double>(zr, zi);
    }
    return out;
}

double Channel::attempt_snr(const TransmissionAttempt& attempt) const {
    return 2.0 * cfg_.transmit_power / cfg_.noise_variance * std::norm(attempt.fading);
}

CombinedSample Channel::finish(Eigen::VectorXcd weighted_sum, double gain_sum, int count) const {
    if (gain_sum < kMinChannelGain)
        throw DegenerateChannelError("combine: total channel gain below " + std::to_string(kMinChannelGain));
    CombinedSample out;
    out.estimate = weighted_sum.real() / (gain_sum * std::sqrt(cfg_.transmit_power));
    out.effective_snr = 2.0 * cfg_.transmit_power / cfg_.noise_variance * gain_sum;
    out.attempt_count = count;
    out.weighted_sum = std::move(weighted_sum);
    out.gain_sum = gain_sum;
    return out;
}

CombinedSample Channel::combine(std::span<const TransmissionAttempt> attempts) const {
    if (attempts.empty()) throw UsageError("combine: no attempts");
    const Eigen::Index p = attempts.front().received.size();
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(p);
    double gain = 0.0;
    for (const auto& a : attempts) {
        if (a.received.size() != p) throw UsageError("combine: attempts differ in dimension");
        sum += std::conj(a.fading) * a.received;
        gain += std::norm(a.fading);
    }
    return finish(std::move(sum), gain, static_cast<int>(attempts.size()));
}

CombinedSample Channel::add_attempt(const CombinedSample& current,
                                    const TransmissionAttempt& attempt) const {
    if (current.attempt_count == 0) {
        return combine(std::span<const TransmissionAttempt>(&attempt, 1));
    }
    if (attempt.received.size() != current.weighted_sum.size())
        throw UsageError("add_attempt: dimension mismatch");
    Eigen::VectorXcd sum = current.weighted_sum + std::conj(attempt.fading) * attempt.received;
    return finish(std::move(sum), current.gain_sum + std::norm(attempt.fading),
                  current.attempt_count + 1);
}

} // namespace iarq
