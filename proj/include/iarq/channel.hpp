#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "iarq/types.hpp"

namespace iarq {

/// Analog link parameters. Average transmit SNR is transmit_power / noise_variance.
struct ChannelConfig {
    double transmit_power = 1.0;
    double noise_variance = 1.0; ///< per complex dimension
    std::uint64_t rng_seed = 0;

    /// Unit noise variance, transmit power set from the average SNR in dB.
    static ChannelConfig from_snr_db(double snr_db, std::uint64_t seed = 0);

    double average_snr() const { return transmit_power / noise_variance; }
    double average_snr_db() const;

    /// Throws ConfigError unless both power and noise variance are positive and finite.
    void validate() const;
};

/// One symbol block: the fading draw and the received complex vector.
struct TransmissionAttempt {
    std::complex<double> fading;
    Eigen::VectorXcd received;
};

/// Maximal-ratio-combined estimate of a sample.
///
/// Besides the public estimate it keeps the running sums the incremental update needs,
/// so extending by one attempt costs O(p).
struct CombinedSample {
    Vector estimate;
    double effective_snr = 0.0;
    int attempt_count = 0;

    Eigen::VectorXcd weighted_sum; ///< sum of conj(h_i) * y_i
    double gain_sum = 0.0;         ///< sum of |h_i|^2
};

/// Sums of |h|^2 below this are treated as a dead channel.
inline constexpr double kMinChannelGain = 1e-12;

/// Rayleigh block-fading channel with AWGN. Immutable once constructed.
class Channel {
public:
    explicit Channel(ChannelConfig cfg);

    const ChannelConfig& config() const { return cfg_; }

    /// Draws h ~ CN(0,1), then noise ~ CN(0, noise_variance) per entry, in that order.
    TransmissionAttempt transmit(std::span<const double> features, Rng& rng) const;

    /// Same as transmit() with a caller-chosen fading coefficient; only noise is drawn.
    TransmissionAttempt transmit_with_fading(std::span<const double> features,
                                             std::complex<double> fading, Rng& rng) const;

    CombinedSample combine(std::span<const TransmissionAttempt> attempts) const;

    /// Folds one more attempt into an existing combination.
    CombinedSample add_attempt(const CombinedSample& current,
                               const TransmissionAttempt& attempt) const;

    /// Effective SNR of a single attempt: 2 P |h|^2 / sigma^2.
    double attempt_snr(const TransmissionAttempt& attempt) const;

private:
    CombinedSample finish(Eigen::VectorXcd weighted_sum, double gain_sum, int count) const;

    ChannelConfig cfg_;
};

inline std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace iarq
