#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iarq {

class CodingMatrix;

enum class PolicyKind {
    importance_svm_binary,
    importance_svm_multiclass,
    importance_entropy,
    channel_aware,
    none,
};

std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

/// Uncertainty value, or a marker for "sample sits on the decision boundary".
class Uncertainty {
public:
    Uncertainty() = default;
    explicit Uncertainty(double value) : value_(value) {}

    static Uncertainty infinite() {
        Uncertainty u;
        u.infinite_ = true;
        return u;
    }

    bool is_infinite() const { return infinite_; }
    /// Finite value; 0 for the infinite marker (check is_infinite() first).
    double value() const { return infinite_ ? 0.0 : value_; }

    friend bool operator<(const Uncertainty& a, const Uncertainty& b) {
        if (a.infinite_ || b.infinite_) return !a.infinite_ && b.infinite_;
        return a.value_ < b.value_;
    }
    friend bool operator==(const Uncertainty&, const Uncertainty&) = default;

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// Scores with |s| below this count as lying on the boundary.
inline constexpr double kBoundaryScore = 1e-12;

/// Retransmission policy parameters. All SNR quantities are linear.
///
/// Build through the named constructors; they derive the dependent quantities
/// (conversion ratio from the alignment probability, entropy scaling from the thresholds).
struct ArqConfig {
    PolicyKind kind = PolicyKind::none;
    std::optional<double> alignment_probability; ///< p_c, when it defines conversion_ratio
    double conversion_ratio = 0.0;               ///< theta_0
    double max_snr_threshold = 0.0;              ///< theta_SNR
    double entropy_scaling = 0.0;                ///< gamma
    double max_entropy = 0.0;                    ///< log C

    static ArqConfig importance_svm(double pc, double max_snr, bool multiclass = false);
    /// Entropy policy with an explicit conversion ratio (the least-uncertain SNR floor).
    static ArqConfig importance_entropy(double conversion_ratio, double max_snr, int class_count);
    static ArqConfig importance_entropy_from_pc(double pc, double max_snr, int class_count);
    static ArqConfig channel_aware(double max_snr);
    static ArqConfig none();

    void validate() const;
};

enum class Decision { retransmit, accept };

std::string_view to_string(Decision d);

/// Audit record of one retransmission decision.
struct DecisionTrace {
    Uncertainty uncertainty;
    double snr_threshold = 0.0;
    double effective_snr = 0.0;
    Decision decision = Decision::accept;
};

/// 1 / score^2, or the infinite marker on the boundary.
Uncertainty distance_uncertainty(double score);

/// Shannon entropy in nats with 0 log 0 = 0. Throws InvalidPosteriorError unless the
/// entries are nonnegative and sum to 1 within 1e-6.
double entropy_uncertainty(std::span<const double> posterior);

/// Probability that the transmitted sample lies on the same side of the boundary as the
/// received estimate: (1 + erf(sqrt(snr) |s| / sqrt(2))) / 2.
double alignment_probability(double score_of_estimate, double effective_snr);

/// Conversion ratio [sqrt(2) erfinv(2 pc - 1)]^2. Throws ConfigError unless 0.5 < pc < 1.
double theta0_from_pc(double pc);

/// Scaling so that the reshaped threshold hits max_snr at maximum entropy.
double entropy_scaling_factor(double conversion_ratio, double max_snr, double max_entropy);

/// Reshaped threshold min(theta0 (1 + gamma u), theta_SNR); exactly theta_SNR once u reaches log C.
double entropy_threshold(double entropy, const ArqConfig& cfg);

DecisionTrace decide_binary_svm(double estimate_score, double effective_snr, const ArqConfig& cfg);

/// Multi-threshold rule: every component that is active for the predicted class must
/// meet its own capped threshold, tested as one comparison against the largest.
DecisionTrace decide_multiclass_svm(std::span<const double> scores, int predicted_class,
                                    const CodingMatrix& coding, double effective_snr,
                                    const ArqConfig& cfg);

DecisionTrace decide_entropy(std::span<const double> posterior, double effective_snr,
                             const ArqConfig& cfg);

DecisionTrace decide_channel_aware(double effective_snr, const ArqConfig& cfg);

DecisionTrace decide_none(double effective_snr);

} // namespace iarq
