#include "iarq/arq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iarq/errors.hpp"
#include "iarq/multiclass_svm.hpp"
#include "iarq/special_functions.hpp"

namespace iarq {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::importance_svm_binary: return "importance_svm_binary";
    case PolicyKind::importance_svm_multiclass: return "importance_svm_multiclass";
    case PolicyKind::importance_entropy: return "importance_entropy";
    case PolicyKind::channel_aware: return "channel_aware";
    case PolicyKind::none: return "none";
    }
    return "unknown";
}

PolicyKind policy_kind_from_string(std::string_view name) {
    for (auto k : {PolicyKind::importance_svm_binary, PolicyKind::importance_svm_multiclass,
                   PolicyKind::importance_entropy, PolicyKind::channel_aware, PolicyKind::none}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown policy kind '" + std::string(name) + "'");
}

std::string_view to_string(Decision d) { return d == Decision::accept ? "accept" : "retransmit"; }

ArqConfig ArqConfig::importance_svm(double pc, double max_snr, bool multiclass) {
    ArqConfig cfg;
    cfg.kind = multiclass ? PolicyKind::importance_svm_multiclass : PolicyKind::importance_svm_binary;
    cfg.alignment_probability = pc;
    cfg.conversion_ratio = theta0_from_pc(pc);
    cfg.max_snr_threshold = max_snr;
    cfg.validate();
    return cfg;
}

ArqConfig ArqConfig::importance_entropy(double conversion_ratio, double max_snr, int class_count) {
    if (class_count < 2) throw ConfigError("entropy policy needs at least 2 classes");
    ArqConfig cfg;
    cfg.kind = PolicyKind::importance_entropy;
    cfg.conversion_ratio = conversion_ratio;
    cfg.max_snr_threshold = max_snr;
    cfg.max_entropy = std::log(static_cast<double>(class_count));
    cfg.entropy_scaling = entropy_scaling_factor(conversion_ratio, max_snr, cfg.max_entropy);
    cfg.validate();
    return cfg;
}

ArqConfig ArqConfig::importance_entropy_from_pc(double pc, double max_snr, int class_count) {
    ArqConfig cfg = importance_entropy(theta0_from_pc(pc), max_snr, class_count);
    cfg.alignment_probability = pc;
    return cfg;
}

ArqConfig ArqConfig::channel_aware(double max_snr) {
    ArqConfig cfg;
    cfg.kind = PolicyKind::channel_aware;
    cfg.max_snr_threshold = max_snr;
    cfg.validate();
    return cfg;
}

ArqConfig ArqConfig::none() { return ArqConfig{}; }

void ArqConfig::validate() const {
    if (kind == PolicyKind::none) return;
    if (!(max_snr_threshold > 0.0) || !std::isfinite(max_snr_threshold))
        throw ConfigError("max_snr_threshold must be positive");
    if (kind == PolicyKind::channel_aware) return;
    if (alignment_probability && !(*alignment_probability > 0.5 && *alignment_probability < 1.0))
        throw ConfigError("alignment probability must lie in (0.5, 1)");
    if (!(conversion_ratio >= 0.0) || !std::isfinite(conversion_ratio))
        throw ConfigError("conversion_ratio must be nonnegative");
    if (kind == PolicyKind::importance_entropy) {
        if (!(max_entropy > 0.0)) throw ConfigError("max_entropy must be positive");
        if (!(conversion_ratio > 0.0)) throw ConfigError("entropy policy needs a positive conversion ratio");
        if (max_snr_threshold < conversion_ratio)
            throw ConfigError("entropy policy requires max_snr_threshold >= conversion_ratio");
    }
}

Uncertainty distance_uncertainty(double score) {
    if (std::abs(score) < kBoundaryScore) return Uncertainty::infinite();
    return Uncertainty(1.0 / (score * score));
}

double entropy_uncertainty(std::span<const double> posterior) {
    if (posterior.empty()) throw InvalidPosteriorError("empty posterior");
    double total = 0.0;
    double h = 0.0;
    for (double p : posterior) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidPosteriorError("posterior entry outside [0,1]");
        total += p;
        if (p > 0.0) h -= p * std::log(p);
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw InvalidPosteriorError("posterior sums to " + std::to_string(total));
    return std::max(h, 0.0);
}

double alignment_probability(double score_of_estimate, double effective_snr) {
    if (!(effective_snr > 0.0)) throw UsageError("alignment_probability: effective SNR must be positive");
    return 0.5 * (1.0 + std::erf(std::sqrt(effective_snr) * std::abs(score_of_estimate) / std::numbers::sqrt2));
}

double theta0_from_pc(double pc) {
    if (!(pc > 0.5 && pc < 1.0))
        throw ConfigError("alignment probability p_c must lie in (0.5, 1), got " + std::to_string(pc));
    const double r = std::numbers::sqrt2 * erf_inv(2.0 * pc - 1.0);
    return r * r;
}

double entropy_scaling_factor(double conversion_ratio, double max_snr, double max_entropy) {
    if (!(conversion_ratio > 0.0) || !(max_entropy > 0.0))
        throw ConfigError("entropy scaling needs positive conversion ratio and maximum entropy");
    return (max_snr / conversion_ratio - 1.0) / max_entropy;
}

namespace {

double capped_distance_threshold(double score, const ArqConfig& cfg) {
    const Uncertainty u = distance_uncertainty(score);
    if (u.is_infinite()) return cfg.max_snr_threshold;
    return std::min(cfg.conversion_ratio * u.value(), cfg.max_snr_threshold);
}

// Retransmit on equality: acceptance needs snr strictly above the threshold.
DecisionTrace make_trace(Uncertainty u, double threshold, double snr) {
    return {u, threshold, snr, snr > threshold ? Decision::accept : Decision::retransmit};
}

} // namespace

double entropy_threshold(double entropy, const ArqConfig& cfg) {
    // Rounding in the entropy sum must not keep a uniform posterior below the cap.
    if (entropy >= cfg.max_entropy * (1.0 - 1e-12)) return cfg.max_snr_threshold;
    return std::min(cfg.conversion_ratio * (1.0 + cfg.entropy_scaling * entropy), cfg.max_snr_threshold);
}

DecisionTrace decide_binary_svm(double estimate_score, double effective_snr, const ArqConfig& cfg) {
    return make_trace(distance_uncertainty(estimate_score), capped_distance_threshold(estimate_score, cfg),
                      effective_snr);
}

DecisionTrace decide_multiclass_svm(std::span<const double> scores, int predicted_class,
                                    const CodingMatrix& coding, double effective_snr,
                                    const ArqConfig& cfg) {
    if (static_cast<int>(scores.size()) != coding.components())
        throw UsageError("decide_multiclass_svm: score vector does not match coding matrix");
    if (predicted_class < 0 || predicted_class >= coding.classes())
        throw UsageError("decide_multiclass_svm: predicted class out of range");
    double threshold = 0.0;
    Uncertainty worst(0.0);
    for (int l = 0; l < coding.components(); ++l) {
        if (coding.at(predicted_class, l) == 0) continue;
        const double s = scores[static_cast<std::size_t>(l)];
        threshold = std::max(threshold, capped_distance_threshold(s, cfg));
        worst = std::max(worst, distance_uncertainty(s));
    }
    return make_trace(worst, threshold, effective_snr);
}

DecisionTrace decide_entropy(std::span<const double> posterior, double effective_snr,
                             const ArqConfig& cfg) {
    const double u = entropy_uncertainty(posterior);
    return make_trace(Uncertainty(u), entropy_threshold(u, cfg), effective_snr);
}

DecisionTrace decide_channel_aware(double effective_snr, const ArqConfig& cfg) {
    return make_trace(Uncertainty(0.0), cfg.max_snr_threshold, effective_snr);
}

DecisionTrace decide_none(double effective_snr) {
    return {Uncertainty(0.0), 0.0, effective_snr, Decision::accept};
}

} // namespace iarq
