#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iarq/types.hpp"

namespace iarq {

/// Hyperplane w.x + b = 0.
struct LinearBoundary {
    Vector weights;
    double bias = 0.0;

    bool trained() const { return weights.size() > 0 && weights.norm() > 0.0; }
};

struct SvmTrainConfig {
    double slack_penalty = 1.0;            ///< box constraint C
    std::size_t max_iterations = 1000000;  ///< single-coordinate updates
    double kkt_tolerance = 1e-3;
    std::uint64_t seed = 0;                ///< coordinate visiting order

    void validate() const;
};

struct SvmFit {
    LinearBoundary boundary;
    std::vector<double> alpha; ///< dual variables, one per training sample
    double dual_objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false; ///< false when max_iterations was reached first
};

/// Normalized score (w.x + b) / |w|. Throws UntrainedModelError for a zero weight vector.
double score(const LinearBoundary& boundary, const Vector& x);

/// Soft-margin linear SVM via single-coordinate dual ascent.
///
/// The bias is folded in as a constant unit feature, so the dual is box constrained only:
///   max  sum(a) - 1/2 sum_ij a_i a_j y_i y_j (x_i.x_j + 1),   0 <= a_i <= C.
/// Labels must be -1 or +1 with both present.
SvmFit train_binary_svm(std::span<const Sample> data, const SvmTrainConfig& cfg);

/// Dual objective of `alpha` for the problem above (used for oracle comparison).
double svm_dual_objective(std::span<const Sample> data, std::span<const double> alpha);

/// Incrementally growing binary SVM problem over samples owned elsewhere.
///
/// Samples are referenced by index into a pool that must outlive the trainer and only be
/// appended to. fit() warm-starts from the dual variables of the previous fit, which is what
/// makes per-sample retraining during acquisition affordable.
class BinarySvmTrainer {
public:
    explicit BinarySvmTrainer(SvmTrainConfig cfg);

    /// Adds pool[index] with the given sign (+1 or -1).
    void add(std::size_t index, int sign, const SampleList& pool);

    std::size_t size() const { return indices_.size(); }
    bool has_both_classes() const { return positives_ > 0 && negatives_ > 0; }

    /// Runs coordinate ascent to KKT tolerance. Throws InsufficientClassesError if one sign is missing.
    SvmFit fit(const SampleList& pool);

private:
    SvmTrainConfig cfg_;
    std::vector<std::size_t> indices_;
    std::vector<double> signs_;
    std::vector<double> diag_; ///< |x|^2 + 1
    std::vector<double> alpha_;
    Vector w_;                 ///< sum a_i y_i x_i
    double b_ = 0.0;           ///< sum a_i y_i
    std::size_t positives_ = 0;
    std::size_t negatives_ = 0;
    std::uint64_t fits_ = 0;
};

} // namespace iarq
