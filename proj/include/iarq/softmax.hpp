#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iarq/types.hpp"

namespace iarq {

/// Multinomial logistic regression: P(c | x) = softmax(W x + b)_c.
struct SoftmaxModel {
    Eigen::MatrixXd weights; ///< C x p
    Vector bias;             ///< C

    static SoftmaxModel zeros(int class_count, int dimension);
    int class_count() const { return static_cast<int>(bias.size()); }
    int dimension() const { return static_cast<int>(weights.cols()); }
};

struct SoftmaxTrainConfig {
    double learning_rate = 0.5;
    double momentum = 0.9;
    std::size_t epochs = 20;
    std::size_t batch_size = 32;
    double weight_decay = 0.0; ///< L2 on weights, not on bias
    std::uint64_t seed = 0;
    bool record_losses = true; ///< costs one extra pass per epoch

    void validate() const;
};

struct SoftmaxFit {
    SoftmaxModel model;
    std::vector<double> epoch_losses; ///< full-batch mean cross-entropy after each epoch
};

struct LossGradient {
    double loss = 0.0; ///< mean cross-entropy (+ weight decay term)
    Eigen::MatrixXd weights;
    Vector bias;
};

Vector posterior(const SoftmaxModel& model, const Vector& x);
int predict(const SoftmaxModel& model, const Vector& x);

/// Mean cross-entropy over `data` and its exact gradient.
LossGradient loss_and_gradient(const SoftmaxModel& model, std::span<const Sample> data,
                               double weight_decay = 0.0);

/// Mini-batch SGD with momentum. Labels are class indices in [0, class_count).
/// `warm_start` continues from earlier parameters; otherwise training starts at zero.
SoftmaxFit train_softmax(std::span<const Sample> data, int class_count,
                         const SoftmaxModel* warm_start, const SoftmaxTrainConfig& cfg);

} // namespace iarq
