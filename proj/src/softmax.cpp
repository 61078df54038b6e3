#include "iarq/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iarq/errors.hpp"

namespace iarq {

SoftmaxModel SoftmaxModel::zeros(int class_count, int dimension) {
    return {Eigen::MatrixXd::Zero(class_count, dimension), Vector::Zero(class_count)};
}

void SoftmaxTrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("softmax learning rate must be positive");
    if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("softmax momentum must lie in [0, 1)");
    if (epochs == 0) throw ConfigError("softmax epochs must be positive");
    if (batch_size == 0) throw ConfigError("softmax batch size must be positive");
    if (!(weight_decay >= 0.0)) throw ConfigError("weight decay must be nonnegative");
}

namespace {

Vector softmax_of_logits(Vector logits) {
    logits.array() -= logits.maxCoeff();
    logits = logits.array().exp();
    logits /= logits.sum();
    return logits;
}

} // namespace

Vector posterior(const SoftmaxModel& model, const Vector& x) {
    if (x.size() != model.weights.cols()) throw UsageError("posterior: dimension mismatch");
    return softmax_of_logits(model.weights * x + model.bias);
}

int predict(const SoftmaxModel& model, const Vector& x) {
    Eigen::Index best = 0;
    posterior(model, x).maxCoeff(&best);
    return static_cast<int>(best);
}

LossGradient loss_and_gradient(const SoftmaxModel& model, std::span<const Sample> data,
                               double weight_decay) {
    if (data.empty()) throw UsageError("loss_and_gradient: empty data");
    LossGradient out;
    out.weights = Eigen::MatrixXd::Zero(model.weights.rows(), model.weights.cols());
    out.bias = Vector::Zero(model.bias.size());
    for (const auto& s : data) {
        Vector p = posterior(model, s.features);
        out.loss -= std::log(std::max(p[s.label], 1e-300));
        p[s.label] -= 1.0;
        out.weights.noalias() += p * s.features.transpose();
        out.bias += p;
    }
    const double inv = 1.0 / static_cast<double>(data.size());
    out.loss *= inv;
    out.weights *= inv;
    out.bias *= inv;
    if (weight_decay > 0.0) {
        out.loss += 0.5 * weight_decay * model.weights.squaredNorm();
        out.weights += weight_decay * model.weights;
    }
    return out;
}

SoftmaxFit train_softmax(std::span<const Sample> data, int class_count,
                         const SoftmaxModel* warm_start, const SoftmaxTrainConfig& cfg) {
    cfg.validate();
    if (data.empty()) throw InsufficientDataError("train_softmax: no data");
    const auto p = static_cast<int>(data.front().features.size());
    std::vector<bool> present(static_cast<std::size_t>(std::max(class_count, 0)), false);
    for (const auto& s : data) {
        if (s.label < 0 || s.label >= class_count)
            throw InputError("train_softmax: label " + std::to_string(s.label) + " out of range");
        if (s.features.size() != p) throw UsageError("train_softmax: inconsistent dimensions");
        present[static_cast<std::size_t>(s.label)] = true;
    }
    if (std::count(present.begin(), present.end(), true) < 2)
        throw InsufficientClassesError("train_softmax: need at least 2 classes present");

    SoftmaxFit fit;
    if (warm_start != nullptr) {
        if (warm_start->class_count() != class_count || warm_start->dimension() != p)
            throw UsageError("train_softmax: warm start has the wrong shape");
        fit.model = *warm_start;
    } else {
        fit.model = SoftmaxModel::zeros(class_count, p);
    }

    Eigen::MatrixXd vel_w = Eigen::MatrixXd::Zero(class_count, p);
    Vector vel_b = Vector::Zero(class_count);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix64(cfg.seed));

    Eigen::MatrixXd grad_w(class_count, p);
    Vector grad_b(class_count);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            grad_w.setZero();
            grad_b.setZero();
            for (std::size_t i = start; i < stop; ++i) {
                const Sample& s = data[order[i]];
                Vector prob = posterior(fit.model, s.features);
                prob[s.label] -= 1.0;
                grad_w.noalias() += prob * s.features.transpose();
                grad_b += prob;
            }
            const double inv = 1.0 / static_cast<double>(stop - start);
            grad_w *= inv;
            grad_b *= inv;
            if (cfg.weight_decay > 0.0) grad_w += cfg.weight_decay * fit.model.weights;

            vel_w = cfg.momentum * vel_w - cfg.learning_rate * grad_w;
            vel_b = cfg.momentum * vel_b - cfg.learning_rate * grad_b;
            fit.model.weights += vel_w;
            fit.model.bias += vel_b;
        }
        if (cfg.record_losses)
            fit.epoch_losses.push_back(loss_and_gradient(fit.model, data, cfg.weight_decay).loss);
    }
    return fit;
}

} // namespace iarq
