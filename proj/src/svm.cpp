#include "iarq/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "iarq/errors.hpp"

namespace iarq {

void SvmTrainConfig::validate() const {
    if (!(slack_penalty > 0.0)) throw ConfigError("slack_penalty must be positive");
    if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
    if (!(kkt_tolerance > 0.0)) throw ConfigError("kkt_tolerance must be positive");
}

double score(const LinearBoundary& boundary, const Vector& x) {
    if (boundary.weights.size() != x.size()) throw UsageError("score: dimension mismatch");
    const double norm = boundary.weights.norm();
    if (!(norm > 0.0)) throw UntrainedModelError("score: boundary has zero weight vector");
    return (boundary.weights.dot(x) + boundary.bias) / norm;
}

BinarySvmTrainer::BinarySvmTrainer(SvmTrainConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void BinarySvmTrainer::add(std::size_t index, int sign, const SampleList& pool) {
    if (sign != 1 && sign != -1) throw UsageError("BinarySvmTrainer::add: sign must be +1 or -1");
    if (index >= pool.size()) throw UsageError("BinarySvmTrainer::add: index outside pool");
    const Vector& x = pool[index].features;
    if (w_.size() == 0) w_ = Vector::Zero(x.size());
    if (x.size() != w_.size()) throw UsageError("BinarySvmTrainer::add: dimension mismatch");
    indices_.push_back(index);
    signs_.push_back(sign);
    diag_.push_back(x.squaredNorm() + 1.0);
    alpha_.push_back(0.0);
    (sign > 0 ? positives_ : negatives_)++;
}

SvmFit BinarySvmTrainer::fit(const SampleList& pool) {
    if (!has_both_classes()) throw InsufficientClassesError("binary SVM needs samples of both signs");
    const std::size_t n = indices_.size();
    const double upper = cfg_.slack_penalty;

    Rng rng(mix64(cfg_.seed + fits_++));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    // Shrinking as in LIBLINEAR's dual solver: coordinates stuck at a bound with a
    // gradient pushing outward are skipped until a full unshrunk pass confirms optimality.
    std::size_t active = n;
    double pg_max_old = std::numeric_limits<double>::infinity();
    double pg_min_old = -std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;

    while (iterations < cfg_.max_iterations) {
        std::shuffle(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(active), rng);
        double pg_max = -std::numeric_limits<double>::infinity();
        double pg_min = std::numeric_limits<double>::infinity();

        for (std::size_t s = 0; s < active && iterations < cfg_.max_iterations; ++s) {
            const std::size_t k = order[s];
            const Vector& x = pool[indices_[k]].features;
            const double y = signs_[k];
            const double grad = y * (w_.dot(x) + b_) - 1.0;
            double& a = alpha_[k];

            double pg = 0.0;
            if (a <= 0.0) {
                if (grad > pg_max_old) {
                    --active;
                    std::swap(order[s], order[active]);
                    --s;
                    continue;
                }
                pg = std::min(grad, 0.0);
            } else if (a >= upper) {
                if (grad < pg_min_old) {
                    --active;
                    std::swap(order[s], order[active]);
                    --s;
                    continue;
                }
                pg = std::max(grad, 0.0);
            } else {
                pg = grad;
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);
            ++iterations;

            if (std::abs(pg) > 1e-12) {
                const double old = a;
                a = std::clamp(a - grad / diag_[k], 0.0, upper);
                const double delta = (a - old) * y;
                w_ += delta * x;
                b_ += delta;
            }
        }

        if (pg_max - pg_min <= cfg_.kkt_tolerance || active == 0) {
            if (active == n) {
                converged = true;
                break;
            }
            // Re-check every coordinate before declaring convergence.
            active = n;
            pg_max_old = std::numeric_limits<double>::infinity();
            pg_min_old = -std::numeric_limits<double>::infinity();
            continue;
        }
        pg_max_old = pg_max > 0.0 ? pg_max : std::numeric_limits<double>::infinity();
        pg_min_old = pg_min < 0.0 ? pg_min : -std::numeric_limits<double>::infinity();
    }

    SvmFit out;
    out.boundary.weights = w_;
    out.boundary.bias = b_;
    out.alpha = alpha_;
    out.iterations = iterations;
    out.converged = converged;
    // D(a) = sum(a) - |w_aug|^2 / 2
    out.dual_objective = std::accumulate(alpha_.begin(), alpha_.end(), 0.0) -
                         0.5 * (w_.squaredNorm() + b_ * b_);
    return out;
}

SvmFit train_binary_svm(std::span<const Sample> data, const SvmTrainConfig& cfg) {
    // The trainer references samples by index into a pool it does not own.
    SampleList pool(data.begin(), data.end());
    BinarySvmTrainer trainer(cfg);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const int y = pool[i].label;
        if (y != 1 && y != -1)
            throw InputError("train_binary_svm: label " + std::to_string(y) + " is not +1/-1");
        trainer.add(i, y, pool);
    }
    return trainer.fit(pool);
}

double svm_dual_objective(std::span<const Sample> data, std::span<const double> alpha) {
    if (data.size() != alpha.size()) throw UsageError("svm_dual_objective: size mismatch");
    if (data.empty()) return 0.0;
    Vector w = Vector::Zero(data.front().features.size());
    double b = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        w += alpha[i] * data[i].label * data[i].features;
        b += alpha[i] * data[i].label;
        sum += alpha[i];
    }
    return sum - 0.5 * (w.squaredNorm() + b * b);
}

} // namespace iarq
