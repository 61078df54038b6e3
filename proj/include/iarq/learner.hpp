#pragma once

#include <memory>
#include <string_view>

#include "iarq/arq.hpp"
#include "iarq/multiclass_svm.hpp"
#include "iarq/softmax.hpp"
#include "iarq/svm.hpp"
#include "iarq/types.hpp"

namespace iarq {

enum class ModelKind { svm, softmax };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// Server-side model under training: owns the training pool and the latest snapshot.
///
/// Retraining only happens through retrain(); predictions and decisions always use the
/// snapshot produced by the most recent call.
class Learner {
public:
    virtual ~Learner() = default;

    int class_count() const { return class_count_; }
    const SampleList& pool() const { return pool_; }

    /// Appends a training sample (label is a class index). Takes effect at the next retrain().
    void add(Sample sample);
    virtual void retrain() = 0;

    virtual int predict(const Vector& x) const = 0;
    /// Model-specific uncertainty of x: distance based for SVMs, entropy for softmax.
    virtual Uncertainty uncertainty(const Vector& x) const = 0;
    /// Importance-aware decision for this model family; throws ConfigError when the
    /// policy kind does not belong to it.
    virtual DecisionTrace decide_importance(const Vector& estimate, double effective_snr,
                                            const ArqConfig& cfg) const = 0;
    /// Whether `kind` is the importance policy this learner supports.
    virtual bool supports(PolicyKind kind) const = 0;

protected:
    explicit Learner(int class_count) : class_count_(class_count) {}
    virtual void on_add(std::size_t index) = 0;

    int class_count_;
    SampleList pool_;
};

struct LearnerConfig {
    SvmTrainConfig svm;
    SoftmaxTrainConfig softmax;
};

/// SVM with two classes gives a binary SVM (class 0 is the +1 side), with more classes a
/// one-vs-one multiclass SVM; softmax works for any class count.
std::unique_ptr<Learner> make_learner(ModelKind kind, int class_count, const LearnerConfig& cfg);

/// Binary SVM learner; class 0 maps to the positive side of the boundary.
class BinarySvmLearner final : public Learner {
public:
    explicit BinarySvmLearner(SvmTrainConfig cfg);

    void retrain() override;
    int predict(const Vector& x) const override;
    Uncertainty uncertainty(const Vector& x) const override;
    DecisionTrace decide_importance(const Vector& estimate, double effective_snr,
                                    const ArqConfig& cfg) const override;
    bool supports(PolicyKind kind) const override { return kind == PolicyKind::importance_svm_binary; }

    const LinearBoundary& boundary() const { return boundary_; }
    double score_of(const Vector& x) const;

private:
    void on_add(std::size_t index) override;

    BinarySvmTrainer trainer_;
    LinearBoundary boundary_;
};

class MulticlassSvmLearner final : public Learner {
public:
    MulticlassSvmLearner(int class_count, SvmTrainConfig cfg);

    void retrain() override;
    int predict(const Vector& x) const override;
    Uncertainty uncertainty(const Vector& x) const override;
    DecisionTrace decide_importance(const Vector& estimate, double effective_snr,
                                    const ArqConfig& cfg) const override;
    bool supports(PolicyKind kind) const override { return kind == PolicyKind::importance_svm_multiclass; }

    const MulticlassSvm& model() const { return snapshot_; }

private:
    void on_add(std::size_t index) override;

    MulticlassSvmTrainer trainer_;
    MulticlassSvm snapshot_;
};

class SoftmaxLearner final : public Learner {
public:
    SoftmaxLearner(int class_count, SoftmaxTrainConfig cfg);

    void retrain() override;
    int predict(const Vector& x) const override;
    Uncertainty uncertainty(const Vector& x) const override;
    DecisionTrace decide_importance(const Vector& estimate, double effective_snr,
                                    const ArqConfig& cfg) const override;
    bool supports(PolicyKind kind) const override { return kind == PolicyKind::importance_entropy; }

    const SoftmaxModel& model() const { return model_; }

private:
    void on_add(std::size_t) override {}

    SoftmaxTrainConfig cfg_;
    SoftmaxModel model_;
    bool trained_ = false;
    std::uint64_t fits_ = 0;
};

} // namespace iarq
