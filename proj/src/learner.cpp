#include "iarq/learner.hpp"

#include <string>

#include "iarq/errors.hpp"

namespace iarq {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::svm ? "svm" : "softmax"; }

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "svm") return ModelKind::svm;
    if (name == "softmax") return ModelKind::softmax;
    throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

void Learner::add(Sample sample) {
    if (sample.label < 0 || sample.label >= class_count_) throw InputError("Learner::add: label out of range");
    if (!pool_.empty() && sample.features.size() != pool_.front().features.size())
        throw UsageError("Learner::add: dimension mismatch");
    pool_.push_back(std::move(sample));
    on_add(pool_.size() - 1);
}

std::unique_ptr<Learner> make_learner(ModelKind kind, int class_count, const LearnerConfig& cfg) {
    if (class_count < 2) throw InsufficientClassesError("learner needs at least 2 classes");
    if (kind == ModelKind::softmax) return std::make_unique<SoftmaxLearner>(class_count, cfg.softmax);
    if (class_count == 2) return std::make_unique<BinarySvmLearner>(cfg.svm);
    return std::make_unique<MulticlassSvmLearner>(class_count, cfg.svm);
}

namespace {
void require_policy(const Learner& learner, const ArqConfig& cfg) {
    if (!learner.supports(cfg.kind))
        throw ConfigError("policy " + std::string(to_string(cfg.kind)) + " does not match the model");
}
} // namespace

// Binary SVM

BinarySvmLearner::BinarySvmLearner(SvmTrainConfig cfg) : Learner(2), trainer_(cfg) {}

void BinarySvmLearner::on_add(std::size_t index) {
    trainer_.add(index, pool_[index].label == 0 ? 1 : -1, pool_);
}

void BinarySvmLearner::retrain() {
    SvmFit fit = trainer_.fit(pool_);
    // An all-bounded degenerate solution can leave w = 0; keep the last usable boundary.
    if (fit.boundary.trained() || !boundary_.trained()) boundary_ = std::move(fit.boundary);
}

double BinarySvmLearner::score_of(const Vector& x) const { return score(boundary_, x); }

int BinarySvmLearner::predict(const Vector& x) const { return score_of(x) >= 0.0 ? 0 : 1; }

Uncertainty BinarySvmLearner::uncertainty(const Vector& x) const { return distance_uncertainty(score_of(x)); }

DecisionTrace BinarySvmLearner::decide_importance(const Vector& estimate, double effective_snr,
                                                  const ArqConfig& cfg) const {
    require_policy(*this, cfg);
    return decide_binary_svm(score_of(estimate), effective_snr, cfg);
}

// Multiclass SVM

MulticlassSvmLearner::MulticlassSvmLearner(int class_count, SvmTrainConfig cfg)
    : Learner(class_count), trainer_(class_count, cfg), snapshot_{CodingMatrix(class_count), {}} {}

void MulticlassSvmLearner::on_add(std::size_t index) { trainer_.add(index, pool_); }

void MulticlassSvmLearner::retrain() {
    const MulticlassSvm& fitted = trainer_.fit(pool_);
    // Until every pair has data the previous snapshot stays in charge.
    if (fitted.fully_trained()) snapshot_ = fitted;
    else if (!snapshot_.fully_trained())
        throw InsufficientClassesError("multiclass SVM: some class pair has no training data");
}

int MulticlassSvmLearner::predict(const Vector& x) const { return predict_multiclass(snapshot_, x).predicted_class; }

Uncertainty MulticlassSvmLearner::uncertainty(const Vector& x) const {
    const auto pred = predict_multiclass(snapshot_, x);
    Uncertainty worst(0.0);
    for (int l = 0; l < snapshot_.coding.components(); ++l) {
        if (snapshot_.coding.at(pred.predicted_class, l) == 0) continue;
        worst = std::max(worst, distance_uncertainty(pred.scores[static_cast<std::size_t>(l)]));
    }
    return worst;
}

DecisionTrace MulticlassSvmLearner::decide_importance(const Vector& estimate, double effective_snr,
                                                      const ArqConfig& cfg) const {
    require_policy(*this, cfg);
    const auto pred = predict_multiclass(snapshot_, estimate);
    return decide_multiclass_svm(pred.scores, pred.predicted_class, snapshot_.coding, effective_snr, cfg);
}

// Softmax

SoftmaxLearner::SoftmaxLearner(int class_count, SoftmaxTrainConfig cfg)
    : Learner(class_count), cfg_(cfg) {
    cfg_.validate();
    cfg_.record_losses = false;
}

void SoftmaxLearner::retrain() {
    if (pool_.empty()) throw InsufficientDataError("softmax learner: empty pool");
    SoftmaxTrainConfig cfg = cfg_;
    cfg.seed = mix64(cfg_.seed + fits_++);
    model_ = train_softmax(pool_, class_count_, trained_ ? &model_ : nullptr, cfg).model;
    trained_ = true;
}

int SoftmaxLearner::predict(const Vector& x) const { return iarq::predict(model_, x); }

Uncertainty SoftmaxLearner::uncertainty(const Vector& x) const {
    const Vector p = posterior(model_, x);
    return Uncertainty(entropy_uncertainty({p.data(), static_cast<std::size_t>(p.size())}));
}

DecisionTrace SoftmaxLearner::decide_importance(const Vector& estimate, double effective_snr,
                                                const ArqConfig& cfg) const {
    require_policy(*this, cfg);
    const Vector p = posterior(model_, estimate);
    return decide_entropy({p.data(), static_cast<std::size_t>(p.size())}, effective_snr, cfg);
}

} // namespace iarq
