#include "iarq/multiclass_svm.hpp"

#include <limits>
#include <string>

#include "iarq/errors.hpp"

namespace iarq {

CodingMatrix::CodingMatrix(int class_count) : classes_(class_count) {
    if (class_count < 2) throw InsufficientClassesError("coding matrix needs at least 2 classes");
    for (int a = 0; a < class_count; ++a)
        for (int b = a + 1; b < class_count; ++b) pairs_.emplace_back(a, b);
    const auto L = pairs_.size();
    entries_.assign(static_cast<std::size_t>(class_count) * L, 0);
    for (std::size_t l = 0; l < L; ++l) {
        entries_[static_cast<std::size_t>(pairs_[l].first) * L + l] = 1;
        entries_[static_cast<std::size_t>(pairs_[l].second) * L + l] = -1;
    }
}

int CodingMatrix::at(int cls, int component) const {
    if (cls < 0 || cls >= classes_ || component < 0 || component >= components())
        throw UsageError("CodingMatrix::at: index out of range");
    return entries_[static_cast<std::size_t>(cls) * pairs_.size() + static_cast<std::size_t>(component)];
}

double CodingMatrix::hamming_distance(std::span<const double> scores, int cls) const {
    if (static_cast<int>(scores.size()) != components())
        throw UsageError("hamming_distance: score vector length differs from component count");
    double d = 0.0;
    for (int l = 0; l < components(); ++l) {
        const int m = at(cls, l);
        if (m == 0) continue;
        const double prod = m * scores[static_cast<std::size_t>(l)];
        const int sgn = (prod > 0.0) - (prod < 0.0);
        d += (1.0 - sgn) / 2.0;
    }
    return d;
}

int CodingMatrix::decode(std::span<const double> scores) const {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < classes_; ++c) {
        const double d = hamming_distance(scores, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

bool MulticlassSvm::fully_trained() const {
    if (static_cast<int>(boundaries.size()) != coding.components()) return false;
    for (const auto& b : boundaries)
        if (!b || !b->trained()) return false;
    return true;
}

MulticlassSvm train_multiclass_svm(std::span<const Sample> data, int class_count,
                                   const SvmTrainConfig& cfg, const MulticlassSvm* previous) {
    std::vector<bool> present(static_cast<std::size_t>(std::max(class_count, 0)), false);
    for (const auto& s : data) {
        if (s.label < 0 || s.label >= class_count)
            throw InputError("train_multiclass_svm: label " + std::to_string(s.label) + " out of range");
        present[static_cast<std::size_t>(s.label)] = true;
    }
    int distinct = 0;
    for (bool p : present) distinct += p;
    if (distinct < 2) throw InsufficientClassesError("multiclass SVM needs at least 2 classes present");

    SampleList pool(data.begin(), data.end());
    MulticlassSvmTrainer trainer(class_count, cfg);
    for (std::size_t i = 0; i < pool.size(); ++i) trainer.add(i, pool);
    MulticlassSvm model = trainer.fit(pool);
    if (previous != nullptr && previous->class_count() == class_count) {
        for (std::size_t l = 0; l < model.boundaries.size(); ++l)
            if (!model.boundaries[l]) model.boundaries[l] = previous->boundaries[l];
    }
    return model;
}

MulticlassPrediction predict_multiclass(const MulticlassSvm& model, const Vector& x) {
    MulticlassPrediction out;
    out.scores.resize(model.boundaries.size());
    for (std::size_t l = 0; l < model.boundaries.size(); ++l) {
        if (!model.boundaries[l] || !model.boundaries[l]->trained())
            throw UntrainedModelError("predict_multiclass: component " + std::to_string(l) + " is untrained");
        out.scores[l] = score(*model.boundaries[l], x);
    }
    out.predicted_class = model.coding.decode(out.scores);
    return out;
}

MulticlassSvmTrainer::MulticlassSvmTrainer(int class_count, SvmTrainConfig cfg) {
    model_.coding = CodingMatrix(class_count);
    const auto L = static_cast<std::size_t>(model_.coding.components());
    model_.boundaries.resize(L);
    dirty_.assign(L, false);
    trainers_.reserve(L);
    for (std::size_t l = 0; l < L; ++l) {
        SvmTrainConfig component_cfg = cfg;
        component_cfg.seed = mix64(cfg.seed + l);
        trainers_.emplace_back(component_cfg);
    }
}

void MulticlassSvmTrainer::add(std::size_t index, const SampleList& pool) {
    const int label = pool.at(index).label;
    const int C = model_.coding.classes();
    if (label < 0 || label >= C) throw InputError("MulticlassSvmTrainer::add: label out of range");
    for (int l = 0; l < model_.coding.components(); ++l) {
        const int m = model_.coding.at(label, l);
        if (m == 0) continue;
        trainers_[static_cast<std::size_t>(l)].add(index, m, pool);
        dirty_[static_cast<std::size_t>(l)] = true;
    }
}

const MulticlassSvm& MulticlassSvmTrainer::fit(const SampleList& pool) {
    for (std::size_t l = 0; l < trainers_.size(); ++l) {
        if (!dirty_[l] || !trainers_[l].has_both_classes()) continue;
        model_.boundaries[l] = trainers_[l].fit(pool).boundary;
        dirty_[l] = false;
    }
    return model_;
}

} // namespace iarq
