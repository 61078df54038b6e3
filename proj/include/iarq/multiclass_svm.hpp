#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "iarq/svm.hpp"
#include "iarq/types.hpp"

namespace iarq {

/// One-vs-one reference coding matrix, C rows by L = C(C-1)/2 columns.
///
/// Column l belongs to the class pair (a, b), a < b, enumerated lexicographically; the entry
/// is +1 in row a, -1 in row b and 0 elsewhere. For C = 4 this gives columns
/// (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
class CodingMatrix {
public:
    explicit CodingMatrix(int class_count);

    int classes() const { return classes_; }
    int components() const { return static_cast<int>(pairs_.size()); }
    int at(int cls, int component) const;
    /// (positive class, negative class) of a component.
    std::pair<int, int> pair(int component) const { return pairs_.at(static_cast<std::size_t>(component)); }

    /// sum_l |m_cl| (1 - sgn(m_cl s_l)) / 2; a zero score contributes 1/2.
    double hamming_distance(std::span<const double> scores, int cls) const;
    /// Row with the smallest distance; ties go to the lowest class index.
    int decode(std::span<const double> scores) const;

private:
    int classes_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::int8_t> entries_; ///< row-major C x L
};

struct MulticlassSvm {
    CodingMatrix coding{2};
    std::vector<std::optional<LinearBoundary>> boundaries; ///< empty optional = untrained

    int class_count() const { return coding.classes(); }
    bool fully_trained() const;
};

struct MulticlassPrediction {
    int predicted_class = 0;
    std::vector<double> scores;
};

/// Trains each one-vs-one component on its two classes only (labels are class indices).
/// Components whose pair lacks data keep the boundary from `previous`, if given, else stay untrained.
MulticlassSvm train_multiclass_svm(std::span<const Sample> data, int class_count,
                                   const SvmTrainConfig& cfg,
                                   const MulticlassSvm* previous = nullptr);

/// Throws UntrainedModelError if any component is untrained.
MulticlassPrediction predict_multiclass(const MulticlassSvm& model, const Vector& x);

/// Incremental one-vs-one trainer sharing one sample pool across all components.
class MulticlassSvmTrainer {
public:
    MulticlassSvmTrainer(int class_count, SvmTrainConfig cfg);

    void add(std::size_t index, const SampleList& pool);
    /// Refits every component that has both classes; others keep their last boundary.
    const MulticlassSvm& fit(const SampleList& pool);
    const MulticlassSvm& model() const { return model_; }

private:
    MulticlassSvm model_;
    std::vector<BinarySvmTrainer> trainers_;
    std::vector<bool> dirty_;
};

} // namespace iarq
