#pragma once

#include <cstddef>

namespace iarq {

/// Binary confusion matrix; positive is the minority class (class index 0).
struct ConfusionCounts {
    std::size_t true_positive = 0;
    std::size_t false_negative = 0;
    std::size_t false_positive = 0;
    std::size_t true_negative = 0;

    std::size_t total() const { return true_positive + false_negative + false_positive + true_negative; }
};

struct MetricsRecord {
    double accuracy = 0.0;
    // Binary tasks only; zero for multiclass.
    double recall = 0.0;
    double specificity = 0.0;
    double precision = 0.0;
    double g_mean = 0.0;
    double f_measure = 0.0;
};

/// Ratios with an empty denominator are reported as 0, and so is an F-measure whose
/// precision and recall are both 0.
MetricsRecord metrics_from_confusion(const ConfusionCounts& counts);

} // namespace iarq
