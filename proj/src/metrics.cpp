#include "iarq/metrics.hpp"

#include <cmath>

namespace iarq {

namespace {
double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
} // namespace

MetricsRecord metrics_from_confusion(const ConfusionCounts& c) {
    MetricsRecord m;
    m.accuracy = ratio(c.true_positive + c.true_negative, c.total());
    m.recall = ratio(c.true_positive, c.true_positive + c.false_negative);
    m.specificity = ratio(c.true_negative, c.true_negative + c.false_positive);
    m.precision = ratio(c.true_positive, c.true_positive + c.false_positive);
    m.g_mean = std::sqrt(m.recall * m.specificity);
    const double pr = m.precision + m.recall;
    m.f_measure = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
    return m;
}

} // namespace iarq
