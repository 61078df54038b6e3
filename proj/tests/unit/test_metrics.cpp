#include <doctest.h>

#include <cmath>

#include "iarq/metrics.hpp"

using namespace iarq;

TEST_CASE("perfect classifier") {
    const auto m = metrics_from_confusion({10, 0, 0, 90});
    CHECK(m.accuracy == 1.0);
    CHECK(m.g_mean == 1.0);
    CHECK(m.f_measure == 1.0);
}

TEST_CASE("all-negative predictor scores zero on the minority metrics") {
    const auto m = metrics_from_confusion({0, 10, 0, 90});
    CHECK(m.accuracy == doctest::Approx(0.9));
    CHECK(m.recall == 0.0);
    CHECK(m.precision == 0.0);
    CHECK(m.g_mean == 0.0);
    CHECK(m.f_measure == 0.0);
}

TEST_CASE("hand-computed confusion example") {
    const auto m = metrics_from_confusion({1, 1, 1, 7});
    CHECK(m.recall == 0.5);
    CHECK(m.specificity == 0.875);
    CHECK(m.precision == 0.5);
    CHECK(m.g_mean == doctest::Approx(std::sqrt(0.4375)));
    CHECK(m.g_mean == doctest::Approx(0.6614).epsilon(1e-4));
    CHECK(m.f_measure == doctest::Approx(0.5));
    CHECK(m.accuracy == doctest::Approx(0.8));
}

TEST_CASE("empty confusion matrix") {
    const auto m = metrics_from_confusion({});
    CHECK(m.accuracy == 0.0);
    CHECK(m.f_measure == 0.0);
}
