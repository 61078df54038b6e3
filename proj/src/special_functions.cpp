#include "iarq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace iarq {

namespace {

// Giles' single-precision approximation; good to ~1e-7 on its own.
double erf_inv_initial(double y) {
    double w = -std::log((1.0 - y) * (1.0 + y));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    return p * y;
}

} // namespace

double erf_inv(double y) {
    if (std::isnan(y) || y < -1.0 || y > 1.0) return std::numeric_limits<double>::quiet_NaN();
    if (y == 1.0) return std::numeric_limits<double>::infinity();
    if (y == -1.0) return -std::numeric_limits<double>::infinity();
    if (y == 0.0) return 0.0;

    double x = erf_inv_initial(y);
    const double scale = 2.0 / std::sqrt(std::numbers::pi);
    for (int i = 0; i < 4; ++i) {
        const double err = std::erf(x) - y;
        const double slope = scale * std::exp(-x * x);
        if (slope == 0.0) break;
        // Halley step: f'' = -2x f'
        const double step = err / (slope + x * err);
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

} // namespace iarq
