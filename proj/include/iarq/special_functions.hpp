#pragma once

namespace iarq {

/// Inverse error function on (-1, 1).
///
/// Rational initial guess followed by Newton steps on std::erf; absolute error below 1e-12
/// away from the endpoints. Returns +/-infinity at +/-1 and NaN outside [-1, 1].
double erf_inv(double y);

} // namespace iarq
