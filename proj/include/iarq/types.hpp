#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace iarq {

using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// A feature vector with its ground-truth class index.
///
/// Class indices are zero-based. Binary SVM training data uses the labels -1 and +1.
struct Sample {
    Vector features;
    int label = 0;
};

using SampleList = std::vector<Sample>;

/// 64-bit finalizer (splitmix64). Used to derive independent seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for repetition `index` of an experiment with the given master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ index);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace iarq
