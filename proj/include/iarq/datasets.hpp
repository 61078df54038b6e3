#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "iarq/types.hpp"

namespace iarq {

/// Reads an IDX image file (magic 0x00000803) and label file (magic 0x00000801).
/// Pixels are scaled to [0, 1]; labels are the raw digits. Throws FormatError with the
/// byte offset of the first inconsistency.
SampleList load_mnist_idx(const std::filesystem::path& images_path,
                          const std::filesystem::path& labels_path);

/// Isotropic Gaussian blobs, one per mean. Labels are the mean's index.
struct SyntheticSpec {
    std::vector<Vector> class_means;
    double covariance_scale = 1.0; ///< per-coordinate variance
    std::size_t samples_per_class = 100;
    std::uint64_t seed = 0;
};

SampleList make_synthetic(const SyntheticSpec& spec);

enum class TaskKind { binary, multiclass, imbalanced };

/// Which classes take part and how they are relabelled.
///
/// After apply_task() labels are dense class indices. Binary: class_a -> 0, class_b -> 1.
/// Imbalanced: minority -> 0 (positive), every other class -> 1 (negative).
/// Multiclass: labels unchanged.
struct Task {
    TaskKind kind = TaskKind::multiclass;
    int class_a = 0;
    int class_b = 1;
    int minority = 0;

    static Task binary(int a, int b) { return {TaskKind::binary, a, b, 0}; }
    static Task multiclass() { return {TaskKind::multiclass, 0, 1, 0}; }
    static Task imbalanced(int minority_class) { return {TaskKind::imbalanced, 0, 1, minority_class}; }

    /// Number of classes after relabelling; `source_classes` matters only for multiclass.
    int class_count(int source_classes) const;
    /// Short identifier used in file names, e.g. "binary3v5", "imbalanced1", "multiclass".
    std::string name() const;
    void validate(int source_classes) const;
};

SampleList apply_task(const SampleList& data, const Task& task, int source_classes);

/// Rescales every coordinate to [0, 1] using the minimum and maximum over `reference`;
/// values in `other` are clamped to the same range. Constant coordinates map to 0.
void normalize_unit_range(SampleList& reference, SampleList& other);

enum class SeedRule {
    two_per_class,        ///< balanced tasks
    one_minority_eight_majority, ///< imbalanced tasks: 1 of class 0, 8 of class 1
};

SeedRule default_seed_rule(const Task& task);

struct DeviceShard {
    int device_id = 0;
    std::vector<std::size_t> queue; ///< indices into the training pool, in transmission order
};

/// Result of splitting a training pool. All entries are indices into that pool.
struct Partition {
    std::vector<std::size_t> seed_set;
    std::vector<DeviceShard> shards;
};

/// Draws the clean seed set by the rule, shuffles the rest and deals it into `device_count`
/// contiguous shards whose sizes differ by at most one. Throws InsufficientDataError when a
/// class cannot supply its seed samples or a shard would be empty.
Partition partition(const SampleList& train, int class_count, SeedRule rule, int device_count, Rng& rng);

struct MnistSource {
    std::filesystem::path directory; ///< holds the four standard IDX files
};

struct SyntheticSource {
    SyntheticSpec spec;
    std::size_t test_samples_per_class = 100;
};

struct DatasetSpec {
    std::variant<MnistSource, SyntheticSource> source;
    Task task;
};

/// Training and test data after task relabelling and [0, 1] normalization.
struct LoadedDataset {
    SampleList train;
    SampleList test;
    int class_count = 2;
    Task task;
};

LoadedDataset load_dataset(const DatasetSpec& spec);

} // namespace iarq
