#include "iarq/datasets.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

#include "iarq/errors.hpp"

namespace iarq {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t offset, const std::string& what) {
    if (bytes.size() < offset + 4) throw FormatError(what + ": truncated header", bytes.size());
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

} // namespace

SampleList load_mnist_idx(const std::filesystem::path& images_path,
                          const std::filesystem::path& labels_path) {
    const auto images = read_file(images_path);
    const auto labels = read_file(labels_path);
    const std::string iname = images_path.filename().string();
    const std::string lname = labels_path.filename().string();

    if (read_be32(images, 0, iname) != kImageMagic) throw FormatError(iname + ": bad image magic", 0);
    const std::uint32_t count = read_be32(images, 4, iname);
    const std::uint32_t rows = read_be32(images, 8, iname);
    const std::uint32_t cols = read_be32(images, 12, iname);
    if (read_be32(labels, 0, lname) != kLabelMagic) throw FormatError(lname + ": bad label magic", 0);
    const std::uint32_t label_count = read_be32(labels, 4, lname);
    if (label_count != count)
        throw FormatError(lname + ": label count " + std::to_string(label_count) +
                              " does not match image count " + std::to_string(count),
                          4);

    const std::size_t p = std::size_t{rows} * cols;
    const std::size_t image_bytes = 16 + std::size_t{count} * p;
    if (images.size() < image_bytes) throw FormatError(iname + ": truncated pixel data", images.size());
    if (labels.size() < 8 + std::size_t{count}) throw FormatError(lname + ": truncated label data", labels.size());

    SampleList out(count);
    for (std::size_t i = 0; i < count; ++i) {
        Vector x(static_cast<Eigen::Index>(p));
        const unsigned char* px = images.data() + 16 + i * p;
        for (std::size_t j = 0; j < p; ++j) x[static_cast<Eigen::Index>(j)] = px[j] / 255.0;
        out[i].features = std::move(x);
        out[i].label = labels[8 + i];
        if (out[i].label > 9) throw FormatError(lname + ": label outside 0..9", 8 + i);
    }
    return out;
}

SampleList make_synthetic(const SyntheticSpec& spec) {
    if (spec.class_means.empty()) throw ConfigError("synthetic spec needs at least one class mean");
    if (!(spec.covariance_scale > 0.0) || !std::isfinite(spec.covariance_scale))
        throw ConfigError("synthetic covariance_scale must be positive");
    const auto p = spec.class_means.front().size();
    for (const auto& m : spec.class_means) {
        if (m.size() != p || p == 0) throw ConfigError("synthetic class means must share a nonzero dimension");
        if (!m.allFinite()) throw ConfigError("synthetic class means must be finite");
    }
    Rng rng(spec.seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(spec.covariance_scale));
    SampleList out;
    out.reserve(spec.class_means.size() * spec.samples_per_class);
    for (std::size_t c = 0; c < spec.class_means.size(); ++c) {
        for (std::size_t i = 0; i < spec.samples_per_class; ++i) {
            Vector x = spec.class_means[c];
            for (Eigen::Index j = 0; j < p; ++j) x[j] += noise(rng);
            out.push_back({std::move(x), static_cast<int>(c)});
        }
    }
    return out;
}

int Task::class_count(int source_classes) const {
    return kind == TaskKind::multiclass ? source_classes : 2;
}

std::string Task::name() const {
    switch (kind) {
    case TaskKind::binary: return "binary" + std::to_string(class_a) + "v" + std::to_string(class_b);
    case TaskKind::imbalanced: return "imbalanced" + std::to_string(minority);
    case TaskKind::multiclass: return "multiclass";
    }
    return "task";
}

void Task::validate(int source_classes) const {
    auto in_range = [&](int c) { return c >= 0 && c < source_classes; };
    switch (kind) {
    case TaskKind::binary:
        if (!in_range(class_a) || !in_range(class_b)) throw ConfigError("binary task class out of range");
        if (class_a == class_b) throw ConfigError("binary task classes must differ");
        break;
    case TaskKind::imbalanced:
        if (!in_range(minority)) throw ConfigError("minority class out of range");
        break;
    case TaskKind::multiclass:
        if (source_classes < 2) throw ConfigError("multiclass task needs at least 2 classes");
        break;
    }
}

SampleList apply_task(const SampleList& data, const Task& task, int source_classes) {
    task.validate(source_classes);
    SampleList out;
    out.reserve(data.size());
    for (const auto& s : data) {
        switch (task.kind) {
        case TaskKind::binary:
            if (s.label == task.class_a) out.push_back({s.features, 0});
            else if (s.label == task.class_b) out.push_back({s.features, 1});
            break;
        case TaskKind::imbalanced:
            out.push_back({s.features, s.label == task.minority ? 0 : 1});
            break;
        case TaskKind::multiclass:
            out.push_back(s);
            break;
        }
    }
    return out;
}

void normalize_unit_range(SampleList& reference, SampleList& other) {
    if (reference.empty()) return;
    const auto p = reference.front().features.size();
    Vector lo = reference.front().features;
    Vector hi = lo;
    for (const auto& s : reference) {
        lo = lo.cwiseMin(s.features);
        hi = hi.cwiseMax(s.features);
    }
    Vector span = hi - lo;
    for (Eigen::Index j = 0; j < p; ++j)
        if (!(span[j] > 0.0)) span[j] = 1.0;
    auto rescale = [&](Sample& s) {
        s.features = ((s.features - lo).array() / span.array()).cwiseMax(0.0).cwiseMin(1.0).matrix();
    };
    for (auto& s : reference) rescale(s);
    for (auto& s : other) rescale(s);
}

SeedRule default_seed_rule(const Task& task) {
    return task.kind == TaskKind::imbalanced ? SeedRule::one_minority_eight_majority
                                             : SeedRule::two_per_class;
}

Partition partition(const SampleList& train, int class_count, SeedRule rule, int device_count, Rng& rng) {
    if (device_count < 1) throw ConfigError("device_count must be at least 1");
    if (class_count < 2) throw ConfigError("partition needs at least 2 classes");

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::size_t> wanted(static_cast<std::size_t>(class_count), 2);
    if (rule == SeedRule::one_minority_eight_majority) {
        if (class_count != 2) throw ConfigError("imbalanced seed rule needs a two-class task");
        wanted = {1, 8};
    }

    Partition out;
    std::vector<std::size_t> rest;
    rest.reserve(order.size());
    for (std::size_t idx : order) {
        const int label = train[idx].label;
        if (label < 0 || label >= class_count) throw InputError("partition: label out of range");
        auto& need = wanted[static_cast<std::size_t>(label)];
        if (need > 0) {
            --need;
            out.seed_set.push_back(idx);
        } else {
            rest.push_back(idx);
        }
    }
    for (std::size_t c = 0; c < wanted.size(); ++c) {
        if (wanted[c] > 0)
            throw InsufficientDataError("partition: class " + std::to_string(c) + " has too few samples for the seed set");
    }
    if (rest.size() < static_cast<std::size_t>(device_count))
        throw InsufficientDataError("partition: fewer remaining samples than devices");

    const std::size_t base = rest.size() / static_cast<std::size_t>(device_count);
    const std::size_t extra = rest.size() % static_cast<std::size_t>(device_count);
    std::size_t cursor = 0;
    for (int d = 0; d < device_count; ++d) {
        const std::size_t n = base + (static_cast<std::size_t>(d) < extra ? 1 : 0);
        DeviceShard shard;
        shard.device_id = d;
        shard.queue.assign(rest.begin() + static_cast<std::ptrdiff_t>(cursor),
                           rest.begin() + static_cast<std::ptrdiff_t>(cursor + n));
        cursor += n;
        out.shards.push_back(std::move(shard));
    }
    return out;
}

LoadedDataset load_dataset(const DatasetSpec& spec) {
    LoadedDataset out;
    out.task = spec.task;
    if (const auto* mnist = std::get_if<MnistSource>(&spec.source)) {
        const auto& dir = mnist->directory;
        SampleList train = load_mnist_idx(dir / "train-images-idx3-ubyte", dir / "train-labels-idx1-ubyte");
        SampleList test = load_mnist_idx(dir / "t10k-images-idx3-ubyte", dir / "t10k-labels-idx1-ubyte");
        out.train = apply_task(train, spec.task, 10);
        out.test = apply_task(test, spec.task, 10);
        out.class_count = spec.task.class_count(10);
    } else {
        const auto& syn = std::get<SyntheticSource>(spec.source);
        const int classes = static_cast<int>(syn.spec.class_means.size());
        SampleList train = make_synthetic(syn.spec);
        SyntheticSpec test_spec = syn.spec;
        test_spec.samples_per_class = syn.test_samples_per_class;
        test_spec.seed = mix64(syn.spec.seed ^ 0x7e57ULL);
        SampleList test = make_synthetic(test_spec);
        out.train = apply_task(train, spec.task, classes);
        out.test = apply_task(test, spec.task, classes);
        normalize_unit_range(out.train, out.test);
        out.class_count = spec.task.class_count(classes);
    }
    return out;
}

} // namespace iarq
