#include "iarq/serialization.hpp"

#include <string>

#include "iarq/errors.hpp"

namespace iarq {

namespace {

Json vec_to_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vec_from_json(const Json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

template <typename T>
T required(const Json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

} // namespace

Json to_json(const ChannelConfig& cfg) {
    return {{"transmit_power", cfg.transmit_power},
            {"noise_variance", cfg.noise_variance},
            {"average_snr", cfg.average_snr()},
            {"average_snr_db", cfg.average_snr_db()},
            {"rng_seed", cfg.rng_seed}};
}

ChannelConfig channel_config_from_json(const Json& j) {
    ChannelConfig cfg;
    cfg.transmit_power = required<double>(j, "transmit_power");
    cfg.noise_variance = required<double>(j, "noise_variance");
    cfg.rng_seed = j.value("rng_seed", std::uint64_t{0});
    cfg.validate();
    return cfg;
}

Json to_json(const ArqConfig& cfg) {
    Json j = {{"policy_kind", std::string(to_string(cfg.kind))},
              {"conversion_ratio", cfg.conversion_ratio},
              {"max_snr_threshold", cfg.max_snr_threshold},
              {"entropy_scaling", cfg.entropy_scaling},
              {"max_entropy", cfg.max_entropy}};
    j["alignment_probability"] = cfg.alignment_probability ? Json(*cfg.alignment_probability) : Json(nullptr);
    if (cfg.max_snr_threshold > 0.0) j["max_snr_threshold_db"] = linear_to_db(cfg.max_snr_threshold);
    return j;
}

ArqConfig arq_config_from_json(const Json& j) {
    const PolicyKind kind = policy_kind_from_string(required<std::string>(j, "policy_kind"));
    const double max_snr = j.value("max_snr_threshold", 0.0);
    const Json pc = j.value("alignment_probability", Json(nullptr));
    switch (kind) {
    case PolicyKind::none: return ArqConfig::none();
    case PolicyKind::channel_aware: return ArqConfig::channel_aware(max_snr);
    case PolicyKind::importance_svm_binary:
    case PolicyKind::importance_svm_multiclass:
        return ArqConfig::importance_svm(pc.is_null() ? throw ConfigError("importance SVM policy needs alignment_probability")
                                                      : pc.get<double>(),
                                         max_snr, kind == PolicyKind::importance_svm_multiclass);
    case PolicyKind::importance_entropy: {
        const double max_entropy = required<double>(j, "max_entropy");
        const int classes = static_cast<int>(std::lround(std::exp(max_entropy)));
        if (!pc.is_null()) return ArqConfig::importance_entropy_from_pc(pc.get<double>(), max_snr, classes);
        return ArqConfig::importance_entropy(required<double>(j, "conversion_ratio"), max_snr, classes);
    }
    }
    throw ConfigError("unhandled policy kind");
}

Json to_json(const SimulationConfig& cfg) {
    return {{"channel", to_json(cfg.channel)},
            {"arq", to_json(cfg.arq)},
            {"model_kind", std::string(to_string(cfg.model_kind))},
            {"budget_blocks", cfg.budget_blocks},
            {"budget_unit", "symbol_block"},
            {"retrain_cadence", cfg.retrain_cadence},
            {"metric_cadence", cfg.metric_cadence},
            {"repetitions", cfg.repetitions},
            {"rng_seed", cfg.rng_seed},
            {"device_count", cfg.device_count},
            {"svm",
             {{"slack_penalty", cfg.learner.svm.slack_penalty},
              {"max_iterations", cfg.learner.svm.max_iterations},
              {"kkt_tolerance", cfg.learner.svm.kkt_tolerance}}},
            {"softmax",
             {{"learning_rate", cfg.learner.softmax.learning_rate},
              {"momentum", cfg.learner.softmax.momentum},
              {"epochs", cfg.learner.softmax.epochs},
              {"batch_size", cfg.learner.softmax.batch_size},
              {"weight_decay", cfg.learner.softmax.weight_decay}}}};
}

SimulationConfig simulation_config_from_json(const Json& j) {
    SimulationConfig cfg;
    cfg.channel = channel_config_from_json(required<Json>(j, "channel"));
    cfg.arq = arq_config_from_json(required<Json>(j, "arq"));
    cfg.model_kind = model_kind_from_string(required<std::string>(j, "model_kind"));
    cfg.budget_blocks = required<std::size_t>(j, "budget_blocks");
    cfg.retrain_cadence = required<std::size_t>(j, "retrain_cadence");
    cfg.metric_cadence = required<std::size_t>(j, "metric_cadence");
    cfg.repetitions = required<std::size_t>(j, "repetitions");
    cfg.rng_seed = required<std::uint64_t>(j, "rng_seed");
    cfg.device_count = required<int>(j, "device_count");
    if (j.contains("svm")) {
        const Json& s = j.at("svm");
        cfg.learner.svm.slack_penalty = required<double>(s, "slack_penalty");
        cfg.learner.svm.max_iterations = required<std::size_t>(s, "max_iterations");
        cfg.learner.svm.kkt_tolerance = required<double>(s, "kkt_tolerance");
    }
    if (j.contains("softmax")) {
        const Json& s = j.at("softmax");
        cfg.learner.softmax.learning_rate = required<double>(s, "learning_rate");
        cfg.learner.softmax.momentum = required<double>(s, "momentum");
        cfg.learner.softmax.epochs = required<std::size_t>(s, "epochs");
        cfg.learner.softmax.batch_size = required<std::size_t>(s, "batch_size");
        cfg.learner.softmax.weight_decay = required<double>(s, "weight_decay");
    }
    cfg.validate();
    return cfg;
}

Json to_json(const Task& task) {
    switch (task.kind) {
    case TaskKind::binary: return {{"kind", "binary"}, {"class_a", task.class_a}, {"class_b", task.class_b}};
    case TaskKind::imbalanced: return {{"kind", "imbalanced"}, {"minority", task.minority}};
    case TaskKind::multiclass: return {{"kind", "multiclass"}};
    }
    return {};
}

Task task_from_json(const Json& j) {
    const auto kind = required<std::string>(j, "kind");
    if (kind == "binary") return Task::binary(required<int>(j, "class_a"), required<int>(j, "class_b"));
    if (kind == "imbalanced") return Task::imbalanced(required<int>(j, "minority"));
    if (kind == "multiclass") return Task::multiclass();
    throw ConfigError("unknown task kind '" + kind + "'");
}

Json to_json(const DatasetSpec& spec) {
    Json j;
    j["task"] = to_json(spec.task);
    j["normalization"] = "unit_range";
    if (const auto* m = std::get_if<MnistSource>(&spec.source)) {
        j["source"] = {{"kind", "mnist_idx"}, {"directory", m->directory.string()}};
    } else {
        const auto& s = std::get<SyntheticSource>(spec.source);
        Json means = Json::array();
        for (const auto& m : s.spec.class_means) means.push_back(vec_to_json(m));
        j["source"] = {{"kind", "synthetic_gaussian"},
                       {"class_means", means},
                       {"covariance_scale", s.spec.covariance_scale},
                       {"samples_per_class", s.spec.samples_per_class},
                       {"test_samples_per_class", s.test_samples_per_class},
                       {"seed", s.spec.seed}};
    }
    return j;
}

DatasetSpec dataset_spec_from_json(const Json& j) {
    DatasetSpec spec;
    spec.task = task_from_json(required<Json>(j, "task"));
    const Json src = required<Json>(j, "source");
    const auto kind = required<std::string>(src, "kind");
    if (kind == "mnist_idx") {
        spec.source = MnistSource{required<std::string>(src, "directory")};
    } else if (kind == "synthetic_gaussian") {
        SyntheticSource s;
        for (const auto& m : required<Json>(src, "class_means")) s.spec.class_means.push_back(vec_from_json(m));
        s.spec.covariance_scale = required<double>(src, "covariance_scale");
        s.spec.samples_per_class = required<std::size_t>(src, "samples_per_class");
        s.test_samples_per_class = required<std::size_t>(src, "test_samples_per_class");
        s.spec.seed = required<std::uint64_t>(src, "seed");
        spec.source = s;
    } else {
        throw ConfigError("unknown dataset source '" + kind + "'");
    }
    return spec;
}

Json to_json(const LinearBoundary& boundary) {
    return {{"type", "binary_svm"}, {"weights", vec_to_json(boundary.weights)}, {"bias", boundary.bias}};
}

LinearBoundary linear_boundary_from_json(const Json& j) {
    return {vec_from_json(required<Json>(j, "weights")), required<double>(j, "bias")};
}

Json to_json(const MulticlassSvm& model) {
    Json classes = Json::array();
    Json matrix = Json::array();
    for (int c = 0; c < model.coding.classes(); ++c) {
        classes.push_back(c);
        Json row = Json::array();
        for (int l = 0; l < model.coding.components(); ++l) row.push_back(model.coding.at(c, l));
        matrix.push_back(row);
    }
    Json components = Json::array();
    for (std::size_t l = 0; l < model.boundaries.size(); ++l) {
        const auto [pos, neg] = model.coding.pair(static_cast<int>(l));
        if (!model.boundaries[l]) {
            components.push_back(nullptr);
            continue;
        }
        components.push_back({{"positive", pos},
                              {"negative", neg},
                              {"weights", vec_to_json(model.boundaries[l]->weights)},
                              {"bias", model.boundaries[l]->bias}});
    }
    return {{"type", "multiclass_svm"}, {"classes", classes}, {"coding_matrix", matrix}, {"components", components}};
}

MulticlassSvm multiclass_svm_from_json(const Json& j) {
    const auto classes = required<std::vector<int>>(j, "classes");
    MulticlassSvm model{CodingMatrix(static_cast<int>(classes.size())), {}};
    const Json comps = required<Json>(j, "components");
    if (static_cast<int>(comps.size()) != model.coding.components())
        throw ConfigError("multiclass_svm: component count does not match class count");
    for (const auto& c : comps) {
        if (c.is_null()) model.boundaries.emplace_back();
        else model.boundaries.emplace_back(linear_boundary_from_json(c));
    }
    return model;
}

Json to_json(const SoftmaxModel& model) {
    Json classes = Json::array();
    Json rows = Json::array();
    for (int c = 0; c < model.class_count(); ++c) {
        classes.push_back(c);
        rows.push_back(vec_to_json(model.weights.row(c).transpose()));
    }
    return {{"type", "softmax"}, {"classes", classes}, {"weights", rows}, {"bias", vec_to_json(model.bias)}};
}

SoftmaxModel softmax_model_from_json(const Json& j) {
    const Json rows = required<Json>(j, "weights");
    SoftmaxModel m;
    m.bias = vec_from_json(required<Json>(j, "bias"));
    if (rows.size() != static_cast<std::size_t>(m.bias.size())) throw ConfigError("softmax: weights/bias size mismatch");
    for (std::size_t c = 0; c < rows.size(); ++c) {
        const Vector r = vec_from_json(rows[c]);
        if (c == 0) m.weights.resize(static_cast<Eigen::Index>(rows.size()), r.size());
        if (r.size() != m.weights.cols()) throw ConfigError("softmax: ragged weight matrix");
        m.weights.row(static_cast<Eigen::Index>(c)) = r.transpose();
    }
    return m;
}

Json run_summary(const RunLog& log) {
    const auto& last = log.curve.back().metrics;
    double peak = 0.0;
    for (const auto& p : log.curve) peak = std::max(peak, p.metrics.accuracy);
    double mean_t = 0.0;
    for (const auto& a : log.accepted) mean_t += a.attempts;
    if (!log.accepted.empty()) mean_t /= static_cast<double>(log.accepted.size());
    return {{"policy", log.policy},
            {"model", log.model},
            {"task", log.task},
            {"seed", log.seed},
            {"budget_blocks", log.budget_blocks},
            {"blocks_used", log.blocks_used},
            {"pool_exhausted", log.pool_exhausted},
            {"seed_set_size", log.seed_set_size},
            {"minority_fraction", log.minority_fraction},
            {"accepted_samples", log.accepted.size()},
            {"abandoned_samples", log.abandoned.size()},
            {"mean_transmissions_per_accepted", mean_t},
            {"transmissions_by_uncertainty_quartile", transmissions_by_uncertainty_bin(log, 4)},
            {"final_accuracy", last.accuracy},
            {"peak_accuracy", peak},
            {"final_g_mean", last.g_mean},
            {"final_f_measure", last.f_measure}};
}

} // namespace iarq
