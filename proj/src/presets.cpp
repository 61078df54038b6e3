#include "iarq/presets.hpp"

#include <string>

#include "iarq/errors.hpp"

namespace iarq {

std::string_view to_string(PolicyChoice p) {
    switch (p) {
    case PolicyChoice::importance: return "importance";
    case PolicyChoice::channel: return "channel";
    case PolicyChoice::none: return "none";
    }
    return "?";
}

PolicyChoice policy_choice_from_string(std::string_view name) {
    if (name == "importance") return PolicyChoice::importance;
    if (name == "channel") return PolicyChoice::channel;
    if (name == "none") return PolicyChoice::none;
    throw UsageError("unknown policy '" + std::string(name) + "' (expected importance, channel or none)");
}

ArqConfig make_arq(PolicyChoice choice, const PolicyParameters& params, ModelKind model, int class_count) {
    switch (choice) {
    case PolicyChoice::none: return ArqConfig::none();
    case PolicyChoice::channel: return ArqConfig::channel_aware(params.channel_max_snr);
    case PolicyChoice::importance: break;
    }
    if (model == ModelKind::softmax) {
        if (params.conversion_ratio)
            return ArqConfig::importance_entropy(*params.conversion_ratio, params.importance_max_snr, class_count);
        return ArqConfig::importance_entropy_from_pc(params.alignment_probability, params.importance_max_snr,
                                                     class_count);
    }
    return ArqConfig::importance_svm(params.alignment_probability, params.importance_max_snr, class_count > 2);
}

namespace {

constexpr const char* kNames[] = {"binary-svm-balanced", "multiclass-svm", "softmax-entropy",
                                  "imbalanced-svm", "imbalanced-softmax", "softmax-synthetic"};

SimulationConfig base_simulation(ModelKind model, std::size_t budget, std::size_t reps) {
    SimulationConfig sim;
    sim.channel = ChannelConfig::from_snr_db(4.0, 0);
    sim.model_kind = model;
    sim.budget_blocks = budget;
    sim.repetitions = reps;
    sim.device_count = 10;
    sim.metric_cadence = budget >= 10000 ? 500 : 100;
    sim.learner.svm.slack_penalty = 1.0;
    sim.learner.svm.max_iterations = 1000000;
    if (model == ModelKind::softmax) {
        sim.retrain_cadence = 10;
        sim.learner.softmax.learning_rate = 0.5;
        sim.learner.softmax.momentum = 0.9;
        sim.learner.softmax.batch_size = 2048;
        sim.learner.softmax.epochs = 120;
    }
    return sim;
}

SyntheticSource four_blobs() {
    SyntheticSource src;
    const int dim = 8;
    for (int c = 0; c < 4; ++c) {
        Vector m = Vector::Zero(dim);
        m[2 * c] = 2.0;
        m[2 * c + 1] = 2.0;
        src.spec.class_means.push_back(m);
    }
    src.spec.covariance_scale = 1.0;
    src.spec.samples_per_class = 1500;
    src.spec.seed = 2024;
    src.test_samples_per_class = 500;
    return src;
}

} // namespace

std::vector<std::string> preset_names() { return {std::begin(kNames), std::end(kNames)}; }

ExperimentPreset make_preset(std::string_view name, bool desk_scale) {
    ExperimentPreset p;
    p.name = std::string(name);
    if (name == "binary-svm-balanced") {
        p.dataset = {MnistSource{}, Task::binary(3, 5)};
        p.simulation = base_simulation(ModelKind::svm, 4000, desk_scale ? 20 : 200);
        p.policy = {0.8, std::nullopt, db_to_linear(20.0), db_to_linear(7.0)};
    } else if (name == "multiclass-svm") {
        p.dataset = {MnistSource{}, Task::multiclass()};
        p.simulation = base_simulation(ModelKind::svm, desk_scale ? 4000 : 20000, desk_scale ? 3 : 20);
        p.policy = {0.8, std::nullopt, db_to_linear(20.0), db_to_linear(7.0)};
    } else if (name == "softmax-entropy") {
        p.dataset = {MnistSource{}, Task::multiclass()};
        p.simulation = base_simulation(ModelKind::softmax, desk_scale ? 4000 : 20000, desk_scale ? 3 : 20);
        p.policy = {0.8, db_to_linear(6.0), db_to_linear(20.0), db_to_linear(17.0)};
    } else if (name == "imbalanced-svm") {
        p.dataset = {MnistSource{}, Task::imbalanced(1)};
        p.simulation = base_simulation(ModelKind::svm, 4000, desk_scale ? 20 : 200);
        p.policy = {0.8, std::nullopt, db_to_linear(20.0), db_to_linear(5.0)};
    } else if (name == "imbalanced-softmax") {
        p.dataset = {MnistSource{}, Task::imbalanced(1)};
        p.simulation = base_simulation(ModelKind::softmax, 4000, desk_scale ? 20 : 200);
        p.policy = {0.8, db_to_linear(6.0), db_to_linear(20.0), db_to_linear(17.0)};
    } else if (name == "softmax-synthetic") {
        p.dataset = {four_blobs(), Task::multiclass()};
        p.simulation = base_simulation(ModelKind::softmax, 2000, desk_scale ? 20 : 100);
        p.simulation.learner.softmax.batch_size = 64;
        p.simulation.learner.softmax.epochs = 5;
        p.policy = {0.8, db_to_linear(6.0), db_to_linear(20.0), db_to_linear(17.0)};
        p.uses_mnist = false;
    } else {
        std::string known;
        for (const auto* n : kNames) known += std::string(known.empty() ? "" : ", ") + n;
        throw UsageError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
    }
    if (desk_scale && p.simulation.model_kind == ModelKind::svm) {
        p.simulation.retrain_cadence = 25;
        p.simulation.learner.svm.kkt_tolerance = 0.1;
    }
    return p;
}

int class_count_of(const DatasetSpec& spec) {
    if (std::holds_alternative<MnistSource>(spec.source)) return spec.task.class_count(10);
    return spec.task.class_count(static_cast<int>(std::get<SyntheticSource>(spec.source).spec.class_means.size()));
}

} // namespace iarq
