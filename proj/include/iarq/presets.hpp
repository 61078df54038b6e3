#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iarq/datasets.hpp"
#include "iarq/simulator.hpp"

namespace iarq {

enum class PolicyChoice { importance, channel, none };

std::string_view to_string(PolicyChoice p);
PolicyChoice policy_choice_from_string(std::string_view name);

/// Threshold settings from which the three policies are built. SNR values are linear.
struct PolicyParameters {
    double alignment_probability = 0.8;     ///< p_c
    std::optional<double> conversion_ratio; ///< explicit theta_0 for the entropy policy
    double importance_max_snr = 10.0;       ///< theta_SNR cap of the importance policy
    double channel_max_snr = 10.0;          ///< theta_SNR of the channel-aware policy
};

/// Builds the ArqConfig for `choice`. The importance variant follows the model:
/// binary SVM, one-vs-one SVM or entropy.
ArqConfig make_arq(PolicyChoice choice, const PolicyParameters& params, ModelKind model, int class_count);

struct ExperimentPreset {
    std::string name;
    DatasetSpec dataset;
    SimulationConfig simulation; ///< arq left at none; see make_arq
    PolicyParameters policy;
    bool uses_mnist = true;
};

std::vector<std::string> preset_names();

/// Full-scale preset, or its reduced variant with `desk_scale`. The MNIST directory is left
/// empty for the caller to fill in. Throws UsageError for an unknown name.
ExperimentPreset make_preset(std::string_view name, bool desk_scale);

/// Class count a dataset spec produces, without loading it.
int class_count_of(const DatasetSpec& spec);

} // namespace iarq
