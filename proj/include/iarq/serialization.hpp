#pragma once

#include <nlohmann/json.hpp>

#include "iarq/datasets.hpp"
#include "iarq/multiclass_svm.hpp"
#include "iarq/simulator.hpp"
#include "iarq/softmax.hpp"
#include "iarq/svm.hpp"

namespace iarq {

using Json = nlohmann::json;

// Configuration echo. SNR values are written both linear and in dB; only the linear
// values are read back.
Json to_json(const ChannelConfig& cfg);
Json to_json(const ArqConfig& cfg);
Json to_json(const SimulationConfig& cfg);
Json to_json(const Task& task);
Json to_json(const DatasetSpec& spec);

ChannelConfig channel_config_from_json(const Json& j);
ArqConfig arq_config_from_json(const Json& j);
SimulationConfig simulation_config_from_json(const Json& j);
Task task_from_json(const Json& j);
DatasetSpec dataset_spec_from_json(const Json& j);

// Model snapshots:
//   {"type": "binary_svm", "weights": [...], "bias": b}
//   {"type": "multiclass_svm", "classes": [0..C-1], "coding_matrix": [[...]...],
//    "components": [{"positive": a, "negative": b, "weights": [...], "bias": b} | null, ...]}
//   {"type": "softmax", "classes": [...], "weights": [[...]...], "bias": [...]}
Json to_json(const LinearBoundary& boundary);
Json to_json(const MulticlassSvm& model);
Json to_json(const SoftmaxModel& model);

LinearBoundary linear_boundary_from_json(const Json& j);
MulticlassSvm multiclass_svm_from_json(const Json& j);
SoftmaxModel softmax_model_from_json(const Json& j);

/// Summary statistics written next to a run's CSV files.
Json run_summary(const RunLog& log);

} // namespace iarq
