#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "iarq/arq.hpp"
#include "iarq/channel.hpp"
#include "iarq/datasets.hpp"
#include "iarq/learner.hpp"
#include "iarq/metrics.hpp"

namespace iarq {

struct SimulationConfig {
    ChannelConfig channel;
    ArqConfig arq;
    ModelKind model_kind = ModelKind::svm;
    std::size_t budget_blocks = 4000;  ///< one block = one transmission of one sample
    std::size_t retrain_cadence = 1;   ///< accepted samples between retrains
    std::size_t metric_cadence = 100;  ///< blocks between metric evaluations
    std::size_t repetitions = 1;
    std::uint64_t rng_seed = 0;
    int device_count = 10;
    LearnerConfig learner;

    void validate() const;
};

/// One decision taken during acquisition.
struct DecisionRecord {
    std::size_t round = 0;     ///< acquisition round (one per scheduled sample)
    std::size_t sample_id = 0; ///< index into the training pool
    int attempt = 0;           ///< T after this block
    DecisionTrace trace;
};

struct AcceptedRecord {
    std::size_t round = 0;
    std::size_t sample_id = 0;
    int device = 0;
    int label = 0;
    int attempts = 0;
    double final_snr = 0.0;
    Uncertainty first_uncertainty; ///< model uncertainty after the first block
    Uncertainty final_uncertainty; ///< model uncertainty of the accepted estimate
};

struct AbandonedRecord {
    std::size_t round = 0;
    std::size_t sample_id = 0;
    int attempts = 0;
};

struct MetricPoint {
    std::size_t budget_spent = 0;
    std::size_t accepted = 0;
    MetricsRecord metrics;
};

struct RunLog {
    std::string policy;
    std::string model;
    std::string task;
    std::uint64_t seed = 0;
    std::string config_key; ///< canonical config without the seed; equal for comparable runs
    std::size_t budget_blocks = 0;
    std::size_t blocks_used = 0;
    bool pool_exhausted = false;
    std::size_t seed_set_size = 0;
    double minority_fraction = 0.0; ///< class-0 share of the training pool (binary tasks)

    std::vector<DecisionRecord> decisions;
    std::vector<AcceptedRecord> accepted;
    std::vector<AbandonedRecord> abandoned;
    std::vector<MetricPoint> curve;

    std::string file_stem() const;
};

/// Accuracy for every task; the confusion-based metrics for two-class tasks
/// (class 0 is the positive class). Throws UsageError for an empty test set.
MetricsRecord evaluate(const Learner& model, const SampleList& test, const Task& task);
ConfusionCounts confusion(const Learner& model, const SampleList& test);

/// One acquisition run. Partition, channel and solver randomness all derive from cfg.rng_seed.
RunLog run(const SimulationConfig& cfg, const LoadedDataset& data);

/// Runs cfg.repetitions independent runs with seeds derive_seed(cfg.rng_seed, i).
std::vector<RunLog> run_repetitions(const SimulationConfig& cfg, const LoadedDataset& data);

/// Stopping time of a single acquisition with a fixed model snapshot.
///
/// Replays pre-drawn attempts in order until the policy accepts; returns the number of
/// blocks used, or attempts.size() + 1 if it never accepts within them.
std::size_t blocks_until_accept(const Learner& model, const Channel& channel,
                                std::span<const TransmissionAttempt> attempts, const ArqConfig& cfg);

DecisionTrace decide(const Learner& model, const Vector& estimate, double effective_snr, const ArqConfig& cfg);

struct MetricSeries {
    std::vector<double> mean;
    std::vector<double> stderr_;
};

struct AggregateCurve {
    std::vector<double> budget;
    MetricSeries accuracy;
    MetricSeries g_mean;
    MetricSeries f_measure;
    std::size_t runs = 0;
};

/// Pointwise mean and standard error on the first log's budget grid, with linear
/// interpolation of the other logs. Throws UsageError for an empty list or mismatched configs.
AggregateCurve aggregate(const std::vector<RunLog>& logs);

/// Mean transmissions per accepted sample within equal-count bins of final uncertainty,
/// lowest uncertainty first.
std::vector<double> transmissions_by_uncertainty_bin(const RunLog& log, std::size_t bins = 4);

} // namespace iarq
