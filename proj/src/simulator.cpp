#include "iarq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "iarq/errors.hpp"
#include "iarq/serialization.hpp"

namespace iarq {

void SimulationConfig::validate() const {
    channel.validate();
    arq.validate();
    learner.svm.validate();
    learner.softmax.validate();
    if (budget_blocks < 1) throw ConfigError("budget_blocks must be at least 1");
    if (retrain_cadence < 1) throw ConfigError("retrain_cadence must be at least 1");
    if (metric_cadence < 1) throw ConfigError("metric_cadence must be at least 1");
    if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
    if (device_count < 1) throw ConfigError("device_count must be at least 1");
}

std::string RunLog::file_stem() const {
    return policy + "_" + model + "_" + task + "_" + std::to_string(seed);
}

ConfusionCounts confusion(const Learner& model, const SampleList& test) {
    ConfusionCounts c;
    for (const auto& s : test) {
        const bool predicted_positive = model.predict(s.features) == 0;
        const bool positive = s.label == 0;
        if (positive) (predicted_positive ? c.true_positive : c.false_negative)++;
        else (predicted_positive ? c.false_positive : c.true_negative)++;
    }
    return c;
}

MetricsRecord evaluate(const Learner& model, const SampleList& test, const Task& task) {
    if (test.empty()) throw UsageError("evaluate: empty test set");
    if (task.kind != TaskKind::multiclass || model.class_count() == 2) {
        return metrics_from_confusion(confusion(model, test));
    }
    std::size_t correct = 0;
    for (const auto& s : test) correct += model.predict(s.features) == s.label;
    MetricsRecord m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(test.size());
    return m;
}

DecisionTrace decide(const Learner& model, const Vector& estimate, double effective_snr, const ArqConfig& cfg) {
    switch (cfg.kind) {
    case PolicyKind::none: return decide_none(effective_snr);
    case PolicyKind::channel_aware: return decide_channel_aware(effective_snr, cfg);
    default: return model.decide_importance(estimate, effective_snr, cfg);
    }
}

std::size_t blocks_until_accept(const Learner& model, const Channel& channel,
                                std::span<const TransmissionAttempt> attempts, const ArqConfig& cfg) {
    CombinedSample combined;
    for (std::size_t t = 0; t < attempts.size(); ++t) {
        combined = channel.add_attempt(combined, attempts[t]);
        if (decide(model, combined.estimate, combined.effective_snr, cfg).decision == Decision::accept)
            return t + 1;
    }
    return attempts.size() + 1;
}

namespace {

std::string policy_label(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::none: return "none";
    case PolicyKind::channel_aware: return "channel";
    default: return "importance";
    }
}

std::string config_key(const SimulationConfig& cfg, const Task& task) {
    SimulationConfig copy = cfg;
    copy.rng_seed = 0;
    copy.channel.rng_seed = 0;
    copy.learner.svm.seed = 0;
    copy.learner.softmax.seed = 0;
    copy.repetitions = 1;
    Json j = to_json(copy);
    j["task"] = to_json(task);
    return j.dump();
}

} // namespace

RunLog run(const SimulationConfig& cfg_in, const LoadedDataset& data) {
    cfg_in.validate();
    SimulationConfig cfg = cfg_in;
    // Every random stream of the run derives from its seed.
    cfg.channel.rng_seed = cfg.rng_seed;
    cfg.learner.svm.seed = mix64(cfg.rng_seed ^ 0x5356ULL);
    cfg.learner.softmax.seed = mix64(cfg.rng_seed ^ 0x534dULL);

    RunLog log;
    log.policy = policy_label(cfg.arq.kind);
    log.model = std::string(to_string(cfg.model_kind));
    log.task = data.task.name();
    log.seed = cfg.rng_seed;
    log.config_key = config_key(cfg_in, data.task);
    log.budget_blocks = cfg.budget_blocks;

    auto learner = make_learner(cfg.model_kind, data.class_count, cfg.learner);
    if (cfg.arq.kind != PolicyKind::none && cfg.arq.kind != PolicyKind::channel_aware &&
        !learner->supports(cfg.arq.kind))
        throw ConfigError("policy " + std::string(to_string(cfg.arq.kind)) + " does not fit model " + log.model);

    Rng rng(cfg.rng_seed);
    const Partition parts = partition(data.train, data.class_count, default_seed_rule(data.task),
                                      cfg.device_count, rng);
    if (data.class_count == 2) {
        const auto positives = std::count_if(data.train.begin(), data.train.end(),
                                             [](const Sample& s) { return s.label == 0; });
        log.minority_fraction = static_cast<double>(positives) / static_cast<double>(data.train.size());
    }
    log.seed_set_size = parts.seed_set.size();
    for (std::size_t idx : parts.seed_set) learner->add(data.train[idx]);
    learner->retrain();

    const Channel channel(cfg.channel);
    std::size_t spent = 0;
    std::size_t accepted = 0;
    std::size_t since_retrain = 0;
    auto record_metrics = [&] {
        log.curve.push_back({spent, accepted, evaluate(*learner, data.test, data.task)});
    };
    record_metrics();

    std::vector<std::size_t> cursor(parts.shards.size(), 0);
    std::size_t device = 0;
    std::size_t round = 0;

    while (spent < cfg.budget_blocks) {
        // Round-robin over devices that still have data.
        std::size_t tried = 0;
        while (tried < parts.shards.size() && cursor[device] >= parts.shards[device].queue.size()) {
            device = (device + 1) % parts.shards.size();
            ++tried;
        }
        if (tried == parts.shards.size()) {
            log.pool_exhausted = true;
            break;
        }
        const std::size_t sample_id = parts.shards[device].queue[cursor[device]++];
        const int device_id = parts.shards[device].device_id;
        device = (device + 1) % parts.shards.size();
        const Sample& sample = data.train[sample_id];

        CombinedSample combined;
        int blocks = 0;
        Uncertainty first_uncertainty;
        bool done = false;
        while (!done) {
            if (spent >= cfg.budget_blocks) {
                log.abandoned.push_back({round, sample_id, blocks});
                break;
            }
            const TransmissionAttempt attempt = channel.transmit(as_span(sample.features), rng);
            ++spent;
            ++blocks;
            try {
                combined = channel.add_attempt(combined, attempt);
            } catch (const DegenerateChannelError&) {
                // Nothing usable received yet: ask again.
                combined = CombinedSample{};
                log.decisions.push_back({round, sample_id, blocks, {Uncertainty::infinite(), 0.0, 0.0, Decision::retransmit}});
                if (spent % cfg.metric_cadence == 0) record_metrics();
                continue;
            }

            DecisionTrace trace = decide(*learner, combined.estimate, combined.effective_snr, cfg.arq);
            if (cfg.arq.kind == PolicyKind::none || cfg.arq.kind == PolicyKind::channel_aware)
                trace.uncertainty = learner->uncertainty(combined.estimate);
            if (blocks == 1) first_uncertainty = trace.uncertainty;
            log.decisions.push_back({round, sample_id, blocks, trace});

            if (trace.decision == Decision::accept) {
                done = true;
                ++accepted;
                log.accepted.push_back({round, sample_id, device_id, sample.label, blocks,
                                        combined.effective_snr, first_uncertainty,
                                        trace.uncertainty});
                learner->add({combined.estimate, sample.label});
                if (++since_retrain >= cfg.retrain_cadence) {
                    learner->retrain();
                    since_retrain = 0;
                }
            }
            if (spent % cfg.metric_cadence == 0) record_metrics();
        }
        ++round;
    }
    if (log.curve.back().budget_spent != spent) record_metrics();
    log.blocks_used = spent;
    return log;
}

std::vector<RunLog> run_repetitions(const SimulationConfig& cfg, const LoadedDataset& data) {
    std::vector<RunLog> logs;
    logs.reserve(cfg.repetitions);
    for (std::size_t i = 0; i < cfg.repetitions; ++i) {
        SimulationConfig one = cfg;
        one.rng_seed = derive_seed(cfg.rng_seed, i);
        logs.push_back(run(one, data));
    }
    return logs;
}

namespace {

double interpolate(const std::vector<MetricPoint>& curve, double budget, double MetricsRecord::*field) {
    if (budget <= static_cast<double>(curve.front().budget_spent)) return curve.front().metrics.*field;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double x1 = static_cast<double>(curve[i].budget_spent);
        if (budget <= x1) {
            const double x0 = static_cast<double>(curve[i - 1].budget_spent);
            const double y0 = curve[i - 1].metrics.*field;
            const double y1 = curve[i].metrics.*field;
            if (x1 == x0) return y1;
            return y0 + (y1 - y0) * (budget - x0) / (x1 - x0);
        }
    }
    return curve.back().metrics.*field;
}

MetricSeries series(const std::vector<RunLog>& logs, const std::vector<double>& grid,
                    double MetricsRecord::*field) {
    MetricSeries out;
    const double n = static_cast<double>(logs.size());
    for (double b : grid) {
        double sum = 0.0;
        double sq = 0.0;
        for (const auto& log : logs) {
            const double v = interpolate(log.curve, b, field);
            sum += v;
            sq += v * v;
        }
        const double mean = sum / n;
        double var = logs.size() > 1 ? (sq - n * mean * mean) / (n - 1.0) : 0.0;
        var = std::max(var, 0.0);
        out.mean.push_back(mean);
        out.stderr_.push_back(std::sqrt(var / n));
    }
    return out;
}

} // namespace

AggregateCurve aggregate(const std::vector<RunLog>& logs) {
    if (logs.empty()) throw UsageError("aggregate: no logs");
    for (const auto& log : logs) {
        if (log.config_key != logs.front().config_key) throw UsageError("aggregate: logs come from different configs");
        if (log.curve.empty()) throw UsageError("aggregate: log without metric curve");
    }
    AggregateCurve out;
    out.runs = logs.size();
    for (const auto& p : logs.front().curve) out.budget.push_back(static_cast<double>(p.budget_spent));
    out.accuracy = series(logs, out.budget, &MetricsRecord::accuracy);
    out.g_mean = series(logs, out.budget, &MetricsRecord::g_mean);
    out.f_measure = series(logs, out.budget, &MetricsRecord::f_measure);
    return out;
}

std::vector<double> transmissions_by_uncertainty_bin(const RunLog& log, std::size_t bins) {
    if (bins == 0) throw UsageError("transmissions_by_uncertainty_bin: zero bins");
    std::vector<const AcceptedRecord*> sorted;
    for (const auto& a : log.accepted) sorted.push_back(&a);
    std::stable_sort(sorted.begin(), sorted.end(), [](const AcceptedRecord* a, const AcceptedRecord* b) {
        return a->final_uncertainty < b->final_uncertainty;
    });
    std::vector<double> out(bins, 0.0);
    if (sorted.empty()) return out;
    for (std::size_t b = 0; b < bins; ++b) {
        const std::size_t lo = b * sorted.size() / bins;
        const std::size_t hi = (b + 1) * sorted.size() / bins;
        if (hi == lo) continue;
        double sum = 0.0;
        for (std::size_t i = lo; i < hi; ++i) sum += sorted[i]->attempts;
        out[b] = sum / static_cast<double>(hi - lo);
    }
    return out;
}

} // namespace iarq
