#include "iarq/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "iarq/errors.hpp"
#include "iarq/output.hpp"
#include "iarq/presets.hpp"

namespace iarq {

namespace {

struct Options {
    std::optional<std::string> preset;
    std::optional<std::string> config;
    std::optional<std::string> policy;
    std::optional<double> snr_db;
    std::optional<double> pc;
    std::optional<double> theta_snr_db;
    std::optional<double> theta0_db;
    std::optional<std::size_t> budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::string out = "results";
    std::optional<std::string> mnist;
    bool desk_scale = false;
    bool list_presets = false;
    unsigned jobs = 1;
};

struct Experiment {
    std::string preset;
    std::string policy;
    SimulationConfig simulation;
    DatasetSpec dataset;
};

Json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read config file " + path);
    try {
        Json j = Json::parse(f);
        return j.contains("config") ? j.at("config") : j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

std::string policy_of(const ArqConfig& arq) {
    switch (arq.kind) {
    case PolicyKind::none: return "none";
    case PolicyKind::channel_aware: return "channel";
    default: return "importance";
    }
}

Experiment from_preset(const Options& o) {
    if (o.config) throw UsageError("--preset and --config are mutually exclusive");
    const ExperimentPreset p = make_preset(*o.preset, o.desk_scale);
    const PolicyChoice choice = policy_choice_from_string(o.policy.value_or("importance"));
    PolicyParameters params = p.policy;
    if (o.pc) {
        if (choice != PolicyChoice::importance) throw UsageError("--pc only applies to --policy importance");
        params.alignment_probability = *o.pc;
        params.conversion_ratio.reset();
    }
    if (o.theta0_db) {
        if (choice != PolicyChoice::importance || p.simulation.model_kind != ModelKind::softmax)
            throw UsageError("--theta0-db only applies to the importance policy of a softmax preset");
        if (o.pc) throw UsageError("--theta0-db and --pc both set the conversion ratio");
        params.conversion_ratio = db_to_linear(*o.theta0_db);
    }
    if (o.theta_snr_db) {
        if (choice == PolicyChoice::none) throw UsageError("--theta-snr-db has no effect with --policy none");
        (choice == PolicyChoice::importance ? params.importance_max_snr : params.channel_max_snr) =
            db_to_linear(*o.theta_snr_db);
    }
    Experiment e{p.name, std::string(to_string(choice)), p.simulation, p.dataset};
    e.simulation.arq = make_arq(choice, params, p.simulation.model_kind, class_count_of(p.dataset));
    return e;
}

Experiment from_config(const Options& o) {
    if (o.desk_scale) throw UsageError("--desk-scale needs --preset");
    if (o.policy || o.pc || o.theta_snr_db || o.theta0_db)
        throw UsageError("policy flags cannot override a --config file; edit its \"arq\" block instead");
    const Json j = load_json_file(*o.config);
    if (!j.contains("simulation") || !j.contains("dataset"))
        throw ConfigError("config file needs \"simulation\" and \"dataset\" objects");
    Experiment e;
    e.preset = j.value("preset", std::string());
    e.simulation = simulation_config_from_json(j.at("simulation"));
    e.dataset = dataset_spec_from_json(j.at("dataset"));
    e.policy = policy_of(e.simulation.arq);
    return e;
}

void resolve_mnist(DatasetSpec& spec, const Options& o) {
    auto* m = std::get_if<MnistSource>(&spec.source);
    if (!m) return;
    if (o.mnist) {
        m->directory = *o.mnist;
    } else if (m->directory.empty()) {
        if (const char* env = std::getenv("IARQ_MNIST_DIR"); env && *env) m->directory = env;
    }
    if (m->directory.empty()) throw UsageError("MNIST directory missing: pass --mnist DIR or set IARQ_MNIST_DIR");
    if (!std::filesystem::is_directory(m->directory))
        throw InputError("MNIST directory " + m->directory.string() + " does not exist");
}

Json echo(const Experiment& e, const SimulationConfig& sim) {
    Json j;
    j["preset"] = e.preset;
    j["policy"] = e.policy;
    j["simulation"] = to_json(sim);
    j["dataset"] = to_json(e.dataset);
    return j;
}

int execute(const Options& o, std::ostream& out) {
    Experiment e = o.preset ? from_preset(o) : from_config(o);
    if (o.snr_db) {
        const double p = db_to_linear(*o.snr_db) * e.simulation.channel.noise_variance;
        e.simulation.channel.transmit_power = p;
    }
    if (o.budget) e.simulation.budget_blocks = *o.budget;
    if (o.seed) e.simulation.rng_seed = *o.seed;
    if (o.reps) e.simulation.repetitions = *o.reps;
    resolve_mnist(e.dataset, o);
    e.simulation.validate();

    const LoadedDataset data = load_dataset(e.dataset);
    const std::size_t reps = e.simulation.repetitions;
    std::vector<SimulationConfig> configs(reps, e.simulation);
    for (std::size_t i = 0; i < reps; ++i) {
        configs[i].repetitions = 1;
        if (reps > 1) configs[i].rng_seed = derive_seed(e.simulation.rng_seed, i);
    }

    std::vector<RunLog> logs(reps);
    std::vector<std::exception_ptr> failures(reps);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < reps; i = next++) {
            try {
                logs[i] = run(configs[i], data);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(reps)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    const std::filesystem::path dir = o.out;
    for (std::size_t i = 0; i < reps; ++i) {
        const RunFiles files = write_run(dir, logs[i], echo(e, configs[i]));
        const auto& m = logs[i].curve.back().metrics;
        out << files.curve.string() << "  accuracy=" << format_double(m.accuracy)
            << " g_mean=" << format_double(m.g_mean) << " f_measure=" << format_double(m.f_measure) << '\n';
    }
    if (reps > 1) {
        const auto path = dir / (logs.front().policy + "_" + logs.front().model + "_" + logs.front().task +
                                 "_" + std::to_string(e.simulation.rng_seed) + "_aggregate.csv");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot open " + path.string() + " for writing");
        write_aggregate_csv(f, aggregate(logs));
        out << path.string() << '\n';
    }
    return 0;
}

} // namespace

int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Importance-aware retransmission simulator for wireless data acquisition"};
    app.name("iarq");
    Options o;
    app.add_option("--preset", o.preset, "experiment preset");
    app.add_option("--config", o.config, "JSON config (a run's .json echo works as is)");
    app.add_option("--policy", o.policy, "importance | channel | none")
        ->check(CLI::IsMember({"importance", "channel", "none"}));
    app.add_option("--snr-db", o.snr_db, "average receive SNR in dB (default 4)");
    app.add_option("--pc", o.pc, "alignment probability p_c, in (0.5, 1)");
    app.add_option("--theta-snr-db", o.theta_snr_db, "SNR threshold cap in dB");
    app.add_option("--theta0-db", o.theta0_db, "entropy policy floor in dB");
    app.add_option("--budget", o.budget, "transmission budget in symbol blocks");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--reps", o.reps, "repetitions");
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--mnist", o.mnist, "directory with the four MNIST IDX files (else $IARQ_MNIST_DIR)");
    app.add_flag("--desk-scale", o.desk_scale, "reduced repetitions/budget variant of the preset");
    app.add_option("--jobs", o.jobs, "repetitions run concurrently")->capture_default_str();
    app.add_flag("--list-presets", o.list_presets, "print preset names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (o.list_presets) {
        for (const auto& n : preset_names()) out << n << '\n';
        return 0;
    }
    try {
        if (!o.preset && !o.config) throw UsageError("one of --preset or --config is required");
        return execute(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace iarq
