#include "iarq/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "iarq/errors.hpp"

namespace iarq {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_uncertainty(const Uncertainty& u) {
    return u.is_infinite() ? "inf" : format_double(u.value());
}

void write_curve_csv(std::ostream& out, const RunLog& log) {
    out << "budget_spent,accepted,accuracy,recall,specificity,precision,g_mean,f_measure\n";
    for (const auto& p : log.curve) {
        const auto& m = p.metrics;
        out << p.budget_spent << ',' << p.accepted << ',' << format_double(m.accuracy) << ','
            << format_double(m.recall) << ',' << format_double(m.specificity) << ','
            << format_double(m.precision) << ',' << format_double(m.g_mean) << ','
            << format_double(m.f_measure) << '\n';
    }
}

void write_decisions_csv(std::ostream& out, const RunLog& log) {
    out << "round,sample_id,T,uncertainty,threshold,snr,decision\n";
    for (const auto& d : log.decisions) {
        out << d.round << ',' << d.sample_id << ',' << d.attempt << ',' << format_uncertainty(d.trace.uncertainty)
            << ',' << format_double(d.trace.snr_threshold) << ',' << format_double(d.trace.effective_snr) << ','
            << to_string(d.trace.decision) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const AggregateCurve& agg) {
    out << "budget_spent,runs,accuracy_mean,accuracy_stderr,g_mean_mean,g_mean_stderr,f_measure_mean,"
           "f_measure_stderr\n";
    for (std::size_t i = 0; i < agg.budget.size(); ++i) {
        out << format_double(agg.budget[i]) << ',' << agg.runs << ',' << format_double(agg.accuracy.mean[i]) << ','
            << format_double(agg.accuracy.stderr_[i]) << ',' << format_double(agg.g_mean.mean[i]) << ','
            << format_double(agg.g_mean.stderr_[i]) << ',' << format_double(agg.f_measure.mean[i]) << ','
            << format_double(agg.f_measure.stderr_[i]) << '\n';
    }
}

namespace {
std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw InputError("cannot open " + p.string() + " for writing");
    return f;
}
} // namespace

RunFiles write_run(const std::filesystem::path& dir, const RunLog& log, const Json& config_echo) {
    std::filesystem::create_directories(dir);
    const std::string stem = log.file_stem();
    RunFiles files{dir / (stem + ".csv"), dir / (stem + "_decisions.csv"), dir / (stem + ".json")};
    {
        auto f = open_out(files.curve);
        write_curve_csv(f, log);
    }
    {
        auto f = open_out(files.decisions);
        write_decisions_csv(f, log);
    }
    {
        auto f = open_out(files.summary);
        f << Json{{"config", config_echo}, {"summary", run_summary(log)}}.dump(2) << '\n';
    }
    return files;
}

} // namespace iarq
