// fogmetry: accelerometer ingestion, window features, classifier
// benchmarking, and fog/cloud deployment cost simulation.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fogmetry/deployment.hpp"
#include "fogmetry/evaluation.hpp"
#include "fogmetry/features.hpp"
#include "fogmetry/ingest.hpp"
#include "fogmetry/models.hpp"
#include "fogmetry/windowing.hpp"

namespace {

using namespace fogmetry;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitStrict = 2;
constexpr int kExitEmpty = 3;
constexpr int kExitTraining = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FOGMETRY_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 42;
}

std::pair<std::vector<RawReading>, IngestReport> load_input(const std::string& path) {
    if (path == "-") return load_raw(std::cin);
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    return load_raw(in);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoFailure("write failed: " + path);
}

std::vector<ModelSpec> parse_models(const std::string& list, std::uint64_t seed) {
    std::vector<ModelSpec> specs;
    std::istringstream is(list);
    std::string name;
    while (std::getline(is, name, ',')) {
        if (name.empty()) continue;
        ModelSpec spec;
        spec.kind = model_kind_from_name(name);
        spec.seed = seed;
        specs.push_back(spec);
    }
    return specs;
}

struct CliConfig {
    std::string input = "-";
    std::string output;
    int window_size = kDefaultWindowSize;
    double peak_threshold = kDefaultPeakThreshold;
    int k_folds = 10;
    std::uint64_t seed = default_seed();
    double uplink_bps = 1'000'000.0;
    double fog_speed = 10.0;
    double cloud_speed = 1.0;
    std::string models = "gnb,logreg,tree,mlp";
    std::string format = "json";
    bool strict = false;
    bool fog_archive = false;
    int threads = 1;
    // synth
    int users = 2;
    int windows_per_activity = 5;
    double sample_rate_hz = 20.0;
    bool synthetic = false;
};

int cmd_ingest(const CliConfig& cfg) {
    auto [readings, report] = load_input(cfg.input);
    nlohmann::json j{{"accepted", report.accepted},
                     {"rejected", report.rejected},
                     {"rejected_line_numbers", report.rejected_line_numbers},
                     {"readings", readings.size()}};
    std::cout << j.dump(2) << '\n';
    if (cfg.strict && report.rejected > 0) return kExitStrict;
    return kExitOk;
}

int cmd_synth(const CliConfig& cfg) {
    SynthConfig sc;
    sc.n_users = cfg.users;
    sc.windows_per_activity = cfg.windows_per_activity;
    sc.sample_rate_hz = cfg.sample_rate_hz;
    sc.seed = cfg.seed;
    sc.window_size = cfg.window_size;
    std::string text;
    for (const RawReading& r : generate_synthetic(sc)) {
        text += format_reading(r);
        text += '\n';
    }
    write_output(cfg.output, text);
    std::cerr << "wrote " << text.size() << " bytes\n";
    return kExitOk;
}

int cmd_featurize(const CliConfig& cfg) {
    auto [readings, report] = load_input(cfg.input);
    const auto windows = segment(readings, cfg.window_size);
    if (windows.empty()) {
        std::cerr << "no complete windows in input\n";
        return kExitEmpty;
    }
    const FeatureDataset ds = featurize_all(windows, cfg.peak_threshold);
    const std::string csv = feature_csv_string(ds);
    write_output(cfg.output, csv);

    const auto stats = trace_stats(windows);
    std::cerr << "windows: " << stats.total << " (mean/user " << stats.mean_per_user
              << ", stddev " << stats.stddev_per_user << ")\n"
              << "raw bytes: " << measure_payload(readings)
              << ", feature bytes: " << csv.size() << '\n';
    return kExitOk;
}

int cmd_evaluate(const CliConfig& cfg) {
    std::ifstream in(cfg.input);
    FeatureDataset ds;
    if (cfg.input == "-") {
        ds = read_feature_csv(std::cin);
    } else {
        if (!in) throw IoFailure("cannot open " + cfg.input);
        ds = read_feature_csv(in);
    }
    if (ds.rows.empty()) {
        std::cerr << "no feature rows\n";
        return kExitEmpty;
    }

    std::vector<EvalReport> reports;
    try {
        for (const ModelSpec& spec : parse_models(cfg.models, cfg.seed))
            reports.push_back(cross_validate(ds, spec, cfg.k_folds, cfg.seed, cfg.threads));
    } catch (const EmptyTrainingSet& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kExitTraining;
    } catch (const DegenerateClass& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kExitTraining;
    } catch (const TooFewRows& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kExitTraining;
    }

    std::string out;
    if (cfg.format == "csv") {
        out = eval_report_csv_header() + '\n';
        for (const EvalReport& r : reports) out += eval_report_csv_row(r) + '\n';
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (const EvalReport& r : reports)
            j.push_back(nlohmann::json::parse(eval_report_to_json(r)));
        out = j.dump(2) + '\n';
    }
    write_output(cfg.output, out);
    return kExitOk;
}

int cmd_benchmark(const CliConfig& cfg) {
    std::vector<RawReading> readings;
    if (cfg.synthetic) {
        SynthConfig sc;
        sc.n_users = cfg.users;
        sc.windows_per_activity = cfg.windows_per_activity;
        sc.sample_rate_hz = cfg.sample_rate_hz;
        sc.seed = cfg.seed;
        sc.window_size = cfg.window_size;
        readings = generate_synthetic(sc);
    } else {
        readings = load_input(cfg.input).first;
    }
    if (readings.empty()) {
        std::cerr << "no readings\n";
        return kExitEmpty;
    }

    DeviceProfile fog{"fog", cfg.fog_speed};
    DeviceProfile cloud{"cloud", cfg.cloud_speed};
    LinkProfile link{cfg.uplink_bps, 1.0};
    std::vector<DeploymentPlan> plans = {
        {PlanKind::FogOnly, fog, cloud, link, cfg.fog_archive},
        {PlanKind::CloudOnly, fog, cloud, link, false},
        {PlanKind::Hybrid, fog, cloud, link, false},
    };

    BenchmarkOptions opts;
    opts.window_size = cfg.window_size;
    opts.peak_threshold = cfg.peak_threshold;
    opts.k_folds = cfg.k_folds;
    opts.seed = cfg.seed;
    opts.n_threads = cfg.threads;

    try {
        const BenchmarkReport report =
            benchmark_pipeline(readings, parse_models(cfg.models, cfg.seed), plans, opts);
        write_output(cfg.output, cfg.format == "csv" ? benchmark_report_to_csv(report)
                                                     : benchmark_report_to_json(report) + "\n");
    } catch (const EmptyTrainingSet& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kExitTraining;
    } catch (const TooFewRows& e) {
        std::cerr << "training failed: " << e.what() << '\n';
        return kExitTraining;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid fog/cloud accelerometer analytics pipeline"};
    app.require_subcommand(1);

    CliConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "input path, - for stdin");
        sub->add_option("--output", cfg.output, "output path, - or empty for stdout");
        sub->add_option("--window-size", cfg.window_size, "samples per window")
            ->check(CLI::PositiveNumber);
        sub->add_option("--peak-threshold", cfg.peak_threshold, "peak qualification fraction")
            ->check(CLI::PositiveNumber);
        sub->add_option("--k-folds", cfg.k_folds, "cross-validation folds")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "RNG seed (FOGMETRY_SEED overrides the default)");
        sub->add_option("--threads", cfg.threads, "worker cap for fold evaluation")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--models", cfg.models, "comma list: gnb,logreg,tree,mlp");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "validate a raw accelerometer file");
    add_common(ingest);
    ingest->add_flag("--strict", cfg.strict, "exit 2 on any rejected line");

    CLI::App* synth = app.add_subcommand("synth", "write a seeded synthetic raw file");
    add_common(synth);
    synth->add_option("--users", cfg.users, "")->check(CLI::PositiveNumber);
    synth->add_option("--windows-per-activity", cfg.windows_per_activity, "")
        ->check(CLI::PositiveNumber);
    synth->add_option("--sample-rate-hz", cfg.sample_rate_hz, "")->check(CLI::PositiveNumber);

    CLI::App* featurize = app.add_subcommand("featurize", "raw file -> canonical feature CSV");
    add_common(featurize);

    CLI::App* evaluate = app.add_subcommand("evaluate", "cross-validate models on a feature CSV");
    add_common(evaluate);

    CLI::App* benchmark =
        app.add_subcommand("benchmark", "full pipeline + deployment cost comparison");
    add_common(benchmark);
    benchmark->add_option("--uplink-bps", cfg.uplink_bps, "fog-to-cloud bandwidth")
        ->check(CLI::PositiveNumber);
    benchmark->add_option("--fog-speed", cfg.fog_speed, "fog device speed factor")
        ->check(CLI::PositiveNumber);
    benchmark->add_option("--cloud-speed", cfg.cloud_speed, "cloud device speed factor")
        ->check(CLI::PositiveNumber);
    benchmark->add_flag("--fog-archive", cfg.fog_archive,
                        "fog-only plan also uploads the feature CSV");
    benchmark->add_flag("--synthetic", cfg.synthetic, "generate input instead of reading a file");
    benchmark->add_option("--users", cfg.users, "")->check(CLI::PositiveNumber);
    benchmark->add_option("--windows-per-activity", cfg.windows_per_activity, "")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(cfg);
        if (*synth) return cmd_synth(cfg);
        if (*featurize) return cmd_featurize(cfg);
        if (*evaluate) return cmd_evaluate(cfg);
        if (*benchmark) return cmd_benchmark(cfg);
    } catch (const fogmetry::IoFailure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
