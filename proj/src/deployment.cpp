#include "fogmetry/deployment.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"

namespace fogmetry {

const char* plan_kind_name(PlanKind k) {
    switch (k) {
        case PlanKind::FogOnly: return "fog_only";
        case PlanKind::CloudOnly: return "cloud_only";
        case PlanKind::Hybrid: return "hybrid";
    }
    return "?";
}

std::int64_t measure_payload(const std::vector<RawReading>& readings) {
    std::int64_t bytes = 0;
    for (const RawReading& r : readings)
        bytes += static_cast<std::int64_t>(format_reading(r).size()) + 1;  // + newline
    return bytes;
}

std::int64_t measure_payload(const FeatureDataset& ds) {
    return static_cast<std::int64_t>(feature_csv_string(ds).size());
}

double transmission_time(std::int64_t bytes, const LinkProfile& link) {
    if (bytes < 0) throw std::invalid_argument("negative byte count");
    return static_cast<double>(bytes) * 8.0 / link.uplink_bps * link.overhead;
}

CostReport simulate(const DeploymentPlan& plan, const HostTimings& timings,
                    const Payloads& payloads) {
    CostReport r;
    r.plan = plan.kind;
    switch (plan.kind) {
        case PlanKind::FogOnly:
            r.t_transform_s = timings.t_transform_s * plan.fog.speed_factor;
            r.t_ml_s = timings.t_ml_s * plan.fog.speed_factor;
            r.bytes_tx = plan.fog_archive ? payloads.feature_bytes : 0;
            break;
        case PlanKind::CloudOnly:
            r.t_transform_s = timings.t_transform_s * plan.cloud.speed_factor;
            r.t_ml_s = timings.t_ml_s * plan.cloud.speed_factor;
            r.bytes_tx = payloads.raw_bytes;
            break;
        case PlanKind::Hybrid:
            r.t_transform_s = timings.t_transform_s * plan.fog.speed_factor;
            r.t_ml_s = timings.t_ml_s * plan.cloud.speed_factor;
            r.bytes_tx = payloads.feature_bytes;
            break;
    }
    r.t_tx_s = transmission_time(r.bytes_tx, plan.link);
    r.t_total_s = r.t_transform_s + r.t_tx_s + r.t_ml_s;
    return r;
}

BenchmarkReport benchmark_pipeline(const std::vector<RawReading>& readings,
                                   const std::vector<ModelSpec>& specs,
                                   const std::vector<DeploymentPlan>& plans,
                                   const BenchmarkOptions& opts) {
    BenchmarkReport report;
    report.payloads.raw_bytes = measure_payload(readings);

    auto t0 = std::chrono::steady_clock::now();
    const std::vector<Window> windows = segment(readings, opts.window_size);
    const FeatureDataset features = featurize_all(windows, opts.peak_threshold);
    report.t_transform_host_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.payloads.feature_bytes = measure_payload(features);

    for (const ModelSpec& spec : specs) {
        report.evals.push_back(
            cross_validate(features, spec, opts.k_folds, opts.seed, opts.n_threads));
    }

    for (const DeploymentPlan& plan : plans) {
        for (const EvalReport& eval : report.evals) {
            HostTimings t{report.t_transform_host_s, eval.train_time_s + eval.predict_time_s};
            CostReport c = simulate(plan, t, report.payloads);
            c.model = model_kind_name(eval.model_kind);
            report.costs.push_back(c);
        }
    }
    return report;
}

std::string cost_report_csv_header() {
    return "plan,model,accuracy,bytes_tx,t_transform_s,t_tx_s,t_ml_s,t_total_s";
}

std::string cost_report_csv_row(const CostReport& c, double accuracy) {
    std::ostringstream os;
    os << plan_kind_name(c.plan) << ',' << c.model << ',' << accuracy << ',' << c.bytes_tx << ','
       << c.t_transform_s << ',' << c.t_tx_s << ',' << c.t_ml_s << ',' << c.t_total_s;
    return os.str();
}

namespace {
double accuracy_for_model(const BenchmarkReport& r, const std::string& model) {
    for (const EvalReport& e : r.evals)
        if (model == model_kind_name(e.model_kind)) return e.overall_accuracy;
    return 0.0;
}
}  // namespace

std::string benchmark_report_to_json(const BenchmarkReport& r) {
    nlohmann::json j;
    j["raw_bytes"] = r.payloads.raw_bytes;
    j["feature_bytes"] = r.payloads.feature_bytes;
    j["t_transform_host_s"] = r.t_transform_host_s;
    j["evals"] = nlohmann::json::array();
    for (const EvalReport& e : r.evals)
        j["evals"].push_back(nlohmann::json::parse(eval_report_to_json(e)));
    j["costs"] = nlohmann::json::array();
    for (const CostReport& c : r.costs) {
        j["costs"].push_back(nlohmann::json{{"plan", plan_kind_name(c.plan)},
                                            {"model", c.model},
                                            {"accuracy", accuracy_for_model(r, c.model)},
                                            {"bytes_tx", c.bytes_tx},
                                            {"t_transform_s", c.t_transform_s},
                                            {"t_tx_s", c.t_tx_s},
                                            {"t_ml_s", c.t_ml_s},
                                            {"t_total_s", c.t_total_s}});
    }
    return j.dump(2);
}

std::string benchmark_report_to_csv(const BenchmarkReport& r) {
    std::ostringstream os;
    os << cost_report_csv_header() << '\n';
    for (const CostReport& c : r.costs)
        os << cost_report_csv_row(c, accuracy_for_model(r, c.model)) << '\n';
    return os.str();
}

}  // namespace fogmetry
