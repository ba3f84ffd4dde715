#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fogmetry/evaluation.hpp"
#include "fogmetry/features.hpp"
#include "fogmetry/ingest.hpp"

namespace fogmetry {

struct DeviceProfile {
    std::string name;
    double speed_factor = 1.0;  // multiplier on host-measured time, > 0
};

struct LinkProfile {
    double uplink_bps = 1'000'000.0;
    double overhead = 1.0;  // multiplier on the pure bandwidth time
};

enum class PlanKind { FogOnly, CloudOnly, Hybrid };

const char* plan_kind_name(PlanKind k);

struct DeploymentPlan {
    PlanKind kind = PlanKind::Hybrid;
    DeviceProfile fog{"fog", 10.0};
    DeviceProfile cloud{"cloud", 1.0};
    LinkProfile link;
    bool fog_archive = false;  // FogOnly also uploads the feature CSV
};

struct CostReport {
    PlanKind plan = PlanKind::Hybrid;
    std::string model;
    std::int64_t bytes_tx = 0;
    double t_transform_s = 0.0;
    double t_tx_s = 0.0;
    double t_ml_s = 0.0;
    double t_total_s = 0.0;
};

struct HostTimings {
    double t_transform_s = 0.0;  // ingest->features, measured on this host
    double t_ml_s = 0.0;
};

struct Payloads {
    std::int64_t raw_bytes = 0;
    std::int64_t feature_bytes = 0;
};

// Byte length of the canonical text serializations.
std::int64_t measure_payload(const std::vector<RawReading>& readings);
std::int64_t measure_payload(const FeatureDataset& ds);

// Pure bandwidth model: bytes * 8 / uplink_bps, times link overhead.
double transmission_time(std::int64_t bytes, const LinkProfile& link);

CostReport simulate(const DeploymentPlan& plan, const HostTimings& timings,
                    const Payloads& payloads);

struct BenchmarkOptions {
    int window_size = kDefaultWindowSize;
    double peak_threshold = kDefaultPeakThreshold;
    int k_folds = 10;
    std::uint64_t seed = 42;
    int n_threads = 1;
};

struct BenchmarkReport {
    Payloads payloads;
    double t_transform_host_s = 0.0;
    std::vector<EvalReport> evals;        // one per model spec
    std::vector<CostReport> costs;        // one per (plan, model)
};

// Full pipeline on the host (segment -> featurize -> cross-validate per
// model), wall-clock timings captured, then every plan priced via simulate.
BenchmarkReport benchmark_pipeline(const std::vector<RawReading>& readings,
                                   const std::vector<ModelSpec>& specs,
                                   const std::vector<DeploymentPlan>& plans,
                                   const BenchmarkOptions& opts = {});

std::string cost_report_csv_header();
std::string cost_report_csv_row(const CostReport& c, double accuracy);
std::string benchmark_report_to_json(const BenchmarkReport& r);
std::string benchmark_report_to_csv(const BenchmarkReport& r);

}  // namespace fogmetry
