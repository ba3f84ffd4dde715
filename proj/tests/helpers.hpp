#pragma once

// Shared fixtures for the test suites.

#include "fogmetry/features.hpp"
#include "fogmetry/ingest.hpp"
#include "fogmetry/windowing.hpp"

namespace fogmetry::testing {

// Desk-scale separable 6-class dataset via the real pipeline.
inline FeatureDataset synthetic_features(int users, int windows_per_activity,
                                         std::uint64_t seed = 42) {
    SynthConfig cfg;
    cfg.n_users = users;
    cfg.windows_per_activity = windows_per_activity;
    cfg.seed = seed;
    return featurize_all(segment(generate_synthetic(cfg)));
}

}  // namespace fogmetry::testing
