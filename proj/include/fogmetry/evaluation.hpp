#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fogmetry/models.hpp"

namespace fogmetry {

struct FoldAssignment {
    std::vector<int> fold_of_row;  // values in [0, k)
    int k = 0;
};

using ConfusionMatrix = std::array<std::array<std::int64_t, kNumActivities>, kNumActivities>;

struct EvalReport {
    ModelKind model_kind = ModelKind::GaussianNB;
    std::vector<double> per_fold_accuracy;
    double overall_accuracy = 0.0;
    ConfusionMatrix confusion{};  // rows = true, cols = predicted
    double train_time_s = 0.0;
    double predict_time_s = 0.0;
};

// Per-class seeded shuffle, then round-robin dealing with a rolling fold
// cursor (keeps every fold non-empty whenever rows >= k).
// Throws TooFewRows if rows < k.
FoldAssignment stratified_kfold(const FeatureDataset& data, int k, std::uint64_t seed);

// Trains on k-1 folds, scores the held-out fold, accumulates the confusion
// matrix. n_threads > 1 evaluates folds concurrently; the report is
// identical either way.
EvalReport cross_validate(const FeatureDataset& data, const ModelSpec& spec,
                          int k = 10, std::uint64_t seed = 42, int n_threads = 1);

ConfusionMatrix confusion_matrix(const std::vector<Activity>& truths,
                                 const std::vector<Activity>& predictions);

std::string eval_report_to_json(const EvalReport& r);
std::string eval_report_csv_header();
std::string eval_report_csv_row(const EvalReport& r);

}  // namespace fogmetry
