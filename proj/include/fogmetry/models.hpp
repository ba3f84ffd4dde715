#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fogmetry/features.hpp"
#include "fogmetry/types.hpp"

namespace fogmetry {

enum class ModelKind { GaussianNB, LogisticRegression, DecisionTree, MLP };

const char* model_kind_name(ModelKind k);
ModelKind model_kind_from_name(std::string_view name);  // throws UnsupportedKind

struct ModelSpec {
    ModelKind kind = ModelKind::GaussianNB;
    std::uint64_t seed = 42;

    // LogisticRegression
    double lr_learning_rate = 0.1;
    int lr_iterations = 500;
    double lr_l2 = 1e-4;

    // DecisionTree
    int tree_max_depth = 15;
    int tree_min_leaf = 2;

    // MLP: one hidden sigmoid layer, softmax output
    int mlp_hidden_units = 25;  // ceil((43+6)/2)
    double mlp_learning_rate = 0.3;
    double mlp_momentum = 0.2;
    int mlp_epochs = 500;
};

struct Prediction {
    Activity label = Activity::Walking;
    std::array<double, kNumActivities> class_scores{};
};

// Per-feature z-score statistics fitted on the training split.
struct Standardizer {
    std::array<double, kNumFeatures> mean{};
    std::array<double, kNumFeatures> scale{};  // std, floored at tiny values

    void fit(const FeatureDataset& data);
    std::array<double, kNumFeatures> apply(const std::array<double, kNumFeatures>& x) const;
};

struct GaussianNBParams {
    std::array<double, kNumActivities> log_prior{};
    // [class][feature]
    std::array<std::array<double, kNumFeatures>, kNumActivities> mean{};
    std::array<std::array<double, kNumFeatures>, kNumActivities> var{};
    double var_smoothing = 0.0;
};

struct LogisticRegressionParams {
    // 6 x 44 (bias last), over standardized features
    std::array<std::array<double, kNumFeatures + 1>, kNumActivities> weights{};
    Standardizer standardizer;
    std::vector<double> loss_history;
};

struct TreeNode {
    int feature = -1;        // -1 means leaf
    double threshold = 0.0;  // go left if x[feature] <= threshold
    int left = -1, right = -1;
    std::array<double, kNumActivities> class_probs{};  // leaf distribution
};

struct DecisionTreeParams {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct MlpParams {
    int hidden_units = 25;
    std::vector<double> w1;  // hidden x 43
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // 6 x hidden
    std::vector<double> b2;  // 6
    Standardizer standardizer;
};

struct TrainedModel {
    ModelKind kind = ModelKind::GaussianNB;
    GaussianNBParams gnb;
    LogisticRegressionParams logreg;
    DecisionTreeParams tree;
    MlpParams mlp;
};

// Deterministic given (spec, data). Throws EmptyTrainingSet / DegenerateClass.
TrainedModel train(const ModelSpec& spec, const FeatureDataset& data);

Prediction predict(const TrainedModel& model, const FeatureVector& x);

// Central finite-difference check of the analytic gradients at a seeded
// random parameter point; returns the max relative error over parameters.
// Throws UnsupportedKind for non-gradient models.
double gradient_check(const ModelSpec& spec, const FeatureDataset& data,
                      double epsilon = 1e-5);

// Versioned JSON round-trip.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

}  // namespace fogmetry
