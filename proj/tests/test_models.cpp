#include <cmath>

#include "doctest.h"
#include "fogmetry/models.hpp"
#include "fogmetry/rng.hpp"
#include "helpers.hpp"

using namespace fogmetry;
using fogmetry::testing::synthetic_features;

namespace {

FeatureVector row1d(double v, Activity label) {
    FeatureVector fv;
    fv.values[0] = v;
    fv.label = label;
    fv.user_id = 1;
    return fv;
}

// Two linearly separable classes along feature 0.
FeatureDataset separable_2class(int per_class) {
    FeatureDataset ds;
    std::mt19937_64 gen(17);
    for (int i = 0; i < per_class; ++i) {
        ds.rows.push_back(row1d(uniform_in(gen, -2.0, -1.0), Activity::Walking));
        ds.rows.push_back(row1d(uniform_in(gen, 1.0, 2.0), Activity::Jogging));
    }
    return ds;
}

double training_accuracy(const TrainedModel& m, const FeatureDataset& ds) {
    std::size_t correct = 0;
    for (const auto& row : ds.rows)
        if (predict(m, row).label == row.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(ds.rows.size());
}

}  // namespace

TEST_CASE("GaussianNB closed-form fit on the toy set") {
    FeatureDataset ds;
    ds.rows = {row1d(0.0, Activity::Walking), row1d(0.2, Activity::Walking),
               row1d(1.0, Activity::Jogging), row1d(1.2, Activity::Jogging)};
    ModelSpec spec;
    spec.kind = ModelKind::GaussianNB;
    TrainedModel m = train(spec, ds);

    CHECK(m.gnb.mean[0][0] == doctest::Approx(0.1));
    CHECK(m.gnb.mean[1][0] == doctest::Approx(1.1));
    CHECK(std::exp(m.gnb.log_prior[0]) == doctest::Approx(0.5));
    CHECK(std::exp(m.gnb.log_prior[1]) == doctest::Approx(0.5));

    // priors over present classes sum to 1
    double total = 0.0;
    for (double lp : m.gnb.log_prior)
        if (std::isfinite(lp)) total += std::exp(lp);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(predict(m, row1d(0.1, Activity::Walking)).label == Activity::Walking);
    CHECK(predict(m, row1d(1.1, Activity::Walking)).label == Activity::Jogging);
}

TEST_CASE("GaussianNB posteriors match the brute-force product formula") {
    // 30 rows, 2 informative features, 3 classes
    FeatureDataset ds;
    std::mt19937_64 gen(23);
    for (int i = 0; i < 30; ++i) {
        FeatureVector fv;
        const int c = i % 3;
        fv.label = static_cast<Activity>(c);
        fv.user_id = 1;
        fv.values[0] = c * 2.0 + uniform_in(gen, -0.5, 0.5);
        fv.values[1] = -c * 1.5 + uniform_in(gen, -0.5, 0.5);
        ds.rows.push_back(fv);
    }
    ModelSpec spec;
    spec.kind = ModelKind::GaussianNB;
    TrainedModel m = train(spec, ds);

    for (int probe = 0; probe < 10; ++probe) {
        FeatureVector x;
        x.values[0] = uniform_in(gen, -1.0, 5.0);
        x.values[1] = uniform_in(gen, -4.0, 1.0);
        Prediction p = predict(m, x);

        // independent route: direct evaluation of prior * prod N(x; mu, var)
        std::array<long double, kNumActivities> joint{};
        long double total = 0.0;
        for (int c = 0; c < kNumActivities; ++c) {
            if (!std::isfinite(m.gnb.log_prior[c])) continue;
            long double v = std::exp((long double)m.gnb.log_prior[c]);
            for (int f = 0; f < kNumFeatures; ++f) {
                const long double var = m.gnb.var[c][f];
                const long double d = x.values[f] - m.gnb.mean[c][f];
                v *= std::exp(-d * d / (2.0L * var)) / std::sqrt(2.0L * M_PI * var);
            }
            joint[c] = v;
            total += v;
        }
        for (int c = 0; c < kNumActivities; ++c)
            CHECK(p.class_scores[c] ==
                  doctest::Approx(static_cast<double>(joint[c] / total)).epsilon(1e-9));
    }
}

TEST_CASE("LogisticRegression separates a separable set and loss is monotone") {
    FeatureDataset ds = separable_2class(20);
    ModelSpec spec;
    spec.kind = ModelKind::LogisticRegression;
    TrainedModel m = train(spec, ds);

    CHECK(training_accuracy(m, ds) == doctest::Approx(1.0));
    REQUIRE(m.logreg.loss_history.size() == 500);
    for (std::size_t i = 1; i < m.logreg.loss_history.size(); ++i)
        CHECK(m.logreg.loss_history[i] <= m.logreg.loss_history[i - 1] + 1e-12);
}

TEST_CASE("LogisticRegression scores form a distribution") {
    FeatureDataset ds = synthetic_features(1, 2);
    ModelSpec spec;
    spec.kind = ModelKind::LogisticRegression;
    spec.lr_iterations = 50;
    TrainedModel m = train(spec, ds);
    Prediction p = predict(m, ds.rows[0]);
    double sum = 0.0;
    int best = 0;
    for (int c = 0; c < kNumActivities; ++c) {
        sum += p.class_scores[c];
        if (p.class_scores[c] > p.class_scores[best]) best = c;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(static_cast<int>(p.label) == best);
}

TEST_CASE("DecisionTree basics") {
    SUBCASE("single-class data gives a single leaf") {
        FeatureDataset ds;
        for (int i = 0; i < 5; ++i) ds.rows.push_back(row1d(i, Activity::Sitting));
        ModelSpec spec;
        spec.kind = ModelKind::DecisionTree;
        TrainedModel m = train(spec, ds);
        REQUIRE(m.tree.nodes.size() == 1);
        CHECK(m.tree.nodes[0].feature == -1);
        FeatureVector any = row1d(123.0, Activity::Walking);
        CHECK(predict(m, any).label == Activity::Sitting);
    }
    SUBCASE("perfect fit on consistent data with limits disabled") {
        FeatureDataset ds = synthetic_features(1, 3);
        ModelSpec spec;
        spec.kind = ModelKind::DecisionTree;
        spec.tree_max_depth = 1000;
        spec.tree_min_leaf = 1;
        TrainedModel m = train(spec, ds);
        CHECK(training_accuracy(m, ds) == doctest::Approx(1.0));
    }
    SUBCASE("depth cap is honored") {
        FeatureDataset ds = synthetic_features(1, 3);
        ModelSpec spec;
        spec.kind = ModelKind::DecisionTree;
        spec.tree_max_depth = 2;
        TrainedModel m = train(spec, ds);
        // depth of any node <= 2 means at most 1 + 2 + 4 = 7 nodes
        CHECK(m.tree.nodes.size() <= 7);
    }
}

TEST_CASE("MLP learns the separable synthetic set") {
    FeatureDataset ds = synthetic_features(1, 3);
    ModelSpec spec;
    spec.kind = ModelKind::MLP;
    spec.mlp_epochs = 200;
    TrainedModel m = train(spec, ds);
    CHECK(training_accuracy(m, ds) >= 0.95);

    Prediction p = predict(m, ds.rows[0]);
    double sum = 0.0;
    for (double s : p.class_scores) sum += s;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gradient_check") {
    FeatureDataset ds = synthetic_features(1, 1);  // 6 windows
    REQUIRE(ds.rows.size() <= 50);

    ModelSpec spec;
    SUBCASE("logistic regression") {
        spec.kind = ModelKind::LogisticRegression;
        CHECK(gradient_check(spec, ds, 1e-5) < 1e-4);
    }
    SUBCASE("mlp") {
        spec.kind = ModelKind::MLP;
        CHECK(gradient_check(spec, ds, 1e-5) < 1e-4);
    }
    SUBCASE("unsupported kinds") {
        spec.kind = ModelKind::GaussianNB;
        CHECK_THROWS_AS(gradient_check(spec, ds, 1e-5), UnsupportedKind);
        spec.kind = ModelKind::DecisionTree;
        CHECK_THROWS_AS(gradient_check(spec, ds, 1e-5), UnsupportedKind);
    }
}

TEST_CASE("training is deterministic") {
    FeatureDataset ds = synthetic_features(1, 2);
    for (ModelKind kind : {ModelKind::GaussianNB, ModelKind::LogisticRegression,
                           ModelKind::DecisionTree, ModelKind::MLP}) {
        ModelSpec spec;
        spec.kind = kind;
        spec.lr_iterations = 30;
        spec.mlp_epochs = 30;
        spec.seed = 9;
        CHECK(model_to_json(train(spec, ds)) == model_to_json(train(spec, ds)));
    }
}

TEST_CASE("empty training set is an error") {
    ModelSpec spec;
    CHECK_THROWS_AS(train(spec, FeatureDataset{}), EmptyTrainingSet);
}

TEST_CASE("model JSON round trip preserves predictions") {
    FeatureDataset ds = synthetic_features(1, 2);
    for (ModelKind kind : {ModelKind::GaussianNB, ModelKind::LogisticRegression,
                           ModelKind::DecisionTree, ModelKind::MLP}) {
        ModelSpec spec;
        spec.kind = kind;
        spec.lr_iterations = 30;
        spec.mlp_epochs = 30;
        TrainedModel m = train(spec, ds);
        TrainedModel back = model_from_json(model_to_json(m));
        for (const auto& row : ds.rows)
            CHECK(predict(back, row).label == predict(m, row).label);
    }
}
