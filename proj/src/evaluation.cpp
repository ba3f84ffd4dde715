#include "fogmetry/evaluation.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "fogmetry/rng.hpp"
#include "json.hpp"

namespace fogmetry {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void shuffle_sizes(std::vector<std::size_t>& idx, std::mt19937_64& gen) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::size_t j = gen() % i;
        std::swap(idx[i - 1], idx[j]);
    }
}

}  // namespace

FoldAssignment stratified_kfold(const FeatureDataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (data.rows.size() < static_cast<std::size_t>(k))
        throw TooFewRows("fewer rows than folds");

    std::array<std::vector<std::size_t>, kNumActivities> by_class;
    for (std::size_t i = 0; i < data.rows.size(); ++i)
        by_class[static_cast<int>(data.rows[i].label)].push_back(i);

    FoldAssignment fa;
    fa.k = k;
    fa.fold_of_row.assign(data.rows.size(), 0);

    std::mt19937_64 gen(seed);
    // Rolling cursor across classes keeps small-class rows spread over folds.
    int cursor = 0;
    for (auto& rows : by_class) {
        shuffle_sizes(rows, gen);
        for (std::size_t i : rows) {
            fa.fold_of_row[i] = cursor;
            cursor = (cursor + 1) % k;
        }
    }
    return fa;
}

ConfusionMatrix confusion_matrix(const std::vector<Activity>& truths,
                                 const std::vector<Activity>& predictions) {
    if (truths.size() != predictions.size())
        throw LengthMismatch("truths/predictions length mismatch");
    ConfusionMatrix m{};
    for (std::size_t i = 0; i < truths.size(); ++i)
        ++m[static_cast<int>(truths[i])][static_cast<int>(predictions[i])];
    return m;
}

EvalReport cross_validate(const FeatureDataset& data, const ModelSpec& spec, int k,
                          std::uint64_t seed, int n_threads) {
    const FoldAssignment fa = stratified_kfold(data, k, seed);

    struct FoldResult {
        ConfusionMatrix confusion{};
        std::size_t correct = 0;
        std::size_t total = 0;
        double train_time_s = 0.0;
        double predict_time_s = 0.0;
    };
    std::vector<FoldResult> results(k);

    auto run_fold = [&](int fold) {
        FeatureDataset train_set;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < data.rows.size(); ++i) {
            if (fa.fold_of_row[i] == fold)
                test_rows.push_back(i);
            else
                train_set.rows.push_back(data.rows[i]);
        }
        FoldResult& r = results[fold];
        r.total = test_rows.size();

        auto t0 = std::chrono::steady_clock::now();
        const TrainedModel model = train(spec, train_set);
        r.train_time_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        for (std::size_t i : test_rows) {
            const Prediction p = predict(model, data.rows[i]);
            ++r.confusion[static_cast<int>(data.rows[i].label)][static_cast<int>(p.label)];
            if (p.label == data.rows[i].label) ++r.correct;
        }
        r.predict_time_s = seconds_since(t0);
    };

    if (n_threads > 1) {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        const int pool = std::min(n_threads, k);
        for (int t = 0; t < pool; ++t) {
            workers.emplace_back([&] {
                for (int fold = next.fetch_add(1); fold < k; fold = next.fetch_add(1))
                    run_fold(fold);
            });
        }
        for (auto& w : workers) w.join();
    } else {
        for (int fold = 0; fold < k; ++fold) run_fold(fold);
    }

    // Merge in fold order so the report never depends on thread scheduling.
    EvalReport report;
    report.model_kind = spec.kind;
    std::size_t correct = 0, total = 0;
    for (int fold = 0; fold < k; ++fold) {
        const FoldResult& r = results[fold];
        report.per_fold_accuracy.push_back(
            r.total == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.total));
        for (int a = 0; a < kNumActivities; ++a)
            for (int b = 0; b < kNumActivities; ++b) report.confusion[a][b] += r.confusion[a][b];
        correct += r.correct;
        total += r.total;
        report.train_time_s += r.train_time_s;
        report.predict_time_s += r.predict_time_s;
    }
    report.overall_accuracy =
        total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
    return report;
}

std::string eval_report_to_json(const EvalReport& r) {
    nlohmann::json j;
    j["model"] = model_kind_name(r.model_kind);
    j["per_fold_accuracy"] = r.per_fold_accuracy;
    j["overall_accuracy"] = r.overall_accuracy;
    j["confusion"] = r.confusion;
    j["cv"] = "stratified";
    // Wall-clock values; excluded from determinism guarantees.
    j["train_time_s"] = r.train_time_s;
    j["predict_time_s"] = r.predict_time_s;
    return j.dump();
}

std::string eval_report_csv_header() {
    return "model,overall_accuracy,train_time_s,predict_time_s";
}

std::string eval_report_csv_row(const EvalReport& r) {
    std::ostringstream os;
    os << model_kind_name(r.model_kind) << ',' << r.overall_accuracy << ',' << r.train_time_s
       << ',' << r.predict_time_s;
    return os.str();
}

}  // namespace fogmetry
