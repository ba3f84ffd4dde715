#include "fogmetry/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fogmetry/rng.hpp"
#include "json.hpp"

namespace fogmetry {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int argmax_lowest(const std::array<double, kNumActivities>& scores) {
    int best = 0;
    for (int c = 1; c < kNumActivities; ++c)
        if (scores[c] > scores[best]) best = c;
    return best;
}

void softmax_inplace(std::array<double, kNumActivities>& logits) {
    double mx = kNegInf;
    for (double v : logits) mx = std::max(mx, v);
    double sum = 0.0;
    for (double& v : logits) {
        v = (v == kNegInf) ? 0.0 : std::exp(v - mx);
        sum += v;
    }
    for (double& v : logits) v /= sum;
}

// Fisher-Yates with pinned-down index draws.
void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& gen) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::size_t j = gen() % i;
        std::swap(idx[i - 1], idx[j]);
    }
}

}  // namespace

const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::GaussianNB: return "gnb";
        case ModelKind::LogisticRegression: return "logreg";
        case ModelKind::DecisionTree: return "tree";
        case ModelKind::MLP: return "mlp";
    }
    return "?";
}

ModelKind model_kind_from_name(std::string_view name) {
    if (name == "gnb") return ModelKind::GaussianNB;
    if (name == "logreg") return ModelKind::LogisticRegression;
    if (name == "tree") return ModelKind::DecisionTree;
    if (name == "mlp") return ModelKind::MLP;
    throw UnsupportedKind("unknown model kind: " + std::string(name));
}

void Standardizer::fit(const FeatureDataset& data) {
    const double n = static_cast<double>(data.rows.size());
    mean.fill(0.0);
    scale.fill(1.0);
    if (data.rows.empty()) return;
    for (const auto& row : data.rows)
        for (int f = 0; f < kNumFeatures; ++f) mean[f] += row.values[f];
    for (double& m : mean) m /= n;
    for (int f = 0; f < kNumFeatures; ++f) {
        double ss = 0.0;
        for (const auto& row : data.rows) {
            const double d = row.values[f] - mean[f];
            ss += d * d;
        }
        const double sd = std::sqrt(ss / n);
        scale[f] = sd > 1e-12 ? sd : 1.0;  // constant features pass through
    }
}

std::array<double, kNumFeatures> Standardizer::apply(
    const std::array<double, kNumFeatures>& x) const {
    std::array<double, kNumFeatures> z;
    for (int f = 0; f < kNumFeatures; ++f) z[f] = (x[f] - mean[f]) / scale[f];
    return z;
}

// ---------------------------------------------------------------- GaussianNB

namespace {

GaussianNBParams train_gnb(const FeatureDataset& data) {
    GaussianNBParams p;
    std::array<std::size_t, kNumActivities> counts{};
    for (const auto& row : data.rows) ++counts[static_cast<int>(row.label)];

    // Smoothing floor tied to the largest overall feature variance.
    double max_var = 0.0;
    {
        std::array<double, kNumFeatures> mu{};
        for (const auto& row : data.rows)
            for (int f = 0; f < kNumFeatures; ++f) mu[f] += row.values[f];
        const double n = static_cast<double>(data.rows.size());
        for (double& m : mu) m /= n;
        for (int f = 0; f < kNumFeatures; ++f) {
            double ss = 0.0;
            for (const auto& row : data.rows) {
                const double d = row.values[f] - mu[f];
                ss += d * d;
            }
            max_var = std::max(max_var, ss / n);
        }
    }
    p.var_smoothing = std::max(1e-9 * max_var, 1e-12);

    const double n_total = static_cast<double>(data.rows.size());
    for (int c = 0; c < kNumActivities; ++c) {
        if (counts[c] == 0) {
            // Class absent from the training split: never predicted.
            p.log_prior[c] = kNegInf;
            p.var[c].fill(1.0);
            continue;
        }
        p.log_prior[c] = std::log(static_cast<double>(counts[c]) / n_total);
        for (const auto& row : data.rows) {
            if (static_cast<int>(row.label) != c) continue;
            for (int f = 0; f < kNumFeatures; ++f) p.mean[c][f] += row.values[f];
        }
        const double nc = static_cast<double>(counts[c]);
        for (int f = 0; f < kNumFeatures; ++f) p.mean[c][f] /= nc;
        for (const auto& row : data.rows) {
            if (static_cast<int>(row.label) != c) continue;
            for (int f = 0; f < kNumFeatures; ++f) {
                const double d = row.values[f] - p.mean[c][f];
                p.var[c][f] += d * d;
            }
        }
        for (int f = 0; f < kNumFeatures; ++f)
            p.var[c][f] = p.var[c][f] / nc + p.var_smoothing;
    }
    return p;
}

Prediction predict_gnb(const GaussianNBParams& p, const FeatureVector& x) {
    std::array<double, kNumActivities> logp;
    for (int c = 0; c < kNumActivities; ++c) {
        if (p.log_prior[c] == kNegInf) {
            logp[c] = kNegInf;
            continue;
        }
        double acc = p.log_prior[c];
        for (int f = 0; f < kNumFeatures; ++f) {
            const double v = p.var[c][f];
            const double d = x.values[f] - p.mean[c][f];
            acc += -0.5 * std::log(2.0 * M_PI * v) - d * d / (2.0 * v);
        }
        logp[c] = acc;
    }
    softmax_inplace(logp);
    Prediction out;
    out.class_scores = logp;
    out.label = static_cast<Activity>(argmax_lowest(logp));
    return out;
}

// ------------------------------------------------------- LogisticRegression

using LrWeights = std::array<std::array<double, kNumFeatures + 1>, kNumActivities>;

// Mean cross-entropy + L2 on non-bias weights. Gradient accumulated into
// `grad` when non-null.
double lr_loss_grad(const LrWeights& w, const std::vector<std::array<double, kNumFeatures>>& xs,
                    const std::vector<int>& ys, double l2, LrWeights* grad) {
    const double n = static_cast<double>(xs.size());
    if (grad)
        for (auto& row : *grad) row.fill(0.0);

    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::array<double, kNumActivities> logits;
        for (int c = 0; c < kNumActivities; ++c) {
            double z = w[c][kNumFeatures];
            for (int f = 0; f < kNumFeatures; ++f) z += w[c][f] * xs[i][f];
            logits[c] = z;
        }
        double mx = *std::max_element(logits.begin(), logits.end());
        double lse = 0.0;
        for (double z : logits) lse += std::exp(z - mx);
        lse = mx + std::log(lse);
        loss += lse - logits[ys[i]];

        if (grad) {
            for (int c = 0; c < kNumActivities; ++c) {
                const double p = std::exp(logits[c] - lse);
                const double err = (p - (c == ys[i] ? 1.0 : 0.0)) / n;
                for (int f = 0; f < kNumFeatures; ++f) (*grad)[c][f] += err * xs[i][f];
                (*grad)[c][kNumFeatures] += err;
            }
        }
    }
    loss /= n;
    for (int c = 0; c < kNumActivities; ++c) {
        for (int f = 0; f < kNumFeatures; ++f) {
            loss += 0.5 * l2 * w[c][f] * w[c][f];
            if (grad) (*grad)[c][f] += l2 * w[c][f];
        }
    }
    return loss;
}

LogisticRegressionParams train_logreg(const ModelSpec& spec, const FeatureDataset& data) {
    LogisticRegressionParams p;
    p.standardizer.fit(data);

    std::vector<std::array<double, kNumFeatures>> xs;
    std::vector<int> ys;
    xs.reserve(data.rows.size());
    for (const auto& row : data.rows) {
        xs.push_back(p.standardizer.apply(row.values));
        ys.push_back(static_cast<int>(row.label));
    }

    for (auto& row : p.weights) row.fill(0.0);
    LrWeights grad;
    p.loss_history.reserve(spec.lr_iterations);
    for (int it = 0; it < spec.lr_iterations; ++it) {
        p.loss_history.push_back(lr_loss_grad(p.weights, xs, ys, spec.lr_l2, &grad));
        for (int c = 0; c < kNumActivities; ++c)
            for (int f = 0; f <= kNumFeatures; ++f)
                p.weights[c][f] -= spec.lr_learning_rate * grad[c][f];
    }
    return p;
}

Prediction predict_logreg(const LogisticRegressionParams& p, const FeatureVector& x) {
    const auto z = p.standardizer.apply(x.values);
    std::array<double, kNumActivities> logits;
    for (int c = 0; c < kNumActivities; ++c) {
        double v = p.weights[c][kNumFeatures];
        for (int f = 0; f < kNumFeatures; ++f) v += p.weights[c][f] * z[f];
        logits[c] = v;
    }
    softmax_inplace(logits);
    Prediction out;
    out.class_scores = logits;
    out.label = static_cast<Activity>(argmax_lowest(logits));
    return out;
}

// ------------------------------------------------------------- DecisionTree

double entropy(const std::array<std::size_t, kNumActivities>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct TreeBuilder {
    const FeatureDataset& data;
    int max_depth;
    int min_leaf;
    std::vector<TreeNode> nodes;

    int build(std::vector<std::size_t>& idx, int depth) {
        std::array<std::size_t, kNumActivities> counts{};
        for (std::size_t i : idx) ++counts[static_cast<int>(data.rows[i].label)];
        const std::size_t n = idx.size();
        const double h_parent = entropy(counts, n);

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_gain = 0.0;

        const bool can_split = depth < max_depth && n >= 2 * static_cast<std::size_t>(min_leaf) &&
                               h_parent > 0.0;
        if (can_split) {
            std::vector<std::pair<double, int>> vals(n);  // (value, class)
            for (int f = 0; f < kNumFeatures; ++f) {
                for (std::size_t i = 0; i < n; ++i)
                    vals[i] = {data.rows[idx[i]].values[f],
                               static_cast<int>(data.rows[idx[i]].label)};
                std::sort(vals.begin(), vals.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });

                std::array<std::size_t, kNumActivities> left{};
                std::size_t n_left = 0;
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    ++left[vals[i].second];
                    ++n_left;
                    if (vals[i].first == vals[i + 1].first) continue;
                    if (n_left < static_cast<std::size_t>(min_leaf) ||
                        n - n_left < static_cast<std::size_t>(min_leaf))
                        continue;
                    std::array<std::size_t, kNumActivities> right{};
                    for (int c = 0; c < kNumActivities; ++c) right[c] = counts[c] - left[c];
                    const double h_split =
                        (static_cast<double>(n_left) * entropy(left, n_left) +
                         static_cast<double>(n - n_left) * entropy(right, n - n_left)) /
                        static_cast<double>(n);
                    const double gain = h_parent - h_split;
                    if (gain > best_gain + 1e-15) {
                        best_gain = gain;
                        best_feature = f;
                        best_threshold = (vals[i].first + vals[i + 1].first) / 2.0;
                    }
                }
            }
        }

        const int node_id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (best_feature < 0 || best_gain <= 0.0) {
            TreeNode& leaf = nodes[node_id];
            leaf.feature = -1;
            for (int c = 0; c < kNumActivities; ++c)
                leaf.class_probs[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
            return node_id;
        }

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (data.rows[i].values[best_feature] <= best_threshold)
                left_idx.push_back(i);
            else
                right_idx.push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        const int left_id = build(left_idx, depth + 1);
        const int right_id = build(right_idx, depth + 1);
        TreeNode& node = nodes[node_id];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left_id;
        node.right = right_id;
        return node_id;
    }
};

DecisionTreeParams train_tree(const ModelSpec& spec, const FeatureDataset& data) {
    TreeBuilder builder{data, spec.tree_max_depth, spec.tree_min_leaf, {}};
    std::vector<std::size_t> idx(data.rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx, 0);
    DecisionTreeParams p;
    p.nodes = std::move(builder.nodes);
    return p;
}

Prediction predict_tree(const DecisionTreeParams& p, const FeatureVector& x) {
    int node = 0;
    while (p.nodes[node].feature >= 0) {
        const TreeNode& t = p.nodes[node];
        node = (x.values[t.feature] <= t.threshold) ? t.left : t.right;
    }
    Prediction out;
    out.class_scores = p.nodes[node].class_probs;
    out.label = static_cast<Activity>(argmax_lowest(out.class_scores));
    return out;
}

// --------------------------------------------------------------------- MLP

struct MlpGrads {
    std::vector<double> w1, b1, w2, b2;
};

void mlp_forward(const MlpParams& m, const double* x, std::vector<double>& hidden,
                 std::array<double, kNumActivities>& probs) {
    const int h = m.hidden_units;
    hidden.resize(h);
    for (int j = 0; j < h; ++j) {
        double z = m.b1[j];
        const double* wrow = &m.w1[static_cast<std::size_t>(j) * kNumFeatures];
        for (int f = 0; f < kNumFeatures; ++f) z += wrow[f] * x[f];
        hidden[j] = 1.0 / (1.0 + std::exp(-z));
    }
    for (int c = 0; c < kNumActivities; ++c) {
        double z = m.b2[c];
        const double* wrow = &m.w2[static_cast<std::size_t>(c) * h];
        for (int j = 0; j < h; ++j) z += wrow[j] * hidden[j];
        probs[c] = z;
    }
    softmax_inplace(probs);
}

// Backprop for one sample; gradients are accumulated (scaled by `scale`).
void mlp_backprop(const MlpParams& m, const double* x, int y,
                  const std::vector<double>& hidden,
                  const std::array<double, kNumActivities>& probs, double scale,
                  MlpGrads& g) {
    const int h = m.hidden_units;
    std::array<double, kNumActivities> delta_out;
    for (int c = 0; c < kNumActivities; ++c)
        delta_out[c] = (probs[c] - (c == y ? 1.0 : 0.0)) * scale;

    std::vector<double> delta_hidden(h, 0.0);
    for (int c = 0; c < kNumActivities; ++c) {
        double* gw = &g.w2[static_cast<std::size_t>(c) * h];
        const double* w = &m.w2[static_cast<std::size_t>(c) * h];
        for (int j = 0; j < h; ++j) {
            gw[j] += delta_out[c] * hidden[j];
            delta_hidden[j] += delta_out[c] * w[j];
        }
        g.b2[c] += delta_out[c];
    }
    for (int j = 0; j < h; ++j) {
        const double d = delta_hidden[j] * hidden[j] * (1.0 - hidden[j]);
        double* gw = &g.w1[static_cast<std::size_t>(j) * kNumFeatures];
        for (int f = 0; f < kNumFeatures; ++f) gw[f] += d * x[f];
        g.b1[j] += d;
    }
}

MlpParams init_mlp(const ModelSpec& spec, std::mt19937_64& gen) {
    MlpParams m;
    m.hidden_units = spec.mlp_hidden_units;
    m.w1.resize(static_cast<std::size_t>(m.hidden_units) * kNumFeatures);
    m.b1.resize(m.hidden_units);
    m.w2.resize(static_cast<std::size_t>(kNumActivities) * m.hidden_units);
    m.b2.resize(kNumActivities);
    for (double& w : m.w1) w = uniform_in(gen, -0.5, 0.5);
    for (double& w : m.b1) w = uniform_in(gen, -0.5, 0.5);
    for (double& w : m.w2) w = uniform_in(gen, -0.5, 0.5);
    for (double& w : m.b2) w = uniform_in(gen, -0.5, 0.5);
    return m;
}

MlpParams train_mlp(const ModelSpec& spec, const FeatureDataset& data) {
    std::mt19937_64 gen(spec.seed);
    MlpParams m = init_mlp(spec, gen);
    m.standardizer.fit(data);

    const std::size_t n = data.rows.size();
    std::vector<std::array<double, kNumFeatures>> xs(n);
    std::vector<int> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = m.standardizer.apply(data.rows[i].values);
        ys[i] = static_cast<int>(data.rows[i].label);
    }

    const int h = m.hidden_units;
    MlpGrads g{std::vector<double>(m.w1.size()), std::vector<double>(m.b1.size()),
               std::vector<double>(m.w2.size()), std::vector<double>(m.b2.size())};
    MlpGrads vel{std::vector<double>(m.w1.size(), 0.0), std::vector<double>(m.b1.size(), 0.0),
                 std::vector<double>(m.w2.size(), 0.0), std::vector<double>(m.b2.size(), 0.0)};

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> hidden(h);
    std::array<double, kNumActivities> probs;

    auto sgd_step = [&](std::vector<double>& w, std::vector<double>& v,
                        const std::vector<double>& grad) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            v[i] = spec.mlp_momentum * v[i] - spec.mlp_learning_rate * grad[i];
            w[i] += v[i];
        }
    };

    for (int epoch = 0; epoch < spec.mlp_epochs; ++epoch) {
        shuffle_indices(order, gen);
        for (std::size_t i : order) {
            std::fill(g.w1.begin(), g.w1.end(), 0.0);
            std::fill(g.b1.begin(), g.b1.end(), 0.0);
            std::fill(g.w2.begin(), g.w2.end(), 0.0);
            std::fill(g.b2.begin(), g.b2.end(), 0.0);
            mlp_forward(m, xs[i].data(), hidden, probs);
            mlp_backprop(m, xs[i].data(), ys[i], hidden, probs, 1.0, g);
            sgd_step(m.w1, vel.w1, g.w1);
            sgd_step(m.b1, vel.b1, g.b1);
            sgd_step(m.w2, vel.w2, g.w2);
            sgd_step(m.b2, vel.b2, g.b2);
        }
    }
    return m;
}

Prediction predict_mlp(const MlpParams& m, const FeatureVector& x) {
    const auto z = m.standardizer.apply(x.values);
    std::vector<double> hidden;
    Prediction out;
    mlp_forward(m, z.data(), hidden, out.class_scores);
    out.label = static_cast<Activity>(argmax_lowest(out.class_scores));
    return out;
}

}  // namespace

// -------------------------------------------------------------- public API

TrainedModel train(const ModelSpec& spec, const FeatureDataset& data) {
    if (data.rows.empty()) throw EmptyTrainingSet("training set is empty");

    TrainedModel model;
    model.kind = spec.kind;
    switch (spec.kind) {
        case ModelKind::GaussianNB: model.gnb = train_gnb(data); break;
        case ModelKind::LogisticRegression: model.logreg = train_logreg(spec, data); break;
        case ModelKind::DecisionTree: model.tree = train_tree(spec, data); break;
        case ModelKind::MLP: model.mlp = train_mlp(spec, data); break;
    }
    return model;
}

Prediction predict(const TrainedModel& model, const FeatureVector& x) {
    for (double v : x.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
    switch (model.kind) {
        case ModelKind::GaussianNB: return predict_gnb(model.gnb, x);
        case ModelKind::LogisticRegression: return predict_logreg(model.logreg, x);
        case ModelKind::DecisionTree: return predict_tree(model.tree, x);
        case ModelKind::MLP: return predict_mlp(model.mlp, x);
    }
    throw UnsupportedKind("bad model kind");
}

double gradient_check(const ModelSpec& spec, const FeatureDataset& data, double epsilon) {
    if (spec.kind != ModelKind::LogisticRegression && spec.kind != ModelKind::MLP)
        throw UnsupportedKind("gradient_check supports logreg and mlp only");
    if (data.rows.empty()) throw EmptyTrainingSet("gradient_check needs data");

    std::mt19937_64 gen(spec.seed);
    double max_rel = 0.0;
    auto rel_err = [](double a, double b) {
        return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-8});
    };

    if (spec.kind == ModelKind::LogisticRegression) {
        Standardizer st;
        st.fit(data);
        std::vector<std::array<double, kNumFeatures>> xs;
        std::vector<int> ys;
        for (const auto& row : data.rows) {
            xs.push_back(st.apply(row.values));
            ys.push_back(static_cast<int>(row.label));
        }
        LrWeights w, grad;
        for (auto& row : w)
            for (double& v : row) v = uniform_in(gen, -0.5, 0.5);
        lr_loss_grad(w, xs, ys, spec.lr_l2, &grad);
        for (int c = 0; c < kNumActivities; ++c) {
            for (int f = 0; f <= kNumFeatures; ++f) {
                const double save = w[c][f];
                w[c][f] = save + epsilon;
                const double lp = lr_loss_grad(w, xs, ys, spec.lr_l2, nullptr);
                w[c][f] = save - epsilon;
                const double lm = lr_loss_grad(w, xs, ys, spec.lr_l2, nullptr);
                w[c][f] = save;
                max_rel = std::max(max_rel, rel_err(grad[c][f], (lp - lm) / (2.0 * epsilon)));
            }
        }
        return max_rel;
    }

    // MLP: mean cross-entropy at a seeded random parameter point.
    MlpParams m = init_mlp(spec, gen);
    m.standardizer.fit(data);
    std::vector<std::array<double, kNumFeatures>> xs;
    std::vector<int> ys;
    for (const auto& row : data.rows) {
        xs.push_back(m.standardizer.apply(row.values));
        ys.push_back(static_cast<int>(row.label));
    }
    const double n = static_cast<double>(xs.size());

    auto mean_loss = [&]() {
        std::vector<double> hidden;
        std::array<double, kNumActivities> probs;
        double loss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mlp_forward(m, xs[i].data(), hidden, probs);
            loss -= std::log(std::max(probs[ys[i]], 1e-300));
        }
        return loss / n;
    };

    MlpGrads g{std::vector<double>(m.w1.size(), 0.0), std::vector<double>(m.b1.size(), 0.0),
               std::vector<double>(m.w2.size(), 0.0), std::vector<double>(m.b2.size(), 0.0)};
    {
        std::vector<double> hidden;
        std::array<double, kNumActivities> probs;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mlp_forward(m, xs[i].data(), hidden, probs);
            mlp_backprop(m, xs[i].data(), ys[i], hidden, probs, 1.0 / n, g);
        }
    }

    auto check_block = [&](std::vector<double>& w, const std::vector<double>& analytic) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double save = w[i];
            w[i] = save + epsilon;
            const double lp = mean_loss();
            w[i] = save - epsilon;
            const double lm = mean_loss();
            w[i] = save;
            max_rel = std::max(max_rel, rel_err(analytic[i], (lp - lm) / (2.0 * epsilon)));
        }
    };
    check_block(m.w1, g.w1);
    check_block(m.b1, g.b1);
    check_block(m.w2, g.w2);
    check_block(m.b2, g.b2);
    return max_rel;
}

// -------------------------------------------------------------------- JSON

namespace {
using nlohmann::json;

json standardizer_to_json(const Standardizer& s) {
    return json{{"mean", s.mean}, {"scale", s.scale}};
}

Standardizer standardizer_from_json(const json& j) {
    Standardizer s;
    auto mean = j.at("mean").get<std::vector<double>>();
    auto scale = j.at("scale").get<std::vector<double>>();
    std::copy(mean.begin(), mean.end(), s.mean.begin());
    std::copy(scale.begin(), scale.end(), s.scale.begin());
    return s;
}
}  // namespace

std::string model_to_json(const TrainedModel& model) {
    json j;
    j["format_version"] = 1;
    j["kind"] = model_kind_name(model.kind);
    switch (model.kind) {
        case ModelKind::GaussianNB: {
            json g;
            // -inf is not representable in JSON; store priors, absent = 0.
            std::array<double, kNumActivities> prior;
            for (int c = 0; c < kNumActivities; ++c)
                prior[c] = model.gnb.log_prior[c] == kNegInf ? 0.0
                                                             : std::exp(model.gnb.log_prior[c]);
            g["prior"] = prior;
            g["mean"] = model.gnb.mean;
            g["var"] = model.gnb.var;
            g["var_smoothing"] = model.gnb.var_smoothing;
            j["gnb"] = g;
            break;
        }
        case ModelKind::LogisticRegression: {
            json l;
            l["weights"] = model.logreg.weights;
            l["standardizer"] = standardizer_to_json(model.logreg.standardizer);
            j["logreg"] = l;
            break;
        }
        case ModelKind::DecisionTree: {
            json nodes = json::array();
            for (const TreeNode& n : model.tree.nodes) {
                nodes.push_back(json{{"feature", n.feature},
                                     {"threshold", n.threshold},
                                     {"left", n.left},
                                     {"right", n.right},
                                     {"class_probs", n.class_probs}});
            }
            j["tree"] = json{{"nodes", nodes}};
            break;
        }
        case ModelKind::MLP: {
            json m;
            m["hidden_units"] = model.mlp.hidden_units;
            m["w1"] = model.mlp.w1;
            m["b1"] = model.mlp.b1;
            m["w2"] = model.mlp.w2;
            m["b2"] = model.mlp.b2;
            m["standardizer"] = standardizer_to_json(model.mlp.standardizer);
            j["mlp"] = m;
            break;
        }
    }
    return j.dump();
}

TrainedModel model_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format_version").get<int>() != 1)
        throw MalformedRecord("unsupported model format version");

    TrainedModel model;
    model.kind = model_kind_from_name(j.at("kind").get<std::string>());
    switch (model.kind) {
        case ModelKind::GaussianNB: {
            const json& g = j.at("gnb");
            auto prior = g.at("prior").get<std::array<double, kNumActivities>>();
            for (int c = 0; c < kNumActivities; ++c)
                model.gnb.log_prior[c] = prior[c] > 0.0 ? std::log(prior[c]) : kNegInf;
            model.gnb.mean = g.at("mean")
                                 .get<std::array<std::array<double, kNumFeatures>, kNumActivities>>();
            model.gnb.var = g.at("var")
                               .get<std::array<std::array<double, kNumFeatures>, kNumActivities>>();
            model.gnb.var_smoothing = g.at("var_smoothing").get<double>();
            break;
        }
        case ModelKind::LogisticRegression: {
            const json& l = j.at("logreg");
            model.logreg.weights =
                l.at("weights")
                    .get<std::array<std::array<double, kNumFeatures + 1>, kNumActivities>>();
            model.logreg.standardizer = standardizer_from_json(l.at("standardizer"));
            break;
        }
        case ModelKind::DecisionTree: {
            for (const json& jn : j.at("tree").at("nodes")) {
                TreeNode n;
                n.feature = jn.at("feature").get<int>();
                n.threshold = jn.at("threshold").get<double>();
                n.left = jn.at("left").get<int>();
                n.right = jn.at("right").get<int>();
                n.class_probs = jn.at("class_probs").get<std::array<double, kNumActivities>>();
                model.tree.nodes.push_back(n);
            }
            break;
        }
        case ModelKind::MLP: {
            const json& m = j.at("mlp");
            model.mlp.hidden_units = m.at("hidden_units").get<int>();
            model.mlp.w1 = m.at("w1").get<std::vector<double>>();
            model.mlp.b1 = m.at("b1").get<std::vector<double>>();
            model.mlp.w2 = m.at("w2").get<std::vector<double>>();
            model.mlp.b2 = m.at("b2").get<std::vector<double>>();
            model.mlp.standardizer = standardizer_from_json(m.at("standardizer"));
            break;
        }
    }
    return model;
}

}  // namespace fogmetry
